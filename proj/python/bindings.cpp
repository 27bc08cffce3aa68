#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coext/suite.hpp"

namespace py = pybind11;
using namespace coext;

namespace {

py::dict report_dict(const Report& r) {
  py::dict d;
  d["check"] = r.check;
  d["passed"] = r.passed;
  d["structures"] = r.structures;
  d["instances"] = r.instances;
  d["realized"] = r.realized;
  d["notes"] = r.notes;
  if (r.counterexample) {
    const auto& c = *r.counterexample;
    py::dict ce;
    ce["structure"] = to_text(c.structure);
    ce["formula"] = c.formula;
    ce["assignment"] = c.assignment;
    ce["clause"] = c.clause;
    ce["detail"] = c.detail;
    d["counterexample"] = ce;
  } else {
    d["counterexample"] = py::none();
  }
  return d;
}

SchemaId schema_id(const std::string& name) {
  auto id = schema_from_name(name);
  if (!id) throw std::invalid_argument("unknown schema " + name);
  return *id;
}

std::vector<Pred> atoms(bool starred) {
  return starred ? std::vector<Pred>{Pred::InStar, Pred::EqStar} : std::vector<Pred>{Pred::In, Pred::Eq};
}

}  // namespace

PYBIND11_MODULE(_coext, m) {
  m.doc() = "Co-extensionality: formulas, membership structures and checks";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<EvalError>(m, "EvalError", PyExc_RuntimeError);

  py::class_<Formula>(m, "Formula")
      .def("__str__", [](const Formula& f) { return to_string(f); })
      .def("__repr__", [](const Formula& f) { return "Formula(" + to_string(f) + ")"; })
      .def("__eq__", [](const Formula& a, const Formula& b) { return a == b; })
      .def_property_readonly("free_vars", [](const Formula& f) { return free_vars(f); })
      .def_property_readonly("quantifier_depth", [](const Formula& f) { return quantifier_depth(f); });

  m.def("parse", [](const std::string& text, bool reserved) {
          ParseOptions o;
          o.allow_reserved = reserved;
          return parse(text, o);
        }, py::arg("text"),
        py::arg("reserved") = false);
  m.def("alpha_equal", &alpha_equal);
  m.def("substitute", &substitute, py::arg("formula"), py::arg("source"), py::arg("target"));
  m.def("expand", &expand);
  m.def("translate_zfa", [](const Formula& f, bool starred) { return starred ? translate_zfa_starred(f) : translate_zfa(f); },
        py::arg("formula"), py::arg("starred") = false);
  m.def("relativize_pure",
        [](const Formula& f, bool starred) { return starred ? relativize_pure_starred(f) : relativize_pure(f); },
        py::arg("formula"), py::arg("starred") = false);
  m.def("corpus", [](int depth, const std::vector<VarName>& vars, bool starred) { return corpus(depth, vars, atoms(starred)); },
        py::arg("depth"), py::arg("vars"), py::arg("starred") = true);

  py::class_<MemStructure>(m, "Structure")
      .def(py::init<std::size_t>(), py::arg("nodes") = 0)
      .def_static("from_text", &parse_structure)
      .def("to_text", [](const MemStructure& s) { return to_text(s); })
      .def("__len__", &MemStructure::size)
      .def("__eq__", [](const MemStructure& a, const MemStructure& b) { return a == b; })
      .def("__repr__", [](const MemStructure& s) { return brief(s); })
      .def("add_node", &MemStructure::add_node, py::arg("label") = "")
      .def("add_edge", &MemStructure::add_edge, py::arg("member"), py::arg("container"))
      .def("has_edge", &MemStructure::has_edge)
      .def("members", &MemStructure::members)
      .def("edges", [](const MemStructure& s) {
        std::vector<std::pair<NodeId, NodeId>> out;
        for (const auto& e : s.edges()) out.emplace_back(e.member, e.container);
        return out;
      });

  m.def("is_set", py::overload_cast<const MemStructure&, NodeId>(&is_set));
  m.def("memstar", &memstar);
  m.def("coextensional", &coextensional);
  m.def("coext_classes", [](const MemStructure& s) { return coext_classes(s).classes; });
  m.def("quotient", [](const MemStructure& s) {
    Quotient q = quotient(s);
    return py::make_tuple(q.structure, q.collapse);
  });
  m.def("tc", &tc);
  m.def("iterated_union", &iterated_union);
  m.def("is_pure_set", &is_pure_set);
  m.def("is_eps_ordinal", &is_eps_ordinal);
  m.def("is_star_ordinal", &is_star_ordinal);
  m.def("hierarchy_stages", &hierarchy_stages);

  m.def("build_hf", &build_hf);
  m.def("random_structure", &random_structure, py::arg("nodes"), py::arg("density"), py::arg("seed"));
  m.def("add_doppelgangers",
        [](const MemStructure& s, const std::vector<std::pair<NodeId, std::size_t>>& copies, bool deep) {
          std::vector<CopySpec> specs;
          for (auto [node, count] : copies) specs.push_back({node, count});
          return add_doppelgangers(s, specs, deep ? DoppelMode::Deep : DoppelMode::Shallow);
        },
        py::arg("structure"), py::arg("copies"), py::arg("deep") = false);
  m.def("add_atoms", &add_atoms);
  m.def("structure_count", &structure_count);

  m.def("eval",
        [](const MemStructure& s, const Formula& f, const Assignment& rho, int max_depth) {
          EvalOptions o;
          o.max_quantifier_depth = max_depth;
          return eval(s, f, rho, o);
        },
        py::arg("structure"), py::arg("formula"), py::arg("assignment") = Assignment{}, py::arg("max_depth") = 6);

  m.def("check_schema",
        [](const MemStructure& s, const std::string& name, const std::vector<Formula>& phis) {
          return report_dict(check_schema(s, schema_id(name), phis));
        });
  m.def("check_schema_exhaustive",
        [](const std::string& name, std::size_t max_nodes, int depth, const std::vector<VarName>& vars, bool starred,
           std::size_t jobs) {
          SchemaOptions opts;
          opts.enforce_signature = starred;
          const SchemaCheck check(schema_id(name), corpus(depth, vars, atoms(starred)), opts);
          py::gil_scoped_release release;
          Report r = run_exhaustive(check.name(), max_nodes, [&](const MemStructure& s) { return check.run(s); }, jobs);
          py::gil_scoped_acquire acquire;
          return report_dict(r);
        },
        py::arg("name"), py::arg("max_nodes"), py::arg("depth") = 1, py::arg("vars") = std::vector<VarName>{"y", "w"},
        py::arg("starred") = true, py::arg("jobs") = 1);
  m.def("check_axiom",
        [](const MemStructure& s, const std::string& name, std::optional<Formula> phi) {
          auto kind = axiom_from_name(name);
          if (!kind) throw std::invalid_argument("unknown axiom " + name);
          return report_dict(check_axiom(s, {*kind, phi}));
        },
        py::arg("structure"), py::arg("axiom"), py::arg("phi") = py::none());

  m.def("run_suite",
        [](const std::vector<int>& only, std::size_t jobs) {
          SuiteOptions o;
          o.only = only;
          o.jobs = jobs;
          std::vector<CriterionResult> res;
          {
            py::gil_scoped_release release;
            res = run_suite(o);
          }
          py::list out;
          for (const auto& c : res) {
            py::dict d;
            d["criterion"] = c.id;
            d["name"] = c.name;
            d["passed"] = c.passed;
            d["summary"] = c.summary;
            d["line"] = format_line(c);
            out.append(d);
          }
          return out;
        },
        py::arg("only") = std::vector<int>{}, py::arg("jobs") = 1);
}
