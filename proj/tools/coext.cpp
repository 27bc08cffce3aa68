// coext: command-line front end.  Exit 0 when everything selected passes,
// 1 on a check failure (with the counterexample dump), 2 on usage errors.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "coext/suite.hpp"

namespace {

using namespace coext;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Structure sources shared by eval, quotient, gen and check.

struct Source {
  std::string file;
  std::optional<std::size_t> hf;
  std::optional<std::size_t> nodes;
  double density = 0.3;
  std::uint64_t seed = kSuiteSeed;
  std::vector<std::string> dopps;
  bool deep = false;
  std::vector<std::string> atoms;

  void attach(CLI::App* app, bool with_random = true) {
    app->add_option("-s,--structure", file, "structure file");
    app->add_option("--hf", hf, "hereditarily finite sets of rank <= R")->check(CLI::Range(0, 4));
    if (with_random) {
      app->add_option("--nodes", nodes, "random structure with N nodes")->check(CLI::Range(1, int(kMaxRandomNodes)));
      app->add_option("--density", density, "edge probability")->check(CLI::Range(0.0, 1.0));
      app->add_option("--seed", seed, "random seed");
    }
    app->add_option("--dopp", dopps, "add COUNT copies of NODE (NODE:COUNT)");
    app->add_flag("--deep", deep, "copies join the original's containers");
    app->add_option("--atom", atoms, "add an atom with the given members (comma list)");
  }

  bool given() const { return !file.empty() || hf || nodes; }

  MemStructure build() const {
    const int bases = int(!file.empty()) + int(hf.has_value()) + int(nodes.has_value());
    if (bases != 1) throw UsageError("give exactly one of --structure, --hf, --nodes");
    MemStructure s = !file.empty() ? read_structure_file(file)
                     : hf          ? build_hf(*hf)
                                   : random_structure(*nodes, density, seed);
    if (!dopps.empty()) {
      std::vector<CopySpec> copies;
      for (const auto& d : dopps) {
        const auto colon = d.find(':');
        if (colon == std::string::npos) throw UsageError("--dopp expects NODE:COUNT, got " + d);
        copies.push_back({static_cast<NodeId>(std::stoul(d.substr(0, colon))), std::stoul(d.substr(colon + 1))});
      }
      s = add_doppelgangers(s, copies, deep ? DoppelMode::Deep : DoppelMode::Shallow);
    }
    if (!atoms.empty()) {
      std::vector<NodeSet> specs;
      for (const auto& a : atoms) specs.push_back(parse_nodes(a));
      s = add_atoms(s, specs);
    }
    return s;
  }

  static NodeSet parse_nodes(const std::string& text) {
    NodeSet out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) out.push_back(static_cast<NodeId>(std::stoul(item)));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

Assignment parse_assignment(const std::vector<std::string>& items) {
  Assignment rho;
  for (const auto& a : items) {
    const auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("assignment expects VAR=NODE, got " + a);
    rho[a.substr(0, eq)] = static_cast<NodeId>(std::stoul(a.substr(eq + 1)));
  }
  return rho;
}

void print_report(const Report& r, const std::string& format) {
  if (format == "records") {
    const std::string line = to_record(r);
    if (!line.empty()) std::cout << line << "\n";
  } else {
    std::cout << to_text(r);
  }
}

std::string tree(const Formula& f, int indent = 0) {
  std::string pad(indent * 2, ' ');
  switch (f.kind()) {
    case Kind::Atom: return pad + to_string(f) + "\n";
    case Kind::Not: return pad + "not\n" + tree(f.body(), indent + 1);
    case Kind::Forall: return pad + "all " + f.var() + "\n" + tree(f.body(), indent + 1);
    case Kind::Exists: return pad + "ex " + f.var() + "\n" + tree(f.body(), indent + 1);
    case Kind::And: return pad + "and\n" + tree(f.lhs(), indent + 1) + tree(f.rhs(), indent + 1);
    case Kind::Or: return pad + "or\n" + tree(f.lhs(), indent + 1) + tree(f.rhs(), indent + 1);
    case Kind::Implies: return pad + "implies\n" + tree(f.lhs(), indent + 1) + tree(f.rhs(), indent + 1);
    case Kind::Iff: return pad + "iff\n" + tree(f.lhs(), indent + 1) + tree(f.rhs(), indent + 1);
  }
  return pad + "?\n";
}

// ---------------------------------------------------------------------------
// check

struct CheckArgs {
  std::string schema, axiom;
  std::vector<std::string> phis;
  bool scott = false;
  std::optional<NodeId> infinity;
  bool family = false;
  std::optional<std::size_t> exhaustive;
  int depth = 1;
  std::vector<std::string> vars;
  bool raw = false, no_enforce = false, literal = false;
  std::size_t jobs = 1;
  std::string format = "text";
  std::string replay;
  Source source;
};

std::vector<Formula> parse_all(const std::vector<std::string>& texts) {
  std::vector<Formula> out;
  for (const auto& t : texts) out.push_back(parse(t));
  return out;
}

std::vector<Formula> schema_corpus(const CheckArgs& a, SchemaId id) {
  std::vector<VarName> vars = a.vars;
  if (vars.empty()) {
    const bool over_y = id == SchemaId::Lemma1 || id == SchemaId::Corollary1 || id == SchemaId::Corollary3;
    vars = over_y ? std::vector<VarName>{"y", "w"} : std::vector<VarName>{"z", "w"};
  }
  if (!a.phis.empty()) return parse_all(a.phis);
  const std::vector<Pred> preds = a.raw ? std::vector<Pred>{Pred::In, Pred::Eq} : std::vector<Pred>{Pred::InStar, Pred::EqStar};
  return corpus(a.depth, vars, preds);
}

// Runs `check` on the selected structures.
Report over_structures(const CheckArgs& a, const std::string& name, const StructureCheck& check) {
  if (a.exhaustive) return run_exhaustive(name, *a.exhaustive, check, a.jobs);
  if (!a.source.given()) throw UsageError("choose structures with --exhaustive, --structure, --hf or --nodes");
  return check(a.source.build());
}

int replay(const CheckArgs& a) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (a.replay != "-") {
    file.open(a.replay);
    if (!file) throw UsageError("cannot open " + a.replay);
    in = &file;
  }
  int status = kOk;
  std::string line;
  std::size_t count = 0;
  while (std::getline(*in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++count;
    const ReplayRecord rec = parse_record(line);
    Report r(rec.check);
    r.structures = 1;
    r.instances = r.realized = 1;
    if (!rec.formula.empty()) {
      Assignment rho(rec.assignment.begin(), rec.assignment.end());
      if (!eval(rec.structure, parse(rec.formula, {true}), rho, EvalOptions{16})) {
        Counterexample ce{rec.structure, rec.formula, rec.assignment, rec.clause, "replayed"};
        r.fail(std::move(ce));
      }
    } else if (rec.check == "subsidiary2") {
      r = check_subsidiary2(rec.structure);
    } else if (rec.check.rfind("infinity-step", 0) == 0 && !rec.assignment.empty()) {
      r = check_infinity_step(rec.structure, rec.assignment.front().second);
    } else {
      throw UsageError("record for " + rec.check + " carries no formula to replay");
    }
    print_report(r, a.format);
    if (!r.passed) status = kFailed;
  }
  if (count == 0) throw UsageError("no records to replay");
  return status;
}

int run_check(const CheckArgs& a) {
  if (!a.replay.empty()) return replay(a);
  const int selected = int(!a.schema.empty()) + int(!a.axiom.empty()) + int(a.scott) + int(a.infinity.has_value()) +
                       int(a.family);
  if (selected != 1) throw UsageError("select exactly one of --schema, --axiom, --scott, --infinity, --family");
  if (a.exhaustive && a.source.given()) throw UsageError("--exhaustive and a structure source exclude each other");

  Report r;
  std::optional<ClosedFamily> fam;
  auto closed = [&]() -> const ClosedFamily& {
    if (!fam) fam = closed_family(default_family_spec());
    return *fam;
  };
  const bool on_family = !a.exhaustive && !a.source.given();

  if (!a.schema.empty()) {
    if (a.schema == "subsidiary2") {
      r = over_structures(a, "subsidiary2", check_subsidiary2);
    } else {
      const auto id = schema_from_name(a.schema);
      if (!id) throw UsageError("unknown schema " + a.schema);
      SchemaOptions opts;
      opts.enforce_signature = !a.no_enforce;
      opts.literal_biconditional = a.literal;
      const SchemaCheck check(*id, schema_corpus(a, *id), opts);
      r = over_structures(a, check.name(), [&](const MemStructure& s) { return check.run(s); });
      if (check.flagged())
        r.notes.push_back(std::to_string(check.flagged()) + " corpus formulas met only one restriction");
    }
  } else if (!a.axiom.empty()) {
    const auto kind = axiom_from_name(a.axiom);
    if (!kind) throw UsageError("unknown axiom " + a.axiom);
    std::vector<std::optional<Formula>> phis;
    if (is_schema(*kind)) {
      if (a.phis.empty()) throw UsageError(a.axiom + " is a schema; give --phi");
      for (auto& f : parse_all(a.phis)) phis.emplace_back(f);
    } else {
      phis.emplace_back(std::nullopt);
    }
    Report all(a.axiom);
    for (const auto& phi : phis) {
      const AxiomId id{*kind, phi};
      if (on_family) {
        const auto& c = closed();
        all.absorb(check_axiom(c.structure, id, family_bounds(c.structure, c.family_rank, *kind)));
      } else {
        all.absorb(over_structures(a, id.name(), [&](const MemStructure& s) { return check_axiom(s, id); }));
      }
    }
    r = all;
  } else if (a.scott) {
    const auto phis = a.phis.empty() ? functional_corpus() : parse_all(a.phis);
    if (on_family) {
      const auto& c = closed();
      r = check_scott(c.structure, phis, family_bounds(c.structure, c.family_rank, Axiom::ScottReplacement));
    } else {
      r = over_structures(a, "scott", [&](const MemStructure& s) { return check_scott(s, phis); });
    }
  } else if (a.infinity) {
    const MemStructure s = on_family ? closed().structure : a.source.build();
    if (a.exhaustive) throw UsageError("--infinity runs on one structure");
    r = check_infinity_step(s, *a.infinity);
  } else {
    SuiteOptions o;
    o.jobs = a.jobs;
    o.only = {6};
    const auto res = run_suite(o);
    r = Report("family");
    for (const auto& part : res.front().reports) r.absorb(part);
  }
  print_report(r, a.format);
  return r.passed ? kOk : kFailed;
}

int run_suite_cmd(std::size_t jobs, const std::vector<int>& only, const std::string& format) {
  SuiteOptions o;
  o.jobs = jobs;
  o.only = only;
  bool all = true;
  run_suite(o, [&](const CriterionResult& c) {
    all = all && c.passed;
    if (format == "records") {
      nlohmann::json j{{"criterion", c.id}, {"name", c.name}, {"passed", c.passed}, {"summary", c.summary},
                       {"seconds", c.seconds}, {"notes", c.notes}};
      std::cout << j.dump() << "\n";
    } else {
      std::cout << format_line(c) << "\n";
      for (const auto& n : c.notes) std::cout << "  note: " << n << "\n";
      for (const auto& r : c.reports)
        if (!r.passed) std::cout << to_text(r);
    }
    std::cout.flush();
  });
  return all ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"co-extensionality toolkit: formulas, membership structures and checks"};
  app.require_subcommand(1);
  std::string format = "text";
  std::size_t jobs = 1;
  auto format_opt = [&](CLI::App* sub, std::string& target) {
    sub->add_option("--format", target, "text or records")->check(CLI::IsMember({"text", "records"}));
  };

  // parse
  auto* p_parse = app.add_subcommand("parse", "parse a formula and print it back");
  std::string p_formula;
  bool p_tree = false, p_canonical = false, p_reserved = false;
  p_parse->add_option("formula,-f,--formula", p_formula, "formula text")->required();
  p_parse->add_flag("--tree", p_tree, "print the syntax tree");
  p_parse->add_flag("--canonical", p_canonical, "rename bound variables canonically");
  p_parse->add_flag("--reserved", p_reserved, "accept names starting with _ or #");

  // translate
  auto* p_tr = app.add_subcommand("translate", "translate or expand a formula");
  std::string t_formula, t_to = "expand";
  bool t_starred = false;
  p_tr->add_option("formula,-f,--formula", t_formula, "formula text")->required();
  p_tr->add_option("--to", t_to, "expand, zfa or pure")->check(CLI::IsMember({"expand", "zfa", "pure"}));
  p_tr->add_flag("--starred", t_starred, "keep starred atoms instead of expanding them");

  // eval
  auto* p_eval = app.add_subcommand("eval", "evaluate a formula on a structure");
  Source e_src;
  e_src.attach(p_eval);
  std::string e_formula;
  std::vector<std::string> e_assign;
  int e_depth = 6;
  p_eval->add_option("-f,--formula", e_formula, "formula text")->required();
  p_eval->add_option("-a,--assign", e_assign, "VAR=NODE");
  p_eval->add_option("--max-depth", e_depth, "quantifier depth limit");

  // quotient
  auto* p_quot = app.add_subcommand("quotient", "print the extensional quotient");
  Source q_src;
  q_src.attach(p_quot);
  bool q_map = false;
  p_quot->add_flag("--map", q_map, "also print the collapse map as comments");

  // gen
  auto* p_gen = app.add_subcommand("gen", "generate structures");
  Source g_src;
  g_src.attach(p_gen);
  std::optional<std::size_t> g_exhaustive;
  bool g_dedup = false, g_list = false;
  p_gen->add_option("--exhaustive", g_exhaustive, "count every structure on N nodes")->check(CLI::Range(1, int(kMaxExhaustiveNodes)));
  p_gen->add_flag("--dedup", g_dedup, "up to isomorphism");
  p_gen->add_flag("--list", g_list, "list them, one per line");

  // check
  auto* p_check = app.add_subcommand("check", "run schema, axiom, Scott or successor checks");
  CheckArgs ca;
  ca.source.attach(p_check);
  p_check->add_option("--schema", ca.schema, "lemma1, corollary1, corollary3, subsidiary1, subsidiary2, lemma2");
  p_check->add_option("--axiom", ca.axiom, "axiom name");
  p_check->add_option("--phi", ca.phis, "formula parameter (repeatable)");
  p_check->add_flag("--scott", ca.scott, "Scott's replacement and its derivation");
  p_check->add_option("--infinity", ca.infinity, "successor step for the ordinal at NODE");
  p_check->add_flag("--family", ca.family, "all witness axioms on the closed family");
  p_check->add_option("--exhaustive", ca.exhaustive, "every structure with 1..N nodes")->check(CLI::Range(1, int(kMaxExhaustiveNodes)));
  p_check->add_option("--depth", ca.depth, "corpus depth")->check(CLI::Range(0, 3));
  p_check->add_option("--vars", ca.vars, "corpus variables");
  p_check->add_flag("--raw", ca.raw, "corpus over in and = instead of in* and =*");
  p_check->add_flag("--no-enforce", ca.no_enforce, "admit corpus formulas outside the signature");
  p_check->add_flag("--literal", ca.literal, "literal biconditional forms");
  p_check->add_option("--jobs", ca.jobs, "worker threads")->check(CLI::PositiveNumber);
  p_check->add_option("--replay", ca.replay, "replay failure records from FILE (- for stdin)");
  format_opt(p_check, ca.format);

  // suite
  auto* p_suite = app.add_subcommand("suite", "run the acceptance criteria");
  std::vector<int> s_only;
  p_suite->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  p_suite->add_option("--only", s_only, "criteria to run")->check(CLI::Range(1, kCriteria))->delimiter(',');
  format_opt(p_suite, format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (p_parse->parsed()) {
      Formula f = parse(p_formula, {p_reserved});
      if (p_canonical) f = canonical(f);
      std::cout << (p_tree ? tree(f) : to_string(f) + "\n");
      return kOk;
    }
    if (p_tr->parsed()) {
      const Formula f = parse(t_formula);
      Formula out;
      if (t_to == "expand") out = expand(f);
      else if (t_to == "zfa") out = t_starred ? translate_zfa_starred(f) : translate_zfa(f);
      else out = t_starred ? relativize_pure_starred(f) : relativize_pure(f);
      std::cout << to_string(out) << "\n";
      return kOk;
    }
    if (p_eval->parsed()) {
      const MemStructure s = e_src.build();
      const bool v = eval(s, parse(e_formula, {true}), parse_assignment(e_assign), EvalOptions{e_depth});
      std::cout << (v ? "true" : "false") << "\n";
      return kOk;
    }
    if (p_quot->parsed()) {
      const Quotient q = quotient(q_src.build());
      std::cout << to_text(q.structure);
      if (q_map)
        for (std::size_t i = 0; i < q.collapse.size(); ++i) std::cout << "# " << i << " -> " << q.collapse[i] << "\n";
      return kOk;
    }
    if (p_gen->parsed()) {
      if (g_exhaustive) {
        if (g_src.given()) throw UsageError("--exhaustive takes no structure source");
        std::uint64_t count = 0;
        for_each_structure(*g_exhaustive, g_dedup, [&](std::uint64_t, const MemStructure& s) {
          ++count;
          if (g_list) std::cout << brief(s) << "\n";
        });
        if (!g_list) std::cout << count << "\n";
        return kOk;
      }
      std::cout << to_text(g_src.build());
      return kOk;
    }
    if (p_check->parsed()) return run_check(ca);
    if (p_suite->parsed()) return run_suite_cmd(jobs, s_only, format);
  } catch (const UsageError& e) {
    std::cerr << "coext: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {  // parse, format, signature and side-condition errors
    std::cerr << "coext: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "coext: " << e.what() << "\n";
    return kUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "coext: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
