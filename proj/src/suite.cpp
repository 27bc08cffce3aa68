#include "coext/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <deque>
#include <memory>
#include <sstream>

namespace coext {

namespace {

using Clock = std::chrono::steady_clock;

const std::vector<Pred> kStarred{Pred::InStar, Pred::EqStar};

std::string counts(const Report& r) {
  std::ostringstream os;
  os << r.check << " " << (r.passed ? "ok" : "FAILED") << " [" << r.structures << " structures, " << r.realized << "/"
     << r.instances << " instances]";
  return os.str();
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

// Passed when every report passed; `nonvacuous` also asks for a realized
// instance in each.
void settle(CriterionResult& c, bool nonvacuous) {
  c.passed = !c.reports.empty();
  std::vector<std::string> parts;
  for (const auto& r : c.reports) {
    if (!r.passed || (nonvacuous && r.realized == 0)) c.passed = false;
    parts.push_back(counts(r));
  }
  if (c.summary.empty()) c.summary = join(parts, "; ");
}

// ---------------------------------------------------------------------------

CriterionResult validity_suite(const SuiteOptions& o) {
  CriterionResult c{1, "validity-suite"};
  const auto star_y = corpus(1, {"y", "w"}, kStarred);
  const auto star_z = corpus(1, {"z", "w"}, kStarred);
  const auto raw_z = corpus(1, {"z", "w"}, {Pred::In, Pred::Eq});
  const std::size_t n = kMaxExhaustiveNodes;

  auto schema = [&](SchemaId id, const std::vector<Formula>& phis, const std::string& label) {
    const SchemaCheck check(id, phis);
    Report r = run_exhaustive(label, n, [&](const MemStructure& s) { return check.run(s); }, o.jobs);
    r.notes.push_back(std::to_string(check.instance_count()) + " schema instances");
    c.reports.push_back(std::move(r));
  };
  schema(SchemaId::Lemma1, star_y, "lemma1");
  schema(SchemaId::Corollary1, star_y, "corollary1");
  schema(SchemaId::Corollary3, star_y, "corollary3");
  schema(SchemaId::Subsidiary1, star_z, "subsidiary1");
  schema(SchemaId::Subsidiary1, raw_z, "subsidiary1-raw");
  c.reports.push_back(run_exhaustive("subsidiary2", n, check_subsidiary2, o.jobs));
  schema(SchemaId::Lemma2, star_z, "lemma2");
  for (Axiom a : {Axiom::WeakExt, Axiom::AtomsEmpty})
    c.reports.push_back(run_exhaustive(
        std::string(AxiomId{a, std::nullopt}.name()), n,
        [a](const MemStructure& s) { return check_axiom(s, {a, std::nullopt}); }, o.jobs));
  settle(c, true);
  c.notes.push_back("corpus sizes: " + std::to_string(star_y.size()) + " over {y,w}, " +
                    std::to_string(star_z.size()) + " over {z,w}");
  return c;
}

// The literal biconditional forms of Subsidiary 1 and Corollary 3 are not
// valid; print the least counterexamples for the record.
std::vector<std::string> literal_forms(const SuiteOptions& o) {
  std::vector<std::string> out;
  SchemaOptions lit;
  lit.literal_biconditional = true;
  const auto phis = corpus(1, {"z", "w"}, kStarred);
  const auto phis_y = corpus(1, {"y", "w"}, kStarred);
  for (auto [id, corp] : {std::pair{SchemaId::Subsidiary1, &phis}, std::pair{SchemaId::Corollary3, &phis_y}}) {
    const SchemaCheck check(id, *corp, lit);
    const Report r = run_exhaustive(check.name() + "-literal", 2, [&](const MemStructure& s) { return check.run(s); },
                                    o.jobs);
    if (r.passed) {
      out.push_back(r.check + " holds on n <= 2");
    } else {
      const auto& ce = *r.counterexample;
      std::string a;
      for (const auto& [v, x] : ce.assignment) a += " " + v + "=" + std::to_string(x);
      out.push_back(r.check + " fails on " + brief(ce.structure) + ":" + a + " for " + ce.formula);
    }
  }
  return out;
}

CriterionResult negative_controls(const SuiteOptions& o) {
  CriterionResult c{2, "negative-controls"};
  SchemaOptions loose;
  loose.enforce_signature = false;
  const SchemaCheck raw(SchemaId::Lemma1, corpus(1, {"y", "w"}, {Pred::In, Pred::Eq}), loose);
  const Report a = run_exhaustive("lemma1-raw", 3, [&](const MemStructure& s) { return raw.run(s); }, o.jobs);

  const Formula ext = parse("all x. all y. (all z. (z in x <-> z in y)) -> x = y");
  const bool ext_holds = eval(parse_structure("nodes 2\n"), ext, {});
  const Formula found = parse("all A. (ex x. x in A) -> ex x. (x in A & ~ex z. (z in x & z in A))");
  const bool found_holds = eval(parse_structure("nodes 1\nmem 0 0\n"), found, {});

  std::vector<std::string> parts;
  parts.push_back(std::string("(a) raw lemma1 ") + (a.passed ? "found nothing" : "caught on " + brief(a.counterexample->structure)));
  parts.push_back(std::string("(b) extensionality on <2;> ") + (ext_holds ? "holds" : "fails"));
  parts.push_back(std::string("(c) raw foundation on <1; 0->0> ") + (found_holds ? "holds" : "fails"));
  c.passed = !a.passed && !ext_holds && !found_holds;
  c.summary = join(parts, "; ");
  c.reports.push_back(a);
  return c;
}

CriterionResult native_vs_expanded(const SuiteOptions& o) {
  CriterionResult c{3, "native-expanded-agreement"};
  std::mt19937_64 rng(o.seed);
  const std::vector<VarName> vars{"x", "y", "z"};
  const std::vector<Pred> preds{Pred::In, Pred::Eq, Pred::InStar, Pred::EqStar, Pred::Set, Pred::At};
  const EvalOptions deep{16};
  std::size_t agree = 0, total = 1000;
  std::string first;
  for (std::size_t i = 0; i < total; ++i) {
    const std::size_t n = 1 + rng() % 6;
    const double p = 0.15 + 0.1 * static_cast<double>(rng() % 5);
    const MemStructure s = random_structure(n, p, rng());
    const Formula f = random_formula(rng, 2, vars, preds);
    Assignment rho;
    for (const auto& v : free_vars(f)) rho[v] = static_cast<NodeId>(rng() % n);
    const bool native = eval(s, f, rho, deep);
    const bool expanded = eval(s, expand(f), rho, deep);
    if (native == expanded) {
      ++agree;
    } else if (first.empty()) {
      first = to_string(f) + " on " + brief(s);
    }
  }
  c.passed = agree == total;
  c.summary = std::to_string(agree) + "/" + std::to_string(total) + " triples agree";
  if (!first.empty()) c.summary += "; first disagreement: " + first;
  return c;
}

Report quotient_check(const MemStructure& s, const std::vector<std::pair<CompiledFormula, CompiledFormula>>& pairs) {
  Report r("quotient");
  r.structures = 1;
  const Quotient q = quotient(s);
  const Semantics ss(s);
  const Semantics qs(q.structure);
  const std::size_t n = s.size();
  auto fail = [&](std::string clause, std::string detail, std::vector<Binding> a = {}) {
    Counterexample ce;
    ce.structure = s;
    ce.clause = std::move(clause);
    ce.detail = std::move(detail);
    ce.assignment = std::move(a);
    r.fail(std::move(ce));
    return r;
  };

  // Congruence: in* is determined by the classes, and the quotient's edges
  // are exactly the induced ones.
  const auto& part = ss.partition();
  for (NodeId z = 0; z < n; ++z)
    for (NodeId x = 0; x < n; ++x) {
      ++r.instances;
      ++r.realized;
      const NodeId rz = part.classes[part.class_of[z]].front(), rx = part.classes[part.class_of[x]].front();
      const bool m = ss.memstar(z, x);
      if (m != ss.memstar(rz, rx)) return fail("congruence", "in* differs between class representatives", {{"z", z}, {"x", x}});
      if (m != q.structure.has_edge(q.collapse[z], q.collapse[x]))
        return fail("induced-edges", "quotient edge disagrees with in*", {{"z", z}, {"x", x}});
    }

  // Classes of sets are extensional in the quotient.  Sethood is read in
  // s: an atom's class has no members in the quotient and would look empty.
  std::vector<char> set_class(q.structure.size(), 0);
  for (NodeId x = 0; x < n; ++x)
    if (ss.is_set(x)) set_class[q.collapse[x]] = 1;
  for (NodeId a = 0; a < q.structure.size(); ++a)
    for (NodeId b = a + 1; b < q.structure.size(); ++b) {
      if (!set_class[a] || !set_class[b]) continue;
      ++r.instances;
      ++r.realized;
      if (q.structure.members(a) == q.structure.members(b))
        return fail("extensional", "set classes " + std::to_string(a) + ", " + std::to_string(b) + " share members");
    }

  // Truth transfer for assignments into set nodes.
  NodeSet sets;
  for (NodeId x = 0; x < n; ++x)
    if (ss.is_set(x)) sets.push_back(x);
  std::vector<NodeId> vs, vq, scratch;
  for (const auto& [fs, fq] : pairs) {
    const std::size_t k = fs.free_vars().size();
    if (k > 0 && sets.empty()) continue;
    std::vector<std::size_t> idx(k, 0);
    for (;;) {
      vs.resize(k);
      vq.resize(k);
      for (std::size_t i = 0; i < k; ++i) {
        vs[i] = sets[idx[i]];
        vq[i] = q.collapse[vs[i]];
      }
      ++r.instances;
      ++r.realized;
      if (fs.eval(ss, vs, scratch) != fq.eval(qs, vq, scratch)) {
        std::vector<Binding> a;
        for (std::size_t i = 0; i < k; ++i) a.emplace_back(fs.free_vars()[i], vs[i]);
        return fail("truth-transfer", to_string(fs.source()), std::move(a));
      }
      std::size_t i = k;
      while (i > 0) {
        if (++idx[i - 1] < sets.size()) break;
        idx[i - 1] = 0;
        --i;
      }
      if (i == 0) break;
    }
  }
  return r;
}

CriterionResult quotient_criterion(const SuiteOptions& o) {
  CriterionResult c{4, "quotient"};
  std::vector<std::pair<CompiledFormula, CompiledFormula>> pairs;
  for (const auto& f : corpus(1, {"y", "w"}, kStarred)) pairs.emplace_back(CompiledFormula(f), CompiledFormula(unstar(f)));
  c.reports.push_back(
      run_exhaustive("quotient", kMaxExhaustiveNodes, [&](const MemStructure& s) { return quotient_check(s, pairs); },
                     o.jobs));
  settle(c, true);
  return c;
}

// Reverse reachability: everything with a path of edges into x.
NodeSet reach_tc(const MemStructure& s, NodeId x) {
  std::vector<char> seen(s.size(), 0);
  std::deque<NodeId> queue(s.members(x).begin(), s.members(x).end());
  while (!queue.empty()) {
    const NodeId y = queue.front();
    queue.pop_front();
    if (seen[y]) continue;
    seen[y] = 1;
    for (NodeId z : s.members(y)) queue.push_back(z);
  }
  NodeSet out;
  for (NodeId y = 0; y < s.size(); ++y)
    if (seen[y]) out.push_back(y);
  return out;
}

Report tc_check(const MemStructure& s) {
  Report r("tc");
  r.structures = 1;
  for (NodeId x = 0; x < s.size(); ++x) {
    ++r.instances;
    ++r.realized;
    if (tc(s, x) != reach_tc(s, x)) {
      Counterexample ce;
      ce.structure = s;
      ce.clause = "tc";
      ce.assignment = {{"x", x}};
      ce.detail = "iterated unions disagree with reachability";
      r.fail(std::move(ce));
      return r;
    }
  }
  return r;
}

CriterionResult tc_criterion(const SuiteOptions& o) {
  CriterionResult c{5, "tc-oracle"};
  c.reports.push_back(run_exhaustive("tc-exhaustive", kMaxExhaustiveNodes, tc_check, o.jobs));
  std::mt19937_64 rng(o.seed + 5);
  std::vector<MemStructure> randoms;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 1 + rng() % 8;
    const double p = 0.1 + 0.1 * static_cast<double>(rng() % 5);
    randoms.push_back(random_structure(n, p, rng()));
  }
  c.reports.push_back(run_all("tc-random", randoms, tc_check, o.jobs));
  settle(c, true);
  return c;
}

struct Family {
  FamilySpec spec;
  ClosedFamily closed;
};

CriterionResult family_axioms(const Family& fam) {
  CriterionResult c{6, "closed-family-axioms"};
  const MemStructure& s = fam.closed.structure;
  const std::size_t rank = fam.closed.family_rank;
  auto axiom = [&](const AxiomId& id) { return check_axiom(s, id, family_bounds(s, rank, id.kind)); };
  auto schema = [&](std::string name, Axiom kind, const std::vector<Formula>& phis) {
    Report all(std::move(name));
    for (const auto& phi : phis) all.absorb(axiom({kind, phi}));
    c.reports.push_back(std::move(all));
  };
  for (Axiom a : {Axiom::PairingStar, Axiom::UnionStar, Axiom::PowerStar}) c.reports.push_back(axiom({a, std::nullopt}));
  schema("separation", Axiom::SeparationStar, fam.spec.separation_corpus);
  c.reports.push_back(axiom(proposition1()));
  c.reports.back().check = "proposition1";
  schema("replacement", Axiom::ReplacementStarZFA, fam.spec.replacement_corpus);
  settle(c, true);
  c.summary = std::to_string(s.size()) + " nodes after " + std::to_string(fam.closed.rounds) + " rounds" +
              (fam.closed.converged ? "" : " (not converged)") + "; " + c.summary;

  // Checked but outside the criterion.
  for (Axiom a : {Axiom::WeakExt, Axiom::AtomsEmpty, Axiom::FoundationStar}) {
    const Report r = axiom({a, std::nullopt});
    c.notes.push_back(counts(r));
  }
  Report eps("eps-separation");
  for (const auto& phi : fam.spec.eps_separation_corpus) eps.absorb(axiom({Axiom::EpsSeparation, phi}));
  c.notes.push_back(counts(eps));
  return c;
}

CriterionResult infinity_criterion(const Family& fam) {
  CriterionResult c{7, "infinity-step"};
  const MemStructure& s = fam.closed.structure;
  // HF node ids are Ackermann codes: 0 = {}, 1 = {{}}, 3 = {{}, {{}}}.
  std::vector<std::string> parts;
  bool ok = true;
  for (auto [ord, id] : {std::pair{0, NodeId{0}}, std::pair{1, NodeId{1}}, std::pair{2, NodeId{3}}}) {
    const auto copy = find_star_copy(s, id);
    ok = ok && copy.has_value();
    parts.push_back(std::to_string(ord) + "* = " + (copy ? "node " + std::to_string(copy->target) : "none"));
  }
  for (NodeId n : {NodeId{0}, NodeId{1}}) {
    Report r = check_infinity_step(s, n);
    r.check += "(" + std::to_string(n) + ")";
    c.reports.push_back(std::move(r));
  }
  settle(c, true);
  c.passed = c.passed && ok;
  c.summary = join(parts, ", ") + "; " + c.summary;
  return c;
}

CriterionResult scott_criterion(const Family& fam) {
  CriterionResult c{8, "scott-derivation"};
  const MemStructure& s = fam.closed.structure;
  c.reports.push_back(check_scott(s, functional_corpus(), family_bounds(s, fam.closed.family_rank, Axiom::ScottReplacement)));
  settle(c, true);
  return c;
}

Report hierarchy_check(const MemStructure& s) {
  Report r("hierarchy");
  r.structures = 1;
  const std::size_t n = s.size();
  const auto stages = hierarchy_stages(s, n);
  NodeSet inside;
  for (NodeId x = 0; x < n; ++x) {
    ++r.instances;
    ++r.realized;
    if (!std::binary_search(stages.back().begin(), stages.back().end(), x)) {
      Counterexample ce;
      ce.structure = s;
      ce.clause = "stages";
      ce.assignment = {{"x", x}};
      ce.detail = "not in stage " + std::to_string(n);
      r.fail(std::move(ce));
      return r;
    }
    inside.push_back(x);
  }
  r.absorb(check_axiom(s, {Axiom::FoundationStar, std::nullopt}, Bounds::nodes(inside)));
  r.structures = 1;
  return r;
}

CriterionResult hierarchy_criterion(const SuiteOptions& o) {
  CriterionResult c{9, "hierarchy"};
  auto acyclic = [](const MemStructure& s) {
    for (const auto& r : ranks(s))
      if (!r) return false;
    return true;
  };
  c.reports.push_back(run_exhaustive("hierarchy", kMaxExhaustiveNodes, hierarchy_check, o.jobs, acyclic));
  settle(c, true);
  return c;
}

}  // namespace

std::string format_line(const CriterionResult& r) {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.1fs", r.seconds);
  return "criterion " + std::to_string(r.id) + " " + (r.passed ? "PASS" : "FAIL") + " " + r.name + ": " + r.summary +
         " (" + secs + ")";
}

std::vector<CriterionResult> run_suite(const SuiteOptions& opts,
                                       const std::function<void(const CriterionResult&)>& on_result) {
  auto wanted = [&](int id) { return opts.only.empty() || std::find(opts.only.begin(), opts.only.end(), id) != opts.only.end(); };
  std::unique_ptr<Family> fam;
  auto family = [&]() -> const Family& {
    if (!fam) {
      fam = std::make_unique<Family>();
      fam->spec = default_family_spec();
      fam->closed = closed_family(fam->spec);
    }
    return *fam;
  };

  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriteria; ++id) {
    if (!wanted(id)) continue;
    const auto t0 = Clock::now();
    CriterionResult c;
    switch (id) {
      case 1:
        c = validity_suite(opts);
        for (auto& line : literal_forms(opts)) c.notes.push_back(std::move(line));
        break;
      case 2: c = negative_controls(opts); break;
      case 3: c = native_vs_expanded(opts); break;
      case 4: c = quotient_criterion(opts); break;
      case 5: c = tc_criterion(opts); break;
      case 6: c = family_axioms(family()); break;
      case 7: c = infinity_criterion(family()); break;
      case 8: c = scott_criterion(family()); break;
      case 9: c = hierarchy_criterion(opts); break;
    }
    c.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (on_result) on_result(c);
    out.push_back(std::move(c));
  }
  return out;
}

Formula random_formula(std::mt19937_64& rng, int depth, const std::vector<VarName>& vars,
                       const std::vector<Pred>& preds) {
  auto var = [&] { return vars[rng() % vars.size()]; };
  if (depth <= 0 || rng() % 10 < 3) {
    const Pred p = preds[rng() % preds.size()];
    if (arity(p) == 1) return make_atom(p, {var()});
    return make_atom(p, {var(), var()});
  }
  switch (rng() % 7) {
    case 0: return Not(random_formula(rng, depth - 1, vars, preds));
    case 1: return Forall(var(), random_formula(rng, depth - 1, vars, preds));
    case 2: return Exists(var(), random_formula(rng, depth - 1, vars, preds));
    default: {
      static constexpr Kind kBinary[] = {Kind::And, Kind::Or, Kind::Implies, Kind::Iff};
      const Kind k = kBinary[rng() % 4];
      Formula l = random_formula(rng, depth - 1, vars, preds);
      return make_binary(k, std::move(l), random_formula(rng, depth - 1, vars, preds));
    }
  }
}

Formula unstar(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
      if (f.pred() == Pred::InStar) return In(f.args()[0], f.args()[1]);
      if (f.pred() == Pred::EqStar) return Eq(f.args()[0], f.args()[1]);
      return f;
    case Kind::Not: return Not(unstar(f.body()));
    case Kind::Forall:
    case Kind::Exists: return make_quantifier(f.kind(), f.var(), unstar(f.body()));
    default: return make_binary(f.kind(), unstar(f.lhs()), unstar(f.rhs()));
  }
}

}  // namespace coext
