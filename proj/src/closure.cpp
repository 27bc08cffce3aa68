#include <algorithm>
#include <set>

#include "coext/verify.hpp"
#include "witness.hpp"

namespace coext {

namespace {

constexpr EvalOptions kClosureEval{8};

struct Demand {
  AxiomInstance instance;
  Axiom bound_kind;
};

template <class Fn>
void for_each_binding(const std::vector<VarName>& params, const NodeSet& domain, Fn&& fn) {
  if (!params.empty() && domain.empty()) return;
  Assignment rho;
  std::vector<std::size_t> idx(params.size(), 0);
  for (;;) {
    for (std::size_t i = 0; i < params.size(); ++i) rho[params[i]] = domain[idx[i]];
    fn(rho);
    std::size_t i = params.size();
    while (i > 0) {
      if (++idx[i - 1] < domain.size()) break;
      idx[i - 1] = 0;
      --i;
    }
    if (i == 0) return;
  }
}

bool eval_bound(const Semantics& sem, const CompiledFormula& cf, const Assignment& rho) {
  std::vector<NodeId> values;
  for (const auto& v : cf.free_vars()) values.push_back(rho.at(v));
  return cf.eval(sem, values);
}

NodeSet all_nodes(const MemStructure& s) {
  NodeSet out(s.size());
  for (NodeId i = 0; i < s.size(); ++i) out[i] = i;
  return out;
}

// Extensions asked for by one witness-shaped instance.
void demanded(const MemStructure& s, const Semantics& sem, const Demand& d, std::size_t rank,
              std::set<NodeSet>& want) {
  Formula body = d.instance.body;
  const auto shape = detail::witness_shape(body);
  if (!shape) throw std::logic_error("closure: " + d.instance.id.name() + " has no witness clause");
  std::optional<CompiledFormula> ante;
  if (shape->antecedent) ante.emplace(*shape->antecedent, kClosureEval);
  const Bounds b = family_bounds(s, rank, d.bound_kind);
  for_each_binding(d.instance.params, b.params ? *b.params : all_nodes(s), [&](const Assignment& rho) {
    if (ante && !eval_bound(sem, *ante, rho)) return;
    want.insert(defined_extension(sem, shape->rhs, shape->member, rho, kClosureEval));
  });
}

}  // namespace

std::vector<Formula> functional_corpus() {
  static const char* const kTexts[] = {
      "y =* x",
      "set(y) & all z. (z in* y <-> z =* x)",
      "set(y) & all z. (z in* y <-> z in* x & all w. ~(w in* z))",
      "set(y) & all z. (z in* y <-> z =* x | z in* x)",
      "set(y) & all z. (z in* y <-> z in* x & ex w. w in* z)",
  };
  std::vector<Formula> out;
  for (const char* t : kTexts) out.push_back(parse(t));
  return out;
}

FamilySpec default_family_spec() {
  FamilySpec spec;
  spec.hf_rank = 3;
  spec.doppelgangers = {{0, 2}, {1, 1}};
  spec.mode = DoppelMode::Shallow;
  for (const auto& f : corpus(1, {"y", "w"}, {Pred::InStar, Pred::EqStar}))
    if (occurs_free(f, "y") && !bound_vars(f).count("y")) spec.separation_corpus.push_back(f);
  spec.replacement_corpus = functional_corpus();
  for (const char* t : {"ex u. u in y", "~ex u. u in y", "set(y)", "ex u. (u in y & y in u)"})
    spec.eps_separation_corpus.push_back(parse(t));
  return spec;
}

ClosedFamily closed_family(const FamilySpec& spec) {
  ClosedFamily out;
  MemStructure s = build_hf(spec.hf_rank);
  out.base_nodes = s.size();
  if (!spec.doppelgangers.empty()) s = add_doppelgangers(s, spec.doppelgangers, spec.mode);
  out.family_rank = spec.hf_rank;
  const std::size_t rank = out.family_rank;

  std::vector<Demand> demands;
  for (Axiom a : {Axiom::PairingStar, Axiom::UnionStar, Axiom::PowerStar})
    demands.push_back({instantiate({a, std::nullopt}), a});
  for (const auto& phi : spec.separation_corpus)
    demands.push_back({instantiate({Axiom::SeparationStar, phi}), Axiom::SeparationStar});
  demands.push_back({instantiate(proposition1()), Axiom::ReplacementStar});
  for (const auto& phi : spec.replacement_corpus)
    demands.push_back({instantiate({Axiom::ReplacementStarZFA, phi}), Axiom::ReplacementStarZFA});
  for (const auto& phi : spec.eps_separation_corpus) {
    auto ob = eps_separation_obligations(phi);
    demands.push_back({ob.replacement, Axiom::EpsSeparation});
    demands.push_back({ob.target, Axiom::EpsSeparation});
  }
  std::vector<EpsSeparationObligations> eps;
  for (const auto& phi : spec.eps_separation_corpus) eps.push_back(eps_separation_obligations(phi));

  for (std::size_t round = 0; round < spec.max_rounds; ++round) {
    const Semantics sem(s);
    std::set<NodeSet> want;
    for (const auto& d : demands) demanded(s, sem, d, rank, want);

    // Unions of the replacement witnesses behind each eps-separation.
    const Bounds eb = family_bounds(s, rank, Axiom::EpsSeparation);
    for (std::size_t i = 0; i < eps.size(); ++i) {
      const auto& ob = eps[i];
      const auto shape = detail::witness_shape(ob.replacement.body);
      // The replacement collects, per X in A, a node with extension {X}
      // when phi(X) and an empty one otherwise.
      const NodeSet holds = defined_extension(sem, spec.eps_separation_corpus[i], "y", {}, kClosureEval);
      for (NodeId a : *eb.params)
        for (NodeId x : s.members(a))
          want.insert(std::binary_search(holds.begin(), holds.end(), x) ? NodeSet{x} : NodeSet{});
      for (NodeId a : *eb.params) {
        const NodeSet c = defined_extension(sem, shape->rhs, shape->member, {{"A", a}}, kClosureEval);
        NodeSet u;
        for (NodeId y : c) u.insert(u.end(), s.members(y).begin(), s.members(y).end());
        std::sort(u.begin(), u.end());
        u.erase(std::unique(u.begin(), u.end()), u.end());
        want.insert(std::move(u));
      }
    }

    // Scott's witness and the sets its derivation passes through.
    const Bounds sb = family_bounds(s, rank, Axiom::ScottReplacement);
    for (const auto& phi : spec.replacement_corpus) {
      const auto table = detail::relation_table(sem, phi, kClosureEval);
      if (!detail::functional_up_to_coext(sem, table)) continue;
      for (NodeId a : *sb.params) {
        auto sets = detail::scott_sets(s, table, a);
        want.insert(sets.target);
        for (auto& u : sets.unions) want.insert(std::move(u));
        want.insert(sets.derived);
        NodeSet sep;
        std::set_intersection(sets.derived.begin(), sets.derived.end(), sets.target.begin(), sets.target.end(),
                              std::back_inserter(sep));
        want.insert(std::move(sep));
      }
    }

    for (NodeId x = 0; x < s.size(); ++x) want.erase(s.members(x));
    out.rounds = round + 1;
    if (want.empty()) {
      out.converged = true;
      break;
    }
    for (const auto& ext : want) {
      const NodeId w = s.add_node();
      for (NodeId m : ext) s.add_edge(m, w);
    }
  }
  out.structure = std::move(s);
  return out;
}

}  // namespace coext
