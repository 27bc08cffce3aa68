#include <algorithm>
#include <map>

#include "coext/verify.hpp"
#include "witness.hpp"

namespace coext {

namespace {

constexpr EvalOptions kAxiomEval{8};

NodeSet domain_of(const MemStructure& s, const Bounds& b) {
  if (!b.params) {
    NodeSet all(s.size());
    for (NodeId i = 0; i < s.size(); ++i) all[i] = i;
    return all;
  }
  for (NodeId x : *b.params)
    if (x >= s.size()) throw std::out_of_range("bounds name node " + std::to_string(x) + " outside the structure");
  return *b.params;
}

// Calls fn for every binding of `params` to nodes of `domain`, in
// lexicographic order of the parameter list.
template <class Fn>
bool for_each_binding(const std::vector<VarName>& params, const NodeSet& domain, Fn&& fn) {
  Assignment rho;
  std::vector<std::size_t> idx(params.size(), 0);
  if (!params.empty() && domain.empty()) return true;
  for (;;) {
    for (std::size_t i = 0; i < params.size(); ++i) rho[params[i]] = domain[idx[i]];
    if (!fn(rho)) return false;
    std::size_t i = params.size();
    while (i > 0) {
      if (++idx[i - 1] < domain.size()) break;
      idx[i - 1] = 0;
      --i;
    }
    if (i == 0) return true;
  }
}

bool eval_bound(const Semantics& sem, const CompiledFormula& cf, const Assignment& rho, std::vector<NodeId>& scratch) {
  std::vector<NodeId> values;
  values.reserve(cf.free_vars().size());
  for (const auto& v : cf.free_vars()) values.push_back(rho.at(v));
  return cf.eval(sem, values, scratch);
}

std::vector<Binding> bindings(const std::vector<VarName>& params, const Assignment& rho) {
  std::vector<Binding> out;
  for (const auto& p : params) out.emplace_back(p, rho.at(p));
  return out;
}

Counterexample make_cx(const MemStructure& s, const Formula& f, std::vector<Binding> a, std::string clause,
                       std::string detail = {}) {
  Counterexample c;
  c.structure = s;
  c.formula = f.empty() ? std::string() : to_string(f);
  c.assignment = std::move(a);
  c.clause = std::move(clause);
  c.detail = std::move(detail);
  return c;
}

std::optional<NodeId> node_with_extension(const MemStructure& s, const NodeSet& ext) {
  for (NodeId x = 0; x < s.size(); ++x)
    if (s.members(x) == ext) return x;
  return std::nullopt;
}

std::map<NodeSet, NodeSet> extension_index(const MemStructure& s) {
  std::map<NodeSet, NodeSet> out;
  for (NodeId x = 0; x < s.size(); ++x) out[s.members(x)].push_back(x);
  return out;
}

std::string set_text(const NodeSet& ns) {
  std::string out = "{";
  for (std::size_t i = 0; i < ns.size(); ++i) out += (i ? "," : "") + std::to_string(ns[i]);
  return out + "}";
}

Report check_eps_separation(const MemStructure& s, const AxiomId& id, const NodeSet& domain) {
  const auto ob = eps_separation_obligations(*id.phi);
  Report r(id.name());
  r.structures = 1;
  const Semantics sem(s);
  std::vector<NodeId> scratch;
  const CompiledFormula target(ob.target.body, kAxiomEval);
  const CompiledFormula replacement(ob.replacement.body, kAxiomEval);
  const auto rep_shape = detail::witness_shape(ob.replacement.body);
  const auto union_shape = detail::witness_shape(ob.union_step.body);
  const auto target_shape = detail::witness_shape(ob.target.body);

  for_each_binding({"A"}, domain, [&](const Assignment& rho) {
    ++r.instances;
    ++r.realized;
    const std::vector<Binding> at{{"A", rho.at("A")}};
    if (!eval_bound(sem, replacement, rho, scratch)) {
      r.fail(make_cx(s, ob.replacement.body, at, "replacement"));
      return false;
    }
    const NodeSet c_ext = defined_extension(sem, rep_shape->rhs, rep_shape->member, rho, kAxiomEval);
    const NodeId c = *node_with_extension(s, c_ext);
    const NodeSet u_ext = defined_extension(sem, union_shape->rhs, union_shape->member, {{"C", c}}, kAxiomEval);
    const auto u = node_with_extension(s, u_ext);
    if (!u) {
      r.fail(make_cx(s, ob.union_step.body, {{"C", c}}, "union", "no node with extension " + set_text(u_ext)));
      return false;
    }
    const NodeSet wanted = defined_extension(sem, target_shape->rhs, target_shape->member, rho, kAxiomEval);
    if (u_ext != wanted) {
      r.fail(make_cx(s, {}, at, "agreement",
                     "union of the replacement set is " + set_text(u_ext) + ", separation wants " + set_text(wanted)));
      return false;
    }
    if (!eval_bound(sem, target, rho, scratch)) {
      r.fail(make_cx(s, ob.target.body, at, "target"));
      return false;
    }
    return true;
  });
  return r;
}

}  // namespace

Bounds Bounds::rank_at_most(const MemStructure& s, std::size_t rank) {
  const auto rk = ranks(s);
  NodeSet ns;
  for (NodeId x = 0; x < s.size(); ++x)
    if (rk[x] && *rk[x] <= rank) ns.push_back(x);
  return Bounds::nodes(std::move(ns));
}

Bounds family_bounds(const MemStructure& s, std::size_t family_rank, Axiom a) {
  switch (a) {
    case Axiom::WeakExt:
    case Axiom::AtomsEmpty:
    case Axiom::FoundationStar:
    case Axiom::UnionSchema:
      return {};
    case Axiom::PowerStar:
      return Bounds::rank_at_most(s, family_rank >= 2 ? family_rank - 2 : 0);
    default:
      return Bounds::rank_at_most(s, family_rank >= 1 ? family_rank - 1 : 0);
  }
}

Report check_axiom(const MemStructure& s, const AxiomId& id, const Bounds& bounds) {
  const NodeSet domain = domain_of(s, bounds);
  if (id.kind == Axiom::EpsSeparation) {
    if (!id.phi) throw SideConditionError(id.name(), "schema needs a formula parameter");
    return check_eps_separation(s, id, domain);
  }
  const AxiomInstance inst = instantiate(id);
  Report r(id.name());
  r.structures = 1;
  const Semantics sem(s);
  std::vector<NodeId> scratch;

  const bool conditional = (id.kind == Axiom::ScottReplacement || id.kind == Axiom::ReplacementStarZFA ||
                            id.kind == Axiom::UnionSchema);
  std::optional<CompiledFormula> ante;
  Formula cons_f = inst.body;
  if (conditional) {
    ante.emplace(inst.body.lhs(), kAxiomEval);
    cons_f = inst.body.rhs();
  }
  // Witness-asserting conclusions ex w. [set(w) &] all m. (m in w <-> rhs)
  // are decided by computing the extension rhs defines and evaluating the
  // matrix at the nodes carrying it; any witness has to be one of them.
  const auto shape = detail::witness_shape(cons_f);
  const auto index = extension_index(s);
  std::optional<CompiledFormula> matrix;
  if (shape) matrix.emplace(cons_f.body(), kAxiomEval);
  const CompiledFormula cons(cons_f, kAxiomEval);

  for_each_binding(inst.params, domain, [&](const Assignment& rho) {
    ++r.instances;
    if (ante && !eval_bound(sem, *ante, rho, scratch)) return true;
    ++r.realized;
    bool ok = false;
    if (shape) {
      const NodeSet want = defined_extension(sem, shape->rhs, shape->member, rho, kAxiomEval);
      if (auto it = index.find(want); it != index.end()) {
        Assignment at = rho;
        for (NodeId w : it->second) {
          at[shape->witness] = w;
          if ((ok = eval_bound(sem, *matrix, at, scratch))) break;
        }
      }
    } else {
      ok = eval_bound(sem, cons, rho, scratch);
    }
    if (!ok) {
      r.fail(make_cx(s, inst.body, bindings(inst.params, rho), "instance"));
      return false;
    }
    return true;
  });
  return r;
}

// ---------------------------------------------------------------------------


Report check_scott(const MemStructure& s, const std::vector<Formula>& phis, const Bounds& bounds) {
  const NodeSet domain = domain_of(s, bounds);
  Report r("scott");
  r.structures = 1;
  const Semantics sem(s);
  std::vector<NodeId> scratch;

  for (const auto& phi : phis) {
    const AxiomInstance inst = instantiate({Axiom::ScottReplacement, phi});
    const auto table = detail::relation_table(sem, phi, kAxiomEval);
    const bool functional = detail::functional_up_to_coext(sem, table);
    const CompiledFormula conclusion(inst.body.rhs(), kAxiomEval);

    for (NodeId a : domain) {
      ++r.instances;
      if (!functional) continue;
      ++r.realized;
      const std::vector<Binding> at{{"A", a}};
      const auto sets = detail::scott_sets(s, table, a);
      const NodeSet& target = sets.target;
      const NodeSet& derived = sets.derived;

      if (!eval_bound(sem, conclusion, {{"A", a}}, scratch) || !node_with_extension(s, target)) {
        r.fail(make_cx(s, inst.body, at, "witness", "no node with extension " + set_text(target)));
        return r;
      }
      // Replacement* with psi(X, Z) := ex k. (phi(X, k) & Z in k) sends X
      // to the nodes whose extension is the union of X's phi-images.
      if (!node_with_extension(s, derived)) {
        const Formula rep = instantiate({Axiom::ReplacementStar, scott_derived_witness(phi)}).body;
        r.fail(make_cx(s, rep, at, "derived-replacement", "no node with extension " + set_text(derived)));
        return r;
      }
      NodeSet separated;
      std::set_intersection(derived.begin(), derived.end(), target.begin(), target.end(),
                            std::back_inserter(separated));
      if (!node_with_extension(s, separated)) {
        r.fail(make_cx(s, {}, at, "derived-separation", "no node with extension " + set_text(separated)));
        return r;
      }
      if (separated != target) {
        r.fail(make_cx(s, {}, at, "derived-mismatch",
                       "derived " + set_text(separated) + " but Scott's witness is " + set_text(target)));
        return r;
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

std::optional<NodeId> find_successor(const MemStructure& s, NodeId n) {
  NodeSet want = s.members(n);
  want.insert(std::upper_bound(want.begin(), want.end(), n), n);
  if (std::adjacent_find(want.begin(), want.end()) != want.end()) return std::nullopt;
  for (NodeId x = 0; x < s.size(); ++x)
    if (s.members(x) == want && is_eps_ordinal(s, x)) return x;
  return std::nullopt;
}

namespace {

bool pairwise_coextensional(const MemStructure& s, const NodeSet& nodes) {
  for (NodeId a : nodes)
    if (!coextensional(s, a, nodes.front())) return false;
  return true;
}

NodeSet all_copies(const MemStructure& s, NodeId ordinal) {
  NodeSet out;
  for (NodeId m = 0; m < s.size(); ++m)
    if (find_copy_onto(s, ordinal, m)) out.push_back(m);
  return out;
}

}  // namespace

Report check_infinity_step(const MemStructure& s, NodeId n) {
  Report r("infinity-step");
  r.structures = 1;
  r.instances = 1;
  const std::vector<Binding> at{{"n", n}};
  auto fail = [&](std::string clause, std::string detail) {
    r.fail(make_cx(s, {}, at, std::move(clause), std::move(detail)));
    return r;
  };

  const auto copy = find_star_copy(s, n);
  if (!copy) return fail("precondition", "no copy of ordinal " + std::to_string(n));
  const auto succ = find_successor(s, n);
  if (!succ) return fail("precondition", "no successor of ordinal " + std::to_string(n));
  r.realized = 1;

  const NodeId n_star = copy->target;
  const Partition p = coext_classes(s);
  const NodeSet& copies_of_n_star = p.classes[p.class_of[n_star]];
  NodeSet want = s.members(n_star);
  {
    NodeSet merged;
    std::set_union(want.begin(), want.end(), copies_of_n_star.begin(), copies_of_n_star.end(),
                   std::back_inserter(merged));
    want = std::move(merged);
  }
  const auto next = node_with_extension(s, want);
  if (!next) return fail("a", "no node with extension " + set_text(want));

  // G = F + {n} x {x : x =* n*}.
  CopyRelation g{*succ, *next, copy->pairs};
  for (NodeId x : copies_of_n_star) g.pairs.emplace_back(n, x);
  if (!is_star_ordinal(s, *next)) return fail("a", "node " + std::to_string(*next) + " is not an in*-ordinal");
  const Report gr = check_copy_relation(s, g);
  if (!gr.passed) return fail("a", "successor copy relation fails " + gr.counterexample->clause);

  for (NodeId ordinal : {n, *succ}) {
    const NodeSet copies = all_copies(s, ordinal);
    if (!pairwise_coextensional(s, copies))
      return fail("b", "copies " + set_text(copies) + " of " + std::to_string(ordinal) + " are not co-extensional");
  }
  return r;
}

}  // namespace coext
