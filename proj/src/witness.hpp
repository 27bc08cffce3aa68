// Reads the witness clause out of an axiom instance body of the form
//   [ante ->] ex w. [set(w) &] all m. (m in w <-> rhs)
// with `in` raw or starred.

#ifndef COEXT_SRC_WITNESS_HPP
#define COEXT_SRC_WITNESS_HPP

#include <algorithm>
#include <iterator>
#include <optional>
#include <vector>

#include "coext/fol.hpp"
#include "coext/eval.hpp"
#include "coext/xlate.hpp"

namespace coext::detail {

struct WitnessShape {
  std::optional<Formula> antecedent;
  VarName witness;
  VarName member;
  bool starred = false;
  Formula rhs;
};

inline std::optional<WitnessShape> witness_shape(const Formula& body) {
  WitnessShape w;
  Formula f = body;
  if (f.kind() == Kind::Implies && f.rhs().kind() == Kind::Exists) {
    w.antecedent = f.lhs();
    f = f.rhs();
  }
  if (f.kind() != Kind::Exists) return std::nullopt;
  w.witness = f.var();
  f = f.body();
  if (f.kind() == Kind::And && f.lhs().kind() == Kind::Atom && f.lhs().pred() == Pred::Set) f = f.rhs();
  if (f.kind() != Kind::Forall) return std::nullopt;
  w.member = f.var();
  f = f.body();
  if (f.kind() != Kind::Iff || f.lhs().kind() != Kind::Atom) return std::nullopt;
  const Formula& mem = f.lhs();
  if (mem.pred() != Pred::In && mem.pred() != Pred::InStar) return std::nullopt;
  if (mem.args()[0] != w.member || mem.args()[1] != w.witness) return std::nullopt;
  w.starred = mem.pred() == Pred::InStar;
  w.rhs = f.rhs();
  return w;
}

// phi(x, y) tabulated over all pairs, row x.
inline std::vector<char> relation_table(const Semantics& sem, const Formula& phi, EvalOptions opts) {
  const CompiledFormula cf(phi, opts);
  const std::size_t n = sem.size();
  std::vector<char> table(n * n, 0);
  std::vector<NodeId> scratch, values(cf.free_vars().size());
  for (NodeId x = 0; x < n; ++x)
    for (NodeId y = 0; y < n; ++y) {
      for (std::size_t i = 0; i < values.size(); ++i) values[i] = cf.free_vars()[i] == "x" ? x : y;
      table[x * n + y] = cf.eval(sem, values, scratch);
    }
  return table;
}

inline bool functional_up_to_coext(const Semantics& sem, const std::vector<char>& table) {
  const std::size_t n = sem.size();
  for (NodeId x = 0; x < n; ++x) {
    std::optional<NodeId> first;
    for (NodeId y = 0; y < n; ++y) {
      if (!table[x * n + y]) continue;
      if (!first) first = y;
      else if (!sem.coext(*first, y)) return false;
    }
  }
  return true;
}

// The sets Scott's schema and its derivation talk about, for one A.
struct ScottSets {
  NodeSet target;               // { y : ex x in A. phi(x, y) }
  std::vector<NodeSet> unions;  // per member X of A, the union of its images
  NodeSet derived;              // nodes whose extension is one of `unions`
};

inline ScottSets scott_sets(const MemStructure& s, const std::vector<char>& table, NodeId a) {
  const std::size_t n = s.size();
  ScottSets out;
  for (NodeId y = 0; y < n; ++y)
    for (NodeId x : s.members(a))
      if (table[x * n + y]) {
        out.target.push_back(y);
        break;
      }
  for (NodeId x : s.members(a)) {
    NodeSet u;
    for (NodeId k = 0; k < n; ++k)
      if (table[x * n + k]) {
        NodeSet merged;
        std::set_union(u.begin(), u.end(), s.members(k).begin(), s.members(k).end(), std::back_inserter(merged));
        u = std::move(merged);
      }
    out.unions.push_back(std::move(u));
  }
  for (NodeId y = 0; y < n; ++y)
    if (std::find(out.unions.begin(), out.unions.end(), s.members(y)) != out.unions.end()) out.derived.push_back(y);
  return out;
}

}  // namespace coext::detail

#endif
