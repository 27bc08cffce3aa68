#include "coext/memstruct.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace coext {

namespace {

bool subset(const NodeSet& a, const NodeSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

bool contains(const NodeSet& s, NodeId v) { return std::binary_search(s.begin(), s.end(), v); }

NodeSet merge(const NodeSet& a, const NodeSet& b) {
  NodeSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Counterexample copy_failure(const MemStructure& s, std::string clause, std::string detail) {
  Counterexample c;
  c.structure = s;
  c.clause = std::move(clause);
  c.detail = std::move(detail);
  return c;
}

}  // namespace

const NodeSet& extension(const MemStructure& s, NodeId x) { return s.members(x); }

Partition coext_classes(const MemStructure& s) {
  Partition p;
  p.class_of.resize(s.size());
  std::map<NodeSet, std::uint32_t> index;
  for (NodeId x = 0; x < s.size(); ++x) {
    auto [it, inserted] = index.try_emplace(s.members(x), static_cast<std::uint32_t>(p.classes.size()));
    if (inserted) p.classes.emplace_back();
    p.class_of[x] = it->second;
    p.classes[it->second].push_back(x);
  }
  return p;
}

bool coextensional(const MemStructure& s, NodeId x, NodeId y) { return s.members(x) == s.members(y); }

bool is_set(const MemStructure& s, const Partition& p, NodeId x) {
  // Every class that meets the extension must lie inside it.
  for (NodeId m : s.members(x))
    for (NodeId other : p.classes[p.class_of[m]])
      if (!s.has_edge(other, x)) return false;
  return true;
}

bool is_set(const MemStructure& s, NodeId x) {
  s.members(x);  // range check
  return is_set(s, coext_classes(s), x);
}

bool memstar(const MemStructure& s, NodeId z, NodeId x) { return s.has_edge(z, x) && is_set(s, x); }

bool at(const MemStructure& s, NodeId x) { return !is_set(s, x); }

Quotient quotient(const MemStructure& s) {
  const Partition p = coext_classes(s);
  Quotient q{MemStructure(p.size()), {}};
  q.collapse.assign(p.class_of.begin(), p.class_of.end());
  for (std::uint32_t c = 0; c < p.size(); ++c) {
    const NodeId rep = p.classes[c].front();
    if (!is_set(s, p, rep)) continue;
    for (NodeId z : s.members(rep)) q.structure.add_edge(p.class_of[z], c);
  }
  if (s.has_labels())
    for (std::uint32_t c = 0; c < p.size(); ++c) q.structure.set_label(c, s.label(p.classes[c].front()));
  return q;
}

NodeSet iterated_union(const MemStructure& s, NodeId x, std::size_t steps) {
  NodeSet cur = s.members(x);
  for (std::size_t j = 0; j < steps && !cur.empty(); ++j) {
    NodeSet next;
    for (NodeId m : cur) next = merge(next, s.members(m));
    cur = std::move(next);
  }
  return cur;
}

bool is_nth_union(const MemStructure& s, NodeId x, std::size_t n, NodeId y) {
  if (n == 0) throw std::invalid_argument("n-th union needs n >= 1");
  return s.members(y) == iterated_union(s, x, n - 1);
}

NodeSet tc(const MemStructure& s, NodeId x) {
  NodeSet acc;
  NodeSet cur = s.members(x);
  // Once a step adds nothing new, no later step can.
  while (!cur.empty()) {
    NodeSet grown = merge(acc, cur);
    if (grown.size() == acc.size()) break;
    acc = std::move(grown);
    NodeSet next;
    for (NodeId m : cur) next = merge(next, s.members(m));
    cur = std::move(next);
  }
  return acc;
}

bool is_pure_set(const MemStructure& s, NodeId x) {
  const Partition p = coext_classes(s);
  if (!is_set(s, p, x)) return false;
  for (NodeId y : tc(s, x))
    if (!is_set(s, p, y)) return false;
  return true;
}

std::vector<std::optional<std::size_t>> ranks(const MemStructure& s) {
  // Kahn-style: a node is ranked once all of its members are.
  std::vector<std::optional<std::size_t>> r(s.size());
  std::vector<std::size_t> pending(s.size());
  std::deque<NodeId> ready;
  for (NodeId x = 0; x < s.size(); ++x) {
    pending[x] = s.members(x).size();
    if (pending[x] == 0) {
      r[x] = 0;
      ready.push_back(x);
    }
  }
  while (!ready.empty()) {
    const NodeId y = ready.front();
    ready.pop_front();
    for (NodeId c : s.containers(y)) {
      if (--pending[c] == 0) {
        std::size_t h = 0;
        for (NodeId m : s.members(c)) h = std::max(h, *r[m] + 1);
        r[c] = h;
        ready.push_back(c);
      }
    }
  }
  return r;
}

bool is_well_founded(const MemStructure& s, NodeId x) {
  s.members(x);
  return ranks(s)[x].has_value();
}

bool is_eps_ordinal(const MemStructure& s, NodeId x) {
  if (!is_well_founded(s, x)) return false;
  const NodeSet& ext = s.members(x);
  for (NodeId m : ext) {
    if (!subset(s.members(m), ext)) return false;
    for (NodeId k : s.members(m))
      if (!subset(s.members(k), s.members(m))) return false;
  }
  for (std::size_t i = 0; i < ext.size(); ++i)
    for (std::size_t j = i + 1; j < ext.size(); ++j)
      if (coextensional(s, ext[i], ext[j])) return false;
  return true;
}

bool is_star_ordinal(const MemStructure& s, NodeId x) {
  if (!is_well_founded(s, x)) return false;
  const Partition p = coext_classes(s);
  if (!is_set(s, p, x)) return false;
  const NodeSet& ext = s.members(x);
  for (NodeId m : ext)
    if (!is_set(s, p, m)) return false;
  // Both x and its members are transitive under in*.  All of them are sets,
  // so in* coincides with in on their extensions.
  for (NodeId m : ext) {
    if (!subset(s.members(m), ext)) return false;
    for (NodeId k : s.members(m))
      if (!subset(s.members(k), s.members(m))) return false;
  }
  return true;
}

Report check_copy_relation(const MemStructure& s, const CopyRelation& f) {
  Report r("copy-relation");
  r.structures = 1;
  r.instances = 1;
  s.members(f.source);
  s.members(f.target);
  auto pair_text = [](std::pair<NodeId, NodeId> p) {
    return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
  };

  for (const auto& p : f.pairs) {
    if (p.first >= s.size() || p.second >= s.size() || !s.has_edge(p.first, f.source) ||
        !s.has_edge(p.second, f.target)) {
      r.fail(copy_failure(s, "range", "pair " + pair_text(p) + " not in source x target members"));
      return r;
    }
  }
  r.realized = f.pairs.empty() ? 0 : 1;

  const Partition part = coext_classes(s);
  auto coext = [&](NodeId a, NodeId b) { return part.class_of[a] == part.class_of[b]; };

  for (const auto& p : f.pairs)
    for (const auto& q : f.pairs)
      if ((p.first == q.first) != coext(p.second, q.second)) {
        r.fail(copy_failure(s, "quasi-injectivity", pair_text(p) + " vs " + pair_text(q)));
        return r;
      }

  for (NodeId a : s.members(f.source))
    if (std::none_of(f.pairs.begin(), f.pairs.end(), [&](const auto& p) { return p.first == a; })) {
      r.fail(copy_failure(s, "quasi-surjectivity", "source member " + std::to_string(a) + " has no image"));
      return r;
    }
  for (NodeId b : s.members(f.target))
    if (std::none_of(f.pairs.begin(), f.pairs.end(), [&](const auto& p) { return p.second == b; })) {
      r.fail(copy_failure(s, "quasi-surjectivity", "target member " + std::to_string(b) + " has no preimage"));
      return r;
    }

  for (const auto& p : f.pairs)
    for (const auto& q : f.pairs) {
      const bool lhs = s.has_edge(p.first, q.first);
      const bool rhs = s.has_edge(p.second, q.second) && is_set(s, part, q.second);
      if (lhs != rhs) {
        r.fail(copy_failure(s, "quasi-isomorphism", pair_text(p) + " vs " + pair_text(q)));
        return r;
      }
    }
  return r;
}

namespace {

// F pairs each source member a with a whole =*-class of target members.
CopyRelation relation_from(NodeId n, NodeId m, const NodeSet& src, const std::vector<NodeSet>& classes,
                           const std::vector<std::size_t>& cls_for_src) {
  CopyRelation f{n, m, {}};
  for (std::size_t i = 0; i < src.size(); ++i)
    for (NodeId b : classes[cls_for_src[i]]) f.pairs.emplace_back(src[i], b);
  return f;
}

constexpr std::size_t kExhaustiveLimit = 6;

}  // namespace

std::optional<CopyRelation> find_copy_onto(const MemStructure& s, NodeId n, NodeId m) {
  if (!is_eps_ordinal(s, n) || !is_star_ordinal(s, m)) return std::nullopt;
  const NodeSet& src = s.members(n);
  if (src.empty() && s.members(m).empty()) return CopyRelation{n, m, {}};

  // Target members grouped by co-extensionality.
  const Partition part = coext_classes(s);
  std::vector<NodeSet> classes;
  std::map<std::uint32_t, std::size_t> slot;
  for (NodeId b : s.members(m)) {
    auto [it, inserted] = slot.try_emplace(part.class_of[b], classes.size());
    if (inserted) classes.emplace_back();
    classes[it->second].push_back(b);
  }
  if (classes.size() != src.size()) return std::nullopt;

  // Successor recipe: the ordinal k is sent to the copies of k, and a copy of
  // k has exactly k co-extensionality classes among its members.
  auto star_value = [&](NodeId b) {
    std::vector<std::uint32_t> seen;
    for (NodeId k : s.members(b)) seen.push_back(part.class_of[k]);
    std::sort(seen.begin(), seen.end());
    return static_cast<std::size_t>(std::unique(seen.begin(), seen.end()) - seen.begin());
  };
  std::vector<std::size_t> chosen(src.size());
  bool recipe = true;
  for (std::size_t i = 0; i < src.size() && recipe; ++i) {
    std::size_t hits = 0;
    for (std::size_t c = 0; c < classes.size(); ++c)
      if (star_value(classes[c].front()) == s.members(src[i]).size()) {
        chosen[i] = c;
        ++hits;
      }
    recipe = hits == 1;
  }
  if (recipe) {
    CopyRelation f = relation_from(n, m, src, classes, chosen);
    if (check_copy_relation(s, f).passed) return f;
  }

  if (src.size() > kExhaustiveLimit) return std::nullopt;
  std::vector<std::size_t> perm(src.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  do {
    CopyRelation f = relation_from(n, m, src, classes, perm);
    if (check_copy_relation(s, f).passed) return f;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

std::optional<CopyRelation> find_star_copy(const MemStructure& s, NodeId n) {
  if (!is_eps_ordinal(s, n)) return std::nullopt;
  if (auto f = find_copy_onto(s, n, n)) return f;
  for (NodeId m = 0; m < s.size(); ++m) {
    if (m == n) continue;
    if (auto f = find_copy_onto(s, n, m)) return f;
  }
  return std::nullopt;
}

std::vector<NodeSet> hierarchy_stages(const MemStructure& s, std::size_t steps) {
  if (steps == 0) throw std::invalid_argument("hierarchy needs at least one step");
  std::vector<NodeSet> stages{NodeSet{}};
  NodeSet closure;
  for (std::size_t j = 0; j < steps; ++j) {
    NodeSet next;
    for (NodeId z = 0; z < s.size(); ++z)
      if (subset(s.members(z), closure)) next.push_back(z);
    closure = merge(closure, next);
    stages.push_back(std::move(next));
  }
  return stages;
}

bool in_hierarchy(const MemStructure& s, NodeId x, std::size_t steps) {
  s.members(x);
  for (const auto& stage : hierarchy_stages(s, steps))
    if (contains(stage, x)) return true;
  return false;
}

bool in_hierarchy(const MemStructure& s, NodeId x) { return in_hierarchy(s, x, std::max<std::size_t>(s.size(), 1)); }

// ---------------------------------------------------------------------------

namespace {
constexpr std::size_t kDenseLimit = 4096;
}

Semantics::Semantics(const MemStructure& s) : s_(&s), partition_(coext_classes(s)) {
  const std::size_t n = s.size();
  is_set_.resize(n);
  for (NodeId x = 0; x < n; ++x) is_set_[x] = coext::is_set(s, partition_, x);

  // A node is impure if it is not a set or a non-set reaches it by a
  // membership path.
  std::vector<char> tainted(n, 0);
  std::deque<NodeId> queue;
  for (NodeId x = 0; x < n; ++x)
    if (!is_set_[x]) queue.push_back(x);
  while (!queue.empty()) {
    const NodeId y = queue.front();
    queue.pop_front();
    for (NodeId c : s.containers(y))
      if (!tainted[c]) {
        tainted[c] = 1;
        queue.push_back(c);
      }
  }
  is_pure_.resize(n);
  for (NodeId x = 0; x < n; ++x) is_pure_[x] = is_set_[x] && !tainted[x];

  if (n <= kDenseLimit) {
    words_ = (n + 63) / 64;
    bits_.assign(words_ * n, 0);
    for (NodeId x = 0; x < n; ++x)
      for (NodeId z : s.members(x)) bits_[x * words_ + z / 64] |= std::uint64_t{1} << (z % 64);
  }
}

bool Semantics::mem(NodeId z, NodeId x) const {
  if (words_) return (bits_[x * words_ + z / 64] >> (z % 64)) & 1;
  return contains(s_->members(x), z);
}

}  // namespace coext
