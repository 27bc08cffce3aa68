// Semantic constructions on membership structures: extensions,
// co-extensionality classes, sethood, starred membership, the extensional
// quotient, iterated unions and transitive closure, purity, ordinals and
// ordinal copying relations, and the power-stage hierarchy.

#ifndef COEXT_MEMSTRUCT_HPP
#define COEXT_MEMSTRUCT_HPP

#include <optional>
#include <vector>

#include "coext/report.hpp"
#include "coext/structure.hpp"

namespace coext {

struct Partition {
  // Class ids are numbered by their lowest node.
  std::vector<std::uint32_t> class_of;
  std::vector<NodeSet> classes;

  std::size_t size() const noexcept { return classes.size(); }
};

const NodeSet& extension(const MemStructure& s, NodeId x);

// Nodes grouped by equal extension.
Partition coext_classes(const MemStructure& s);
bool coextensional(const MemStructure& s, NodeId x, NodeId y);

// extension(x) is a union of co-extensionality classes.
bool is_set(const MemStructure& s, NodeId x);
bool is_set(const MemStructure& s, const Partition& p, NodeId x);
bool memstar(const MemStructure& s, NodeId z, NodeId x);
bool at(const MemStructure& s, NodeId x);

struct Quotient {
  MemStructure structure;
  std::vector<NodeId> collapse;  // node of s -> class node
};

// Nodes are the =*-classes; [z] -> [x] iff z in* x.
Quotient quotient(const MemStructure& s);

// Step 0 is extension(x); step j+1 unions the extensions of step j.
NodeSet iterated_union(const MemStructure& s, NodeId x, std::size_t steps);
// y is an n-th union of x (n >= 1): extension(y) = iterated_union(x, n - 1).
bool is_nth_union(const MemStructure& s, NodeId x, std::size_t n, NodeId y);

// Union of all iterated unions of x.
NodeSet tc(const MemStructure& s, NodeId x);
bool is_pure_set(const MemStructure& s, NodeId x);

// Height in the well-founded part; nullopt for nodes with a cycle in their
// closure (including self-members).
std::vector<std::optional<std::size_t>> ranks(const MemStructure& s);
bool is_well_founded(const MemStructure& s, NodeId x);

bool is_eps_ordinal(const MemStructure& s, NodeId x);
bool is_star_ordinal(const MemStructure& s, NodeId x);

struct CopyRelation {
  NodeId source = 0;  // the in-ordinal n
  NodeId target = 0;  // its candidate copy m
  std::vector<std::pair<NodeId, NodeId>> pairs;
};

// Clauses: "range", "quasi-injectivity", "quasi-surjectivity",
// "quasi-isomorphism".
Report check_copy_relation(const MemStructure& s, const CopyRelation& f);

// First verified copy of the in-ordinal n.  n itself is tried first, then
// every other node by ascending id.
std::optional<CopyRelation> find_star_copy(const MemStructure& s, NodeId n);
// Copy relation from n onto m, if one exists.
std::optional<CopyRelation> find_copy_onto(const MemStructure& s, NodeId n, NodeId m);

// Stage 0 is empty; stage j+1 holds every node whose extension lies inside
// the nodes of stages 0..j.  Returns stages 0..steps.
std::vector<NodeSet> hierarchy_stages(const MemStructure& s, std::size_t steps);
bool in_hierarchy(const MemStructure& s, NodeId x, std::size_t steps);
bool in_hierarchy(const MemStructure& s, NodeId x);

// Precomputed facts about one structure for the evaluator and the
// harness.  Purity is derived by propagating non-sethood along edges, which
// is an independent route from is_pure_set.
class Semantics {
 public:
  explicit Semantics(const MemStructure& s);

  const MemStructure& structure() const noexcept { return *s_; }
  const Partition& partition() const noexcept { return partition_; }
  std::size_t size() const noexcept { return is_set_.size(); }

  bool is_set(NodeId x) const { return is_set_[x]; }
  bool is_pure(NodeId x) const { return is_pure_[x]; }
  bool coext(NodeId a, NodeId b) const { return partition_.class_of[a] == partition_.class_of[b]; }
  bool mem(NodeId z, NodeId x) const;
  bool memstar(NodeId z, NodeId x) const { return is_set_[x] && mem(z, x); }

 private:
  const MemStructure* s_;
  Partition partition_;
  std::vector<char> is_set_;
  std::vector<char> is_pure_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;  // dense membership rows, when small
};

}  // namespace coext

#endif
