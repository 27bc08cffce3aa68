// Structure families: exhaustive small digraphs, hereditarily finite
// universes, doppelganger and atom injection, and seeded random structures.

#ifndef COEXT_MODELGEN_HPP
#define COEXT_MODELGEN_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "coext/structure.hpp"

namespace coext {

inline constexpr std::size_t kMaxExhaustiveNodes = 4;

// 2^(n*n).
std::uint64_t structure_count(std::size_t n);

// Bit z*n + x of `mask` is the edge z -> x.
MemStructure structure_from_mask(std::size_t n, std::uint64_t mask);
std::uint64_t mask_of(const MemStructure& s);

// Least mask over all node relabellings.
std::uint64_t canonical_mask(std::size_t n, std::uint64_t mask);

// Calls `fn(index, structure)` for every edge subset on n nodes in mask
// order; with `dedup`, only for masks that are their own canonical form.
void for_each_structure(std::size_t n, bool dedup, const std::function<void(std::uint64_t, const MemStructure&)>& fn);
std::vector<MemStructure> enumerate_all(std::size_t n, bool dedup = false);

// The hereditarily finite sets of rank at most `rank` (rank <= 4).  Node id
// is the Ackermann code, so the members of node c are the set bits of c.
// Labels are set notation for rank <= 3.
MemStructure build_hf(std::size_t rank);

enum class DoppelMode {
  Shallow,  // the copy is a member of nothing
  Deep,     // the copy joins every container of the original
};

struct CopySpec {
  NodeId node;
  std::size_t count;
};

MemStructure add_doppelgangers(const MemStructure& s, const std::vector<CopySpec>& copies,
                               DoppelMode mode = DoppelMode::Shallow);

// Each spec is the extension of a new node.  It must contain a proper,
// nonempty part of some co-extensionality class so the new node is not a
// set; anything else is rejected.
MemStructure add_atoms(const MemStructure& s, const std::vector<NodeSet>& specs);

// std::mt19937_64 seeded with `seed`; edges drawn for z = 0..n-1, then
// x = 0..n-1, present when the top 53 bits of the next draw, as a fraction
// of 2^53, fall below edge_prob.
MemStructure random_structure(std::size_t n, double edge_prob, std::uint64_t seed);
inline constexpr std::size_t kMaxRandomNodes = 16;

}  // namespace coext

#endif
