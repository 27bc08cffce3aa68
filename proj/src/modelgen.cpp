#include "coext/modelgen.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "coext/memstruct.hpp"

namespace coext {

std::uint64_t structure_count(std::size_t n) {
  if (n > kMaxExhaustiveNodes) throw std::out_of_range("exhaustive enumeration supports 1.." + std::to_string(kMaxExhaustiveNodes) + " nodes");
  return std::uint64_t{1} << (n * n);
}

MemStructure structure_from_mask(std::size_t n, std::uint64_t mask) {
  MemStructure s(n);
  for (NodeId z = 0; z < n; ++z)
    for (NodeId x = 0; x < n; ++x)
      if ((mask >> (z * n + x)) & 1) s.add_edge(z, x);
  return s;
}

std::uint64_t mask_of(const MemStructure& s) {
  const std::size_t n = s.size();
  if (n * n > 64) throw std::out_of_range("structure too large for a mask");
  std::uint64_t mask = 0;
  for (const auto& e : s.edges()) mask |= std::uint64_t{1} << (e.member * n + e.container);
  return mask;
}

std::uint64_t canonical_mask(std::size_t n, std::uint64_t mask) {
  std::vector<NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = mask;
  do {
    std::uint64_t m = 0;
    for (std::size_t z = 0; z < n; ++z)
      for (std::size_t x = 0; x < n; ++x)
        if ((mask >> (z * n + x)) & 1) m |= std::uint64_t{1} << (perm[z] * n + perm[x]);
    best = std::min(best, m);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

void for_each_structure(std::size_t n, bool dedup, const std::function<void(std::uint64_t, const MemStructure&)>& fn) {
  if (n < 1) throw std::out_of_range("exhaustive enumeration needs at least one node");
  const std::uint64_t total = structure_count(n);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (dedup && canonical_mask(n, mask) != mask) continue;
    fn(mask, structure_from_mask(n, mask));
  }
}

std::vector<MemStructure> enumerate_all(std::size_t n, bool dedup) {
  std::vector<MemStructure> out;
  for_each_structure(n, dedup, [&](std::uint64_t, const MemStructure& s) { out.push_back(s); });
  return out;
}

namespace {

std::string hf_label(std::uint32_t code, std::vector<std::string>& memo) {
  if (!memo[code].empty()) return memo[code];
  std::string out = "{";
  bool first = true;
  for (std::uint32_t i = 0; (code >> i) != 0; ++i)
    if ((code >> i) & 1) {
      if (!first) out += ",";
      out += hf_label(i, memo);
      first = false;
    }
  out += "}";
  return memo[code] = out;
}

}  // namespace

MemStructure build_hf(std::size_t rank) {
  if (rank > 4) throw std::out_of_range("build_hf supports rank <= 4");
  std::size_t count = 1;
  for (std::size_t r = 0; r < rank; ++r) count = std::size_t{1} << count;
  MemStructure s(count);
  for (std::uint32_t c = 0; c < count; ++c)
    for (std::uint32_t i = 0; i < 32 && (c >> i) != 0; ++i)
      if ((c >> i) & 1) s.add_edge(i, c);
  if (rank <= 3) {
    std::vector<std::string> memo(count);
    for (std::uint32_t c = 0; c < count; ++c) s.set_label(c, hf_label(c, memo));
  }
  return s;
}

MemStructure add_doppelgangers(const MemStructure& s, const std::vector<CopySpec>& copies, DoppelMode mode) {
  MemStructure out = s;
  for (const auto& spec : copies) {
    const NodeSet& ext = s.members(spec.node);
    const NodeSet& holders = s.containers(spec.node);
    for (std::size_t k = 0; k < spec.count; ++k) {
      std::string label;
      if (s.has_labels() && !s.label(spec.node).empty()) label = s.label(spec.node) + std::string(k + 1, '\'');
      const NodeId copy = out.add_node(std::move(label));
      for (NodeId m : ext) out.add_edge(m, copy);
      if (mode == DoppelMode::Deep)
        for (NodeId c : holders) out.add_edge(copy, c);
    }
  }
  return out;
}

MemStructure add_atoms(const MemStructure& s, const std::vector<NodeSet>& specs) {
  const Partition p = coext_classes(s);
  MemStructure out = s;
  for (const auto& raw : specs) {
    NodeSet spec = raw;
    std::sort(spec.begin(), spec.end());
    spec.erase(std::unique(spec.begin(), spec.end()), spec.end());
    for (NodeId m : spec) s.members(m);  // range check

    bool partial = false;
    for (NodeId m : spec) {
      const NodeSet& cls = p.classes[p.class_of[m]];
      const auto hit = std::count_if(cls.begin(), cls.end(),
                                     [&](NodeId v) { return std::binary_search(spec.begin(), spec.end(), v); });
      if (static_cast<std::size_t>(hit) < cls.size()) partial = true;
    }
    if (!partial)
      throw std::invalid_argument("atom spec is a union of co-extensionality classes and would be a set");

    std::string label;
    if (s.has_labels()) label = "atom" + std::to_string(out.size());
    const NodeId atom = out.add_node(std::move(label));
    for (NodeId m : spec) out.add_edge(m, atom);
  }
  return out;
}

MemStructure random_structure(std::size_t n, double edge_prob, std::uint64_t seed) {
  if (n > kMaxRandomNodes) throw std::out_of_range("random structures support up to 16 nodes");
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) throw std::invalid_argument("edge probability must be in [0, 1]");
  std::mt19937_64 rng(seed);
  MemStructure s(n);
  for (NodeId z = 0; z < n; ++z)
    for (NodeId x = 0; x < n; ++x) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (u < edge_prob) s.add_edge(z, x);
    }
  return s;
}

}  // namespace coext
