#include <algorithm>
#include <thread>

#include "coext/verify.hpp"

namespace coext {

namespace {

// Work items are numbered globally; shard k takes a contiguous block and the
// shard reports are merged in block order, so the first counterexample is
// the same for any number of jobs.
template <class Item>
Report sharded(std::string name, std::uint64_t total, std::size_t jobs, const Item& item) {
  jobs = std::max<std::size_t>(1, std::min<std::uint64_t>(jobs, std::max<std::uint64_t>(total, 1)));
  std::vector<Report> parts(jobs, Report(name));
  auto work = [&](std::size_t k) {
    const std::uint64_t begin = total * k / jobs;
    const std::uint64_t end = total * (k + 1) / jobs;
    for (std::uint64_t i = begin; i < end; ++i) item(i, parts[k]);
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < jobs; ++k) pool.emplace_back(work, k);
    for (auto& t : pool) t.join();
  }
  Report merged(std::move(name));
  for (const auto& p : parts) merged.absorb(p);
  return merged;
}

}  // namespace

Report run_exhaustive(std::string name, std::size_t max_nodes, const StructureCheck& check, std::size_t jobs,
                      const std::function<bool(const MemStructure&)>& filter) {
  if (max_nodes < 1 || max_nodes > kMaxExhaustiveNodes)
    throw std::out_of_range("exhaustive range must be 1.." + std::to_string(kMaxExhaustiveNodes));
  std::vector<std::uint64_t> offsets{0};
  for (std::size_t n = 1; n <= max_nodes; ++n) offsets.push_back(offsets.back() + structure_count(n));

  return sharded(std::move(name), offsets.back(), jobs, [&](std::uint64_t i, Report& out) {
    const std::size_t n = static_cast<std::size_t>(std::upper_bound(offsets.begin(), offsets.end(), i) - offsets.begin());
    const MemStructure s = structure_from_mask(n, i - offsets[n - 1]);
    if (filter && !filter(s)) return;
    out.absorb(check(s));
  });
}

Report run_all(std::string name, const std::vector<MemStructure>& family, const StructureCheck& check,
               std::size_t jobs) {
  return sharded(std::move(name), family.size(), jobs,
                 [&](std::uint64_t i, Report& out) { out.absorb(check(family[static_cast<std::size_t>(i)])); });
}

}  // namespace coext
