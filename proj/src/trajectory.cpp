#include "dfsf/trajectory.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dfsf {

TrajectorySample EngineResult::sample_at(uint64_t m) const {
  if (m >= dfs_query_total) {
    TrajectorySample terminal;
    terminal.m = dfs_query_total;
    terminal.size_S = n;
    terminal.ledger.q_SU = dfs_query_total;
    return terminal;
  }
  const auto it = std::lower_bound(samples.begin(), samples.end(), m,
                                   [](const TrajectorySample& s, uint64_t key) { return s.m < key; });
  if (it == samples.end() || it->m != m) throw std::out_of_range("no trajectory sample at moment " + std::to_string(m));
  return *it;
}

const std::vector<uint8_t>* EngineResult::residual_at(uint64_t m) const {
  for (const auto& r : residuals)
    if (r.m == m) return &r.in_T;
  return nullptr;
}

}  // namespace dfsf
