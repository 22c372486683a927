#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dfsf/graph.hpp"

namespace dfsf {

// Query counts classified by the current membership of both endpoints.
struct QueryLedger {
  uint64_t q_ST = 0;
  uint64_t q_SU = 0;  // both endpoints in S or U
  uint64_t q_UT = 0;

  uint64_t total() const { return q_ST + q_SU + q_UT; }
  friend bool operator==(const QueryLedger&, const QueryLedger&) = default;
};

// State of the search at clock m: after the m-th query has been answered and
// every query-free transition that follows it (completions, root selection)
// has been applied, i.e. just before query m+1 is asked.
struct TrajectorySample {
  uint64_t m = 0;
  uint64_t size_S = 0;
  uint64_t size_U = 0;
  uint64_t size_T = 0;
  QueryLedger ledger;

  friend bool operator==(const TrajectorySample&, const TrajectorySample&) = default;
};

// Membership of the undiscovered set at a requested moment.
struct ResidualSnapshot {
  uint64_t m = 0;
  std::vector<uint8_t> in_T;
};

// Statistics shared by both engines.
struct EngineResult {
  uint32_t n = 0;
  std::vector<TrajectorySample> samples;  // one per checkpoint <= dfs_query_total
  std::vector<Edge> forest_edges;         // (parent, child), in discovery order
  uint64_t dfs_query_total = 0;
  uint64_t completion_queries = 0;  // C(n,2) - dfs_query_total
  uint64_t max_stack = 0;
  uint64_t max_stack_moment = 0;
  std::optional<uint64_t> first_giant_entry;
  std::vector<ResidualSnapshot> residuals;

  // Sample at moment m; moments past the end of the search map to the
  // terminal state.
  TrajectorySample sample_at(uint64_t m) const;
  // Residual membership at m, or an empty vector if m was not requested.
  const std::vector<uint8_t>* residual_at(uint64_t m) const;
};

// Options common to both engines.
struct RunOptions {
  std::vector<uint64_t> checkpoints;       // sorted ascending, unique
  std::vector<uint64_t> residual_moments;  // subset of interest; T is copied there
  const std::vector<uint8_t>* giant = nullptr;  // vertex mask for first_giant_entry
};

}  // namespace dfsf
