#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dfsf/graph.hpp"
#include "dfsf/reference_engine.hpp"
#include "dfsf/trajectory.hpp"

namespace dfsf {

// All 2^C(n,2) graphs on n <= 5 vertices. Bit i of a mask is the i-th pair in
// lexicographic order (0,1), (0,2), ..., (n-2,n-1).
class SmallGraphEnumeration {
 public:
  static constexpr uint32_t kMaxVertices = 5;

  explicit SmallGraphEnumeration(uint32_t n);

  uint32_t vertex_count() const { return n_; }
  uint64_t size() const { return uint64_t{1} << pair_count(n_); }
  Graph graph(uint64_t mask) const;

 private:
  uint32_t n_;
};

inline constexpr uint32_t kExactPathComponentLimit = 20;

// Longest simple path in edges, by dynamic programming over vertex subsets
// of each component. ConfigError if a component exceeds `component_limit`.
uint64_t exact_longest_path(const Graph& g, uint32_t component_limit = kExactPathComponentLimit);

// Disk-backed memo for exact_longest_path keyed by a hash of the canonical
// graph text. Entries store the graph text as well, so collisions are caught.
class LongestPathCache {
 public:
  explicit LongestPathCache(std::filesystem::path dir);

  uint64_t exact_longest_path(const Graph& g);
  uint64_t hits() const { return hits_; }
  uint64_t misses() const { return misses_; }

 private:
  std::filesystem::path dir_;
  uint64_t hits_ = 0;
  uint64_t misses_ = 0;
};

// FNV-1a over the canonical text encoding.
uint64_t graph_hash(const Graph& g);

struct Counterexample {
  Graph graph;
  EngineResult reference;
  EngineResult fast;
  std::string difference;
};

struct EquivalenceVerdict {
  uint64_t graphs_checked = 0;
  std::vector<Counterexample> counterexamples;
  bool pass() const { return counterexamples.empty(); }
};

// Runs both engines on g with a checkpoint at every moment and reports the
// first statistic on which they disagree, if any.
std::optional<Counterexample> compare_engines(const Graph& g, bool inject_fault = false);

// Every graph on exactly n_max vertices (1 <= n_max <= 5): 2^C(n_max,2) graphs.
EquivalenceVerdict equivalence_sweep(uint32_t n_max, bool inject_fault = false);

// `trials` random graphs per size with p = c/n for c drawn over [0, 4),
// every tenth trial with p uniform over [0, 1).
EquivalenceVerdict random_equivalence(std::span<const uint32_t> sizes, uint32_t trials, uint64_t seed,
                                      bool inject_fault = false);

// Writes <dir>/cx_<index>/graph.txt, reference.json, fast.json.
void write_counterexample_bundle(const std::filesystem::path& dir, size_t index, const Counterexample& cx);

struct DominanceSummary {
  uint64_t checked = 0;
  uint64_t violations = 0;
  uint64_t strict = 0;  // exact longest path strictly above the forest path
};

// Random graphs with 2 <= n <= max_n and p = c/n, c drawn over [0.3, 3).
// Checks exact longest path >= longest DFS forest path >= max stack - 1.
DominanceSummary check_dominance(uint32_t instances, uint32_t max_n, uint64_t seed,
                                 LongestPathCache* cache = nullptr);

// Replays a reference event log up to moment m (inclusive of the query-free
// transitions that follow query m) and classifies the queried pairs by the
// membership at that moment. ConfigError on malformed logs.
QueryLedger ledger_recompute(uint32_t n, const EventLog& log, uint64_t m);

}  // namespace dfsf
