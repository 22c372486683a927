#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dfsf/graph.hpp"
#include "dfsf/tindex.hpp"
#include "dfsf/trajectory.hpp"

namespace dfsf {

// One vertex on the stack. `frontier` is the largest label this vertex has
// queried (-1 before its first query). Because T only shrinks, the vertices
// of the current T it has queried are exactly those with label <= frontier.
inline constexpr uint64_t kUnboundedStride = UINT64_MAX;

struct StackFrame {
  Vertex vertex = 0;
  int64_t frontier = -1;
  uint64_t cursor = 0;  // position in the sorted adjacency list
};

struct FastOptions {
  RunOptions run;
  // Fault injection for the equivalence harness: adds one phantom query to
  // the first positive discovery.
  bool inject_fault = false;
};

// Replays the search over a materialized graph in O((n + E) log n). Every
// statistic matches run_reference on the same graph.
EngineResult run_fast(const Graph& graph, const FastOptions& options = {});

// Queries between the stack and T: the sum over frames of the number of T
// labels at or below the frame's frontier.
uint64_t q_UT_at_checkpoint(std::span<const StackFrame> frames, const TIndex& undiscovered);

// {0, stride, 2 stride, ...} together with the reference moments when epsilon
// is known, clipped to C(n,2). stride = 0 means no periodic checkpoints.
std::vector<uint64_t> checkpoint_schedule(uint32_t n, std::optional<double> epsilon, uint64_t stride);

}  // namespace dfsf
