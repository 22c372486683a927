#include "dfsf/fast_engine.hpp"

#include <algorithm>
#include <string>

#include "dfsf/diagnostics.hpp"
#include "dfsf/errors.hpp"

namespace dfsf {

uint64_t q_UT_at_checkpoint(std::span<const StackFrame> frames, const TIndex& undiscovered) {
  uint64_t total = 0;
  for (const StackFrame& f : frames) total += undiscovered.count_leq(f.frontier);
  return total;
}

EngineResult run_fast(const Graph& graph, const FastOptions& options) {
  const uint32_t n = graph.vertex_count();
  if (n == 0) throw ConfigError("fast engine: empty graph");
  const auto& checkpoints = options.run.checkpoints;
  const auto& residual_moments = options.run.residual_moments;
  const std::vector<uint8_t>* giant = options.run.giant;

  EngineResult res;
  res.n = n;
  TIndex undiscovered(n);
  std::vector<StackFrame> frames;
  uint64_t size_S = 0;
  uint64_t m = 0;
  size_t next_checkpoint = 0;
  bool fault_pending = options.inject_fault;

  // Record every checkpoint c in [m, m + k): the state after c - m of the
  // next k queries, none of which changes the partition.
  auto emit_samples = [&](uint64_t k, bool inclusive_end) {
    const uint64_t end = m + k;
    auto due = [&](uint64_t c) { return inclusive_end ? c <= end : c < end; };
    if (next_checkpoint < checkpoints.size() && due(checkpoints[next_checkpoint])) {
      const uint64_t base_UT = q_UT_at_checkpoint(frames, undiscovered);
      const uint64_t size_T = undiscovered.size();
      while (next_checkpoint < checkpoints.size() && due(checkpoints[next_checkpoint])) {
        const uint64_t c = checkpoints[next_checkpoint++];
        if (c < m) continue;
        TrajectorySample s{c, size_S, frames.size(), size_T, {}};
        s.ledger.q_ST = size_S * size_T;
        s.ledger.q_UT = base_UT + (c - m);
        if (s.ledger.q_ST + s.ledger.q_UT > c)
          throw InvariantViolation("fast engine: ledger exceeds clock at m=" + std::to_string(c));
        s.ledger.q_SU = c - s.ledger.q_ST - s.ledger.q_UT;
        res.samples.push_back(s);
      }
    }
    for (uint64_t r : residual_moments) {
      if (r < m || !due(r) || res.residual_at(r)) continue;
      res.residuals.push_back({r, undiscovered.presence()});
    }
  };

  auto push = [&](Vertex v) {
    undiscovered.erase(v);
    frames.push_back({v, -1, 0});
    if (frames.size() > res.max_stack) {
      res.max_stack = frames.size();
      res.max_stack_moment = m;
    }
    if (giant && !res.first_giant_entry && (*giant)[v]) res.first_giant_entry = m;
  };

  while (true) {
    if (frames.empty()) {
      if (undiscovered.size() == 0) break;
      push(undiscovered.select(0));
      continue;
    }

    StackFrame& top = frames.back();
    const auto adj = graph.neighbors(top.vertex);
    while (top.cursor < adj.size() &&
           (static_cast<int64_t>(adj[top.cursor]) <= top.frontier || !undiscovered.contains(adj[top.cursor])))
      ++top.cursor;

    const uint64_t below = undiscovered.count_leq(top.frontier);
    if (top.cursor < adj.size()) {
      const Vertex w = adj[top.cursor];
      uint64_t k = undiscovered.count_leq(w) - below;
      if (fault_pending) {
        ++k;
        fault_pending = false;
      }
      emit_samples(k, false);
      m += k;
      top.frontier = w;
      ++top.cursor;
      res.forest_edges.emplace_back(top.vertex, w);
      push(w);  // invalidates `top`
    } else {
      const uint64_t k = undiscovered.size() - below;
      emit_samples(k, false);
      m += k;
      frames.pop_back();
      ++size_S;
    }
  }
  emit_samples(0, true);

  res.dfs_query_total = m;
  res.completion_queries = pair_count(n) - m;
  return res;
}

std::vector<uint64_t> checkpoint_schedule(uint32_t n, std::optional<double> epsilon, uint64_t stride) {
  const uint64_t limit = pair_count(n);
  std::vector<uint64_t> out{0};
  if (stride != 0 && stride != kUnboundedStride)
    for (uint64_t c = stride; c <= limit; c += stride) out.push_back(c);
  if (epsilon) {
    const Moments mo = reference_moments(n, *epsilon);
    if (mo.m1 <= limit) out.push_back(mo.m1);
    if (mo.m2 <= limit) out.push_back(mo.m2);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace dfsf
