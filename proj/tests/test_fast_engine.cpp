#include <gtest/gtest.h>

#include <chrono>
#include <numeric>

#include "dfsf/fast_engine.hpp"
#include "dfsf/oracle.hpp"
#include "dfsf/reference_engine.hpp"

using namespace dfsf;

namespace {

FastOptions all_moments(uint64_t upto) {
  FastOptions opt;
  opt.run.checkpoints.resize(upto + 1);
  std::iota(opt.run.checkpoints.begin(), opt.run.checkpoints.end(), 0);
  return opt;
}

}  // namespace

TEST(FastEngine, Triangle) {
  const Graph k3 = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
  const auto r = run_fast(k3, all_moments(3));
  EXPECT_EQ(r.dfs_query_total, 2u);
  EXPECT_EQ(r.completion_queries, 1u);
  EXPECT_EQ(r.max_stack, 3u);
  EXPECT_EQ(r.max_stack_moment, 2u);
  EXPECT_EQ(r.forest_edges, (std::vector<Edge>{{0, 1}, {1, 2}}));
  EXPECT_EQ(r.sample_at(2).size_S, 3u);
}

TEST(FastEngine, SingleEdgeToLastLabel) {
  const Graph g = Graph::from_edges(3, {{0, 2}});
  const auto r = run_fast(g, all_moments(3));
  EXPECT_EQ(r.dfs_query_total, 3u);
  EXPECT_EQ(r.max_stack, 2u);
  EXPECT_EQ(r.forest_edges, (std::vector<Edge>{{0, 2}}));
  const TrajectorySample s2 = r.sample_at(2);
  EXPECT_EQ(s2.size_U, 2u);
  EXPECT_EQ(s2.ledger, (QueryLedger{0, 1, 1}));
}

TEST(FastEngine, EmptyGraphAsksEveryPair) {
  for (uint32_t n : {1u, 2u, 10u, 200u}) {
    const auto r = run_fast(Graph::from_edges(n, {}));
    EXPECT_EQ(r.dfs_query_total, pair_count(n));
    EXPECT_EQ(r.completion_queries, 0u);
    EXPECT_EQ(r.max_stack, 1u);
  }
}

TEST(FastEngine, QueryCountBetweenStackAndT) {
  // Labels 0..3 at m=3 of the four-vertex trace: stack 0,1,3 with frontiers
  // 1, 3 and -1; T = {2}. Only vertex 1 has asked 2.
  TIndex t(4);
  t.erase(0);
  t.erase(1);
  t.erase(3);
  const std::vector<StackFrame> frames = {{0, 1, 0}, {1, 3, 0}, {3, -1, 0}};
  EXPECT_EQ(q_UT_at_checkpoint(frames, t), 1u);
  EXPECT_EQ(q_UT_at_checkpoint({}, t), 0u);
  const std::vector<StackFrame> fresh = {{0, -1, 0}, {1, -1, 0}};
  EXPECT_EQ(q_UT_at_checkpoint(fresh, t), 0u);
}

TEST(FastEngine, MatchesReferenceOnFourVertexTrace) {
  const Graph g = Graph::from_edges(4, {{0, 1}, {1, 3}});
  const auto r = run_fast(g, all_moments(5));
  EXPECT_EQ(r.dfs_query_total, 5u);
  EXPECT_EQ(r.sample_at(3).ledger, (QueryLedger{0, 2, 1}));
  EXPECT_EQ(r.sample_at(4).ledger, (QueryLedger{2, 2, 0}));
  EXPECT_EQ(r.sample_at(5).ledger, (QueryLedger{0, 5, 0}));
}

TEST(CheckpointSchedule, Examples) {
  EXPECT_EQ(checkpoint_schedule(1000, 0.1, kUnboundedStride), (std::vector<uint64_t>{0, 81818, 82727}));
  EXPECT_EQ(checkpoint_schedule(1000, 0.1, 0), (std::vector<uint64_t>{0, 81818, 82727}));
  const auto s = checkpoint_schedule(1000, 0.1, 100000);
  EXPECT_EQ(s, (std::vector<uint64_t>{0, 81818, 82727, 100000, 200000, 300000, 400000}));
  EXPECT_EQ(checkpoint_schedule(1000, 0.0, kUnboundedStride), (std::vector<uint64_t>{0}));
  EXPECT_EQ(checkpoint_schedule(5, std::nullopt, 4), (std::vector<uint64_t>{0, 4, 8}));
}

TEST(FastEngine, ExhaustiveEquivalenceOnFiveVertices) {
  const auto v = equivalence_sweep(5);
  EXPECT_EQ(v.graphs_checked, 1024u);
  EXPECT_TRUE(v.pass()) << (v.pass() ? "" : v.counterexamples.front().difference);
}

TEST(FastEngine, RandomEquivalence) {
  const std::vector<uint32_t> sizes = {6, 16, 64, 256};
  const auto v = random_equivalence(sizes, 60, 7);
  EXPECT_EQ(v.graphs_checked, 240u);
  EXPECT_TRUE(v.pass()) << (v.pass() ? "" : v.counterexamples.front().difference);
}

TEST(FastEngine, InjectedFaultIsDetected) {
  EXPECT_FALSE(equivalence_sweep(3, true).pass());
  const std::vector<uint32_t> sizes = {16};
  EXPECT_FALSE(random_equivalence(sizes, 20, 1, true).pass());
}

TEST(FastEngine, NearLinearScaling) {
  // Work per run is O((n + E) log n); ten times the vertices should not cost
  // more than about fifty times the time.
  auto time_run = [](uint32_t n) {
    const Graph g = materialize_graph(n, 1.1 / n, 5);
    const auto start = std::chrono::steady_clock::now();
    const auto r = run_fast(g);
    const auto stop = std::chrono::steady_clock::now();
    EXPECT_GT(r.dfs_query_total, 0u);
    return std::chrono::duration<double>(stop - start).count();
  };
  time_run(20000);
  const double small = time_run(40000);
  const double large = time_run(400000);
  EXPECT_LT(large, 50 * small + 0.05);
}
