#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "dfsf/graph.hpp"
#include "dfsf/random.hpp"

using namespace dfsf;

TEST(SplitMix64, MatchesPublishedFirstOutput) {
  SplitMix64 sm(0);
  EXPECT_EQ(sm(), 0xe220a8397b1dcdafULL);
}

// Frozen from an independent implementation of splitmix64 seeding + xoshiro256**.
TEST(Xoshiro256, FrozenVectorForSeed42) {
  Xoshiro256 g(42);
  const uint64_t expected[] = {0x15780b2e0c2ec716ULL, 0x6104d9866d113a7eULL, 0xae17533239e499a1ULL,
                               0xecb8ad4703b360a1ULL, 0xfde6dc7fe2ec5e64ULL};
  for (uint64_t e : expected) EXPECT_EQ(g(), e);
}

TEST(Xoshiro256, UniformInHalfOpenUnitInterval) {
  Xoshiro256 g(7);
  for (int i = 0; i < 100000; ++i) {
    const double u = g.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(BitStream, CertainOutcomes) {
  for (uint64_t seed : {0ULL, 1ULL, 99ULL}) {
    BitStream ones(seed, 1.0), zeros(seed, 0.0);
    for (int i = 0; i < 100; ++i) {
      EXPECT_TRUE(ones.next_bit());
      EXPECT_FALSE(zeros.next_bit());
    }
    EXPECT_EQ(ones.cursor(), 100u);
    EXPECT_EQ(zeros.cursor(), 100u);
  }
}

TEST(BitStream, FairCoinMean) {
  BitStream s(12345, 0.5);
  uint64_t ones = 0;
  constexpr int kDraws = 1'000'000;
  for (int i = 0; i < kDraws; ++i) ones += s.next_bit();
  // 4 sigma with sigma = sqrt(0.25 / 1e6) = 0.0005.
  EXPECT_NEAR(static_cast<double>(ones) / kDraws, 0.5, 0.002);
  EXPECT_EQ(s.cursor(), static_cast<uint64_t>(kDraws));
}

TEST(BitStream, SkipEdgeCases) {
  BitStream sure(3, 1.0);
  const auto hit = sure.skip_to_next_success(5);
  EXPECT_TRUE(hit.success);
  EXPECT_EQ(hit.zeros, 0u);
  EXPECT_EQ(sure.cursor(), 1u);

  BitStream never(3, 0.0);
  const auto miss = never.skip_to_next_success(7);
  EXPECT_FALSE(miss.success);
  EXPECT_EQ(never.cursor(), 7u);

  EXPECT_THROW(never.skip_to_next_success(kUnbounded), std::invalid_argument);
  EXPECT_THROW(BitStream(1, 1.5), std::invalid_argument);
}

TEST(BitStream, GeometricMeanOfSkips) {
  constexpr double p = 0.3;
  BitStream s(2024, p);
  constexpr int kDraws = 100000;
  double sum = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    const auto r = s.skip_to_next_success(1'000'000);
    ASSERT_TRUE(r.success);
    sum += static_cast<double>(r.zeros);
  }
  const double mean = (1 - p) / p;
  const double sigma = std::sqrt((1 - p) / (p * p) / kDraws);
  EXPECT_NEAR(sum / kDraws, mean, 3 * sigma);
}

TEST(BitStream, TruncatedGeometricFrequencies) {
  // P(k) = (1-p)^k p for k < limit, P(exhausted) = (1-p)^limit.
  constexpr double p = 0.3;
  constexpr uint64_t limit = 3;
  constexpr int kDraws = 200000;
  std::vector<int> counts(limit + 1, 0);
  for (int i = 0; i < kDraws; ++i) {
    BitStream s(1'000'000 + i, p);
    const auto r = s.skip_to_next_success(limit);
    ++counts[r.success ? r.zeros : limit];
    ASSERT_EQ(s.cursor(), r.success ? r.zeros + 1 : limit);
  }
  for (uint64_t k = 0; k <= limit; ++k) {
    const double prob = k < limit ? std::pow(1 - p, k) * p : std::pow(1 - p, limit);
    const double sigma = std::sqrt(prob * (1 - prob) / kDraws);
    EXPECT_NEAR(static_cast<double>(counts[k]) / kDraws, prob, 4 * sigma) << "k=" << k;
  }
}

TEST(BitStream, BitwiseAndSkippingAgree) {
  for (double p : {0.001, 0.05, 0.3, 0.5, 0.9, 1.0}) {
    for (uint64_t seed : {1ULL, 77ULL}) {
      constexpr uint64_t kLength = 10000;
      BitStream bitwise(seed, p);
      std::vector<uint64_t> a;
      for (uint64_t i = 0; i < kLength; ++i)
        if (bitwise.next_bit()) a.push_back(i);

      BitStream skipping(seed, p);
      std::vector<uint64_t> b;
      // Mix limits so both the success and the exhausted branches are used.
      uint64_t limit_seed = 5;
      while (skipping.cursor() < kLength) {
        limit_seed = limit_seed * 6364136223846793005ULL + 1442695040888963407ULL;
        const uint64_t limit = std::min<uint64_t>(1 + (limit_seed >> 60), kLength - skipping.cursor());
        const uint64_t start = skipping.cursor();
        const auto r = skipping.skip_to_next_success(limit);
        if (r.success) b.push_back(start + r.zeros);
      }
      EXPECT_EQ(a, b) << "p=" << p << " seed=" << seed;
    }
  }
}

TEST(BitStream, Deterministic) {
  BitStream a(555, 0.01), b(555, 0.01);
  for (int i = 0; i < 50000; ++i) ASSERT_EQ(a.next_bit(), b.next_bit());
}

TEST(GeometricFromUniform, Edges) {
  EXPECT_EQ(geometric_from_uniform(0.0, 0.2), 0u);
  EXPECT_EQ(geometric_from_uniform(0.9, 1.0), 0u);
  EXPECT_EQ(geometric_from_uniform(0.5, 0.0), kUnbounded);
  // ln(0.5)/ln(0.5) = 1 exactly: one zero, then a success.
  EXPECT_EQ(geometric_from_uniform(0.5, 0.5), 1u);
}

TEST(MaterializeGraph, CompleteAndEmpty) {
  const Graph k4 = materialize_graph(4, 1.0, 9);
  EXPECT_EQ(k4.edge_count(), 6u);
  EXPECT_EQ(materialize_graph(100, 0.0, 9).edge_count(), 0u);
  for (uint32_t n = 1; n <= 50; ++n) {
    const Graph g = materialize_graph(n, 1.0, n);
    ASSERT_EQ(g.edge_count(), pair_count(n));
    for (Vertex v = 0; v < n; ++v) ASSERT_EQ(g.degree(v), n - 1);
    ASSERT_EQ(materialize_graph(n, 0.0, n).edge_count(), 0u);
  }
}

TEST(MaterializeGraph, EdgeCountWithinFourSigma) {
  constexpr uint32_t n = 100000;
  const double p = 1.1 / n;
  const Graph g = materialize_graph(n, p, 1);
  const double mean = p * static_cast<double>(pair_count(n));
  EXPECT_NEAR(static_cast<double>(g.edge_count()), mean, 4 * std::sqrt(mean));
}

TEST(MaterializeGraph, MatchesBitwiseStreamOverPairSpace) {
  // Pair i in lexicographic order is present iff bit i of the stream is 1.
  for (uint64_t seed : {3ULL, 4ULL}) {
    constexpr uint32_t n = 60;
    const double p = 0.07;
    const Graph g = materialize_graph(n, p, seed);
    BitStream s(seed, p);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) ASSERT_EQ(s.next_bit(), g.has_edge(u, v)) << u << "," << v;
  }
}

TEST(MaterializeGraph, DeterministicAndCanonical) {
  const Graph a = materialize_graph(2000, 3.0 / 2000, 11);
  const Graph b = materialize_graph(2000, 3.0 / 2000, 11);
  EXPECT_EQ(a, b);
  for (Vertex v = 0; v < a.vertex_count(); ++v) {
    const auto adj = a.neighbors(v);
    ASSERT_TRUE(std::is_sorted(adj.begin(), adj.end()));
    for (Vertex w : adj) {
      ASSERT_NE(w, v);
      ASSERT_TRUE(a.has_edge(w, v));
    }
  }
  EXPECT_NE(a, materialize_graph(2000, 3.0 / 2000, 12));
}
