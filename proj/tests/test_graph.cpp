#include <gtest/gtest.h>

#include <sstream>

#include "dfsf/errors.hpp"
#include "dfsf/graph.hpp"

using namespace dfsf;

TEST(Graph, PairIndexIsLexicographicRank) {
  constexpr uint32_t n = 7;
  uint64_t rank = 0;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) EXPECT_EQ(pair_index(n, u, v), rank++);
  EXPECT_EQ(rank, pair_count(n));
}

TEST(Graph, TextFormat) {
  const Graph g = Graph::from_edges(5, {{3, 1}, {0, 4}, {0, 1}});
  std::ostringstream out;
  write_graph(out, g);
  EXPECT_EQ(out.str(), "5 3\n0 1\n0 4\n1 3\n");
}

TEST(Graph, TextRoundTripOnRandomGraphs) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = materialize_graph(50, 0.08, seed);
    std::stringstream buf;
    write_graph(buf, g);
    EXPECT_EQ(read_graph(buf), g);
  }
}

TEST(Graph, RejectsNonCanonicalFiles) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_graph(in);
  };
  EXPECT_THROW(parse("3 2\n1 2\n0 1\n"), ConfigError);  // unsorted
  EXPECT_THROW(parse("3 1\n1 0\n"), ConfigError);       // u > v
  EXPECT_THROW(parse("3 1\n1 1\n"), ConfigError);       // self-loop
  EXPECT_THROW(parse("3 2\n0 1\n0 1\n"), ConfigError);  // duplicate
  EXPECT_THROW(parse("3 1\n0 3\n"), ConfigError);       // out of range
  EXPECT_THROW(parse("3 2\n0 1\n"), ConfigError);       // truncated
  EXPECT_THROW(parse("x\n"), ConfigError);
  EXPECT_NO_THROW(parse("3 2\n0 1\n1 2\n"));
}

TEST(Graph, FromEdgesRejectsLoopsAndDuplicates) {
  EXPECT_THROW(Graph::from_edges(3, {{1, 1}}), ConfigError);
  EXPECT_THROW(Graph::from_edges(3, {{0, 1}, {1, 0}}), ConfigError);
}
