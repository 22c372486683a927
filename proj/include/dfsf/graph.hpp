#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dfsf {

using Vertex = uint32_t;
using Edge = std::pair<Vertex, Vertex>;

// Simple undirected graph in compressed sparse row form. Adjacency lists are
// sorted ascending. Immutable once built.
class Graph {
 public:
  Graph() = default;

  // Builds from an edge list. Each edge must satisfy u < v < n and the list
  // must be strictly increasing in lexicographic order; otherwise ConfigError.
  static Graph from_sorted_edges(uint32_t n, std::span<const Edge> edges);

  // Same as above but accepts any order and orientation; duplicates and
  // self-loops are rejected.
  static Graph from_edges(uint32_t n, std::vector<Edge> edges);

  uint32_t vertex_count() const { return n_; }
  uint64_t edge_count() const { return targets_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  uint64_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  bool has_edge(Vertex u, Vertex v) const;

  // Edges (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.offsets_ == b.offsets_ && a.targets_ == b.targets_;
  }

 private:
  uint32_t n_ = 0;
  std::vector<uint64_t> offsets_{0};
  std::vector<Vertex> targets_;
};

// Every pair {u, v} present independently with probability p, drawn by
// geometric skipping over the pair space in lexicographic order.
Graph materialize_graph(uint32_t n, double p, uint64_t seed);

// Index of pair (u, v), u < v, in lexicographic order over C(n, 2) pairs.
uint64_t pair_index(uint32_t n, Vertex u, Vertex v);
uint64_t pair_count(uint64_t n);

// Text format: "n m" then m lines "u v", u < v, lexicographically sorted.
void write_graph(std::ostream& out, const Graph& g);
Graph read_graph(std::istream& in);
void save_graph(const std::string& path, const Graph& g);
Graph load_graph(const std::string& path);

}  // namespace dfsf
