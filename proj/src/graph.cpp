#include "dfsf/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "dfsf/errors.hpp"
#include "dfsf/random.hpp"

namespace dfsf {

Graph Graph::from_sorted_edges(uint32_t n, std::span<const Edge> edges) {
  for (size_t i = 0; i < edges.size(); ++i) {
    const auto [u, v] = edges[i];
    if (!(u < v)) throw ConfigError("graph: edge " + std::to_string(i) + " is not of the form u < v");
    if (v >= n) throw ConfigError("graph: edge " + std::to_string(i) + " has an out-of-range endpoint");
    if (i > 0 && !(edges[i - 1] < edges[i]))
      throw ConfigError("graph: edges are not strictly sorted at line " + std::to_string(i + 2));
  }

  Graph g;
  g.n_ = n;
  g.offsets_.assign(static_cast<size_t>(n) + 1, 0);
  for (const auto& [u, v] : edges) {
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  for (uint32_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];
  g.targets_.resize(edges.size() * 2);
  std::vector<uint64_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  // In lexicographic order, all (w, v) with w < v precede every (v, x), so
  // appending in sequence leaves each list sorted.
  for (const auto& [u, v] : edges) {
    g.targets_[fill[u]++] = v;
    g.targets_[fill[v]++] = u;
  }
  return g;
}

Graph Graph::from_edges(uint32_t n, std::vector<Edge> edges) {
  for (auto& e : edges) {
    if (e.first == e.second) throw ConfigError("graph: self-loop");
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw ConfigError("graph: duplicate edge");
  return from_sorted_edges(n, edges);
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_) return false;
  const auto adj = neighbors(u);
  return std::binary_search(adj.begin(), adj.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

uint64_t pair_count(uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

uint64_t pair_index(uint32_t n, Vertex u, Vertex v) {
  // Rows 0..u-1 hold (n-1) + (n-2) + ... + (n-u) pairs.
  const uint64_t before = static_cast<uint64_t>(u) * (2 * static_cast<uint64_t>(n) - u - 1) / 2;
  return before + (v - u - 1);
}

Graph materialize_graph(uint32_t n, double p, uint64_t seed) {
  if (n == 0) throw ConfigError("materialize_graph: n must be at least 1");
  BitStream stream(seed, p);
  const uint64_t total = pair_count(n);
  std::vector<Edge> edges;
  if (p > 0.0) edges.reserve(static_cast<size_t>(std::min<double>(1.2 * p * total + 16, 4.0e9)));

  uint64_t consumed = 0;
  uint32_t row = 0;
  uint64_t offset = 0;  // position within the current row
  while (consumed < total) {
    const SkipOutcome hit = stream.skip_to_next_success(total - consumed);
    if (!hit.success) break;
    uint64_t advance = hit.zeros;
    uint64_t row_len = n - 1 - row;
    while (offset + advance >= row_len) {
      advance -= row_len - offset;
      ++row;
      offset = 0;
      row_len = n - 1 - row;
    }
    offset += advance;
    edges.emplace_back(row, static_cast<Vertex>(row + 1 + offset));
    consumed += hit.zeros + 1;
    ++offset;
    if (offset == row_len) {
      ++row;
      offset = 0;
    }
  }
  return Graph::from_sorted_edges(n, edges);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (Vertex u = 0; u < g.vertex_count(); ++u)
    for (Vertex v : g.neighbors(u))
      if (u < v) out << u << ' ' << v << '\n';
}

Graph read_graph(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("graph file: missing header line");
  std::istringstream header(line);
  uint64_t n = 0, m = 0;
  if (!(header >> n >> m)) throw ConfigError("graph file: header must be \"n m\"");
  if (n == 0 || n > 0xffffffffULL) throw ConfigError("graph file: vertex count out of range");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (uint64_t i = 0; i < m; ++i) {
    if (!std::getline(in, line)) throw ConfigError("graph file: expected " + std::to_string(m) + " edges");
    std::istringstream row(line);
    uint64_t u = 0, v = 0;
    if (!(row >> u >> v) || v >= n) throw ConfigError("graph file: malformed edge on line " + std::to_string(i + 2));
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return Graph::from_sorted_edges(static_cast<uint32_t>(n), edges);
}

void save_graph(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path + " for writing");
  write_graph(out, g);
  if (!out) throw ConfigError("failed writing " + path);
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  return read_graph(in);
}

}  // namespace dfsf
