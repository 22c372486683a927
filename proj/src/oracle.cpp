#include "dfsf/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dfsf/diagnostics.hpp"
#include "dfsf/errors.hpp"
#include "dfsf/fast_engine.hpp"
#include "dfsf/random.hpp"
#include "json.hpp"

namespace dfsf {

SmallGraphEnumeration::SmallGraphEnumeration(uint32_t n) : n_(n) {
  if (n == 0 || n > kMaxVertices) throw ConfigError("small graph enumeration supports 1 <= n <= 5");
}

Graph SmallGraphEnumeration::graph(uint64_t mask) const {
  std::vector<Edge> edges;
  uint64_t bit = 0;
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v = u + 1; v < n_; ++v, ++bit)
      if ((mask >> bit) & 1) edges.emplace_back(u, v);
  return Graph::from_sorted_edges(n_, edges);
}

uint64_t exact_longest_path(const Graph& g, uint32_t component_limit) {
  const uint32_t n = g.vertex_count();
  const ComponentCensus census = component_census(g);
  if (!census.sizes.empty() && census.sizes.front() > component_limit)
    throw ConfigError("exact longest path: component of " + std::to_string(census.sizes.front()) +
                      " vertices exceeds the limit of " + std::to_string(component_limit));

  std::vector<uint8_t> done(n, 0);
  std::vector<uint32_t> local(n, 0);
  uint64_t best = 0;
  for (Vertex root = 0; root < n; ++root) {
    if (done[root]) continue;
    std::vector<Vertex> members{root};
    done[root] = 1;
    for (size_t i = 0; i < members.size(); ++i)
      for (Vertex w : g.neighbors(members[i]))
        if (!done[w]) {
          done[w] = 1;
          members.push_back(w);
        }
    const auto c = static_cast<uint32_t>(members.size());
    if (c == 1) continue;
    for (uint32_t i = 0; i < c; ++i) local[members[i]] = i;
    std::vector<uint32_t> adj(c, 0);
    for (uint32_t i = 0; i < c; ++i)
      for (Vertex w : g.neighbors(members[i])) adj[i] |= uint32_t{1} << local[w];

    // ends[mask]: vertices at which some path covering exactly `mask` ends.
    std::vector<uint32_t> ends(size_t{1} << c, 0);
    for (uint32_t i = 0; i < c; ++i) ends[size_t{1} << i] = uint32_t{1} << i;
    for (uint32_t mask = 1; mask < (uint32_t{1} << c); ++mask) {
      uint32_t tails = ends[mask];
      if (!tails) continue;
      best = std::max<uint64_t>(best, std::popcount(mask) - 1);
      while (tails) {
        const int v = std::countr_zero(tails);
        tails &= tails - 1;
        uint32_t step = adj[v] & ~mask;
        while (step) {
          const int w = std::countr_zero(step);
          step &= step - 1;
          ends[mask | (uint32_t{1} << w)] |= uint32_t{1} << w;
        }
      }
    }
  }
  return best;
}

uint64_t graph_hash(const Graph& g) {
  std::ostringstream text;
  write_graph(text, g);
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text.str()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

LongestPathCache::LongestPathCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

uint64_t LongestPathCache::exact_longest_path(const Graph& g) {
  std::ostringstream text;
  write_graph(text, g);
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.lp", static_cast<unsigned long long>(graph_hash(g)));
  const auto path = dir_ / name;
  if (std::ifstream in(path); in) {
    uint64_t value = 0;
    std::string line;
    if (in >> value && std::getline(in, line)) {
      std::ostringstream rest;
      rest << in.rdbuf();
      if (rest.str() == text.str()) {
        ++hits_;
        return value;
      }
    }
  }
  ++misses_;
  const uint64_t value = dfsf::exact_longest_path(g);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << value << '\n' << text.str();
  }
  std::filesystem::rename(tmp, path);
  return value;
}

namespace {

std::vector<Edge> sorted_edges(std::vector<Edge> edges) {
  std::sort(edges.begin(), edges.end());
  return edges;
}

std::string describe_sample(const TrajectorySample& s) {
  return "(m=" + std::to_string(s.m) + " S=" + std::to_string(s.size_S) + " U=" + std::to_string(s.size_U) +
         " T=" + std::to_string(s.size_T) + " qST=" + std::to_string(s.ledger.q_ST) +
         " qSU=" + std::to_string(s.ledger.q_SU) + " qUT=" + std::to_string(s.ledger.q_UT) + ")";
}

std::string first_difference(const EngineResult& ref, const EngineResult& fast) {
  if (ref.dfs_query_total != fast.dfs_query_total)
    return "dfs_query_total " + std::to_string(ref.dfs_query_total) + " vs " + std::to_string(fast.dfs_query_total);
  if (ref.max_stack != fast.max_stack)
    return "max_U " + std::to_string(ref.max_stack) + " vs " + std::to_string(fast.max_stack);
  if (ref.max_stack_moment != fast.max_stack_moment)
    return "max_U moment " + std::to_string(ref.max_stack_moment) + " vs " + std::to_string(fast.max_stack_moment);
  if (ref.first_giant_entry != fast.first_giant_entry) return "first giant entry differs";
  const size_t common = std::min(ref.samples.size(), fast.samples.size());
  for (size_t i = 0; i < common; ++i)
    if (!(ref.samples[i] == fast.samples[i]))
      return "trajectory " + describe_sample(ref.samples[i]) + " vs " + describe_sample(fast.samples[i]);
  if (ref.samples.size() != fast.samples.size())
    return "trajectory length " + std::to_string(ref.samples.size()) + " vs " + std::to_string(fast.samples.size());
  if (sorted_edges(ref.forest_edges) != sorted_edges(fast.forest_edges)) return "forest edge sets differ";
  return {};
}

}  // namespace

std::optional<Counterexample> compare_engines(const Graph& g, bool inject_fault) {
  const uint32_t n = g.vertex_count();
  const ComponentCensus census = component_census(g);
  RunOptions run;
  run.checkpoints.resize(pair_count(n) + 1);
  for (uint64_t i = 0; i < run.checkpoints.size(); ++i) run.checkpoints[i] = i;
  run.giant = &census.giant;

  GraphOracle oracle(g);
  ReferenceOptions ref_options;
  ref_options.run = run;
  EngineResult reference = run_reference(n, oracle, ref_options).result;
  FastOptions fast_options;
  fast_options.run = run;
  fast_options.inject_fault = inject_fault;
  EngineResult fast = run_fast(g, fast_options);

  std::string diff = first_difference(reference, fast);
  if (diff.empty()) return std::nullopt;
  return Counterexample{g, std::move(reference), std::move(fast), std::move(diff)};
}

EquivalenceVerdict equivalence_sweep(uint32_t n_max, bool inject_fault) {
  if (n_max > SmallGraphEnumeration::kMaxVertices) throw ConfigError("equivalence sweep: n_max must be <= 5");
  EquivalenceVerdict verdict;
  const SmallGraphEnumeration all(n_max);
  for (uint64_t mask = 0; mask < all.size(); ++mask) {
    ++verdict.graphs_checked;
    if (auto cx = compare_engines(all.graph(mask), inject_fault)) verdict.counterexamples.push_back(std::move(*cx));
  }
  return verdict;
}

EquivalenceVerdict random_equivalence(std::span<const uint32_t> sizes, uint32_t trials, uint64_t seed,
                                      bool inject_fault) {
  EquivalenceVerdict verdict;
  Xoshiro256 params(seed);
  for (uint32_t n : sizes) {
    for (uint32_t t = 0; t < trials; ++t) {
      double p = (t % 10 == 9) ? params.uniform() : 4.0 * params.uniform() / n;
      p = std::min(p, 1.0);
      const Graph g = materialize_graph(n, p, params());
      ++verdict.graphs_checked;
      if (auto cx = compare_engines(g, inject_fault)) verdict.counterexamples.push_back(std::move(*cx));
    }
  }
  return verdict;
}

namespace {

nlohmann::ordered_json engine_json(const EngineResult& r) {
  nlohmann::ordered_json j;
  j["dfs_query_total"] = r.dfs_query_total;
  j["max_U"] = r.max_stack;
  j["max_U_moment"] = r.max_stack_moment;
  j["first_giant_entry_m"] = r.first_giant_entry ? nlohmann::ordered_json(*r.first_giant_entry) : nullptr;
  auto& forest = j["forest_edges"] = nlohmann::ordered_json::array();
  for (const auto& [u, v] : r.forest_edges) forest.push_back({u, v});
  auto& samples = j["trajectory"] = nlohmann::ordered_json::array();
  for (const auto& s : r.samples)
    samples.push_back({s.m, s.size_S, s.size_U, s.size_T, s.ledger.q_ST, s.ledger.q_SU, s.ledger.q_UT});
  return j;
}

}  // namespace

void write_counterexample_bundle(const std::filesystem::path& dir, size_t index, const Counterexample& cx) {
  const auto where = dir / ("cx_" + std::to_string(index));
  std::filesystem::create_directories(where);
  save_graph((where / "graph.txt").string(), cx.graph);
  std::ofstream(where / "reference.json") << engine_json(cx.reference).dump(2) << '\n';
  std::ofstream(where / "fast.json") << engine_json(cx.fast).dump(2) << '\n';
  std::ofstream(where / "difference.txt") << cx.difference << '\n';
}

DominanceSummary check_dominance(uint32_t instances, uint32_t max_n, uint64_t seed, LongestPathCache* cache) {
  if (max_n < 2 || max_n > kExactPathComponentLimit) throw ConfigError("dominance: max_n must lie in [2, 20]");
  DominanceSummary out;
  Xoshiro256 params(seed);
  for (uint32_t i = 0; i < instances; ++i) {
    const uint32_t n = 2 + static_cast<uint32_t>(params() % (max_n - 1));
    const double p = std::min(1.0, (0.3 + 2.7 * params.uniform()) / n);
    const Graph g = materialize_graph(n, p, params());
    const EngineResult dfs = run_fast(g);
    const uint64_t forest = longest_forest_path(n, dfs.forest_edges);
    const uint64_t exact = cache ? cache->exact_longest_path(g) : exact_longest_path(g);
    ++out.checked;
    if (exact < forest || forest + 1 < dfs.max_stack) ++out.violations;
    if (exact > forest) ++out.strict;
  }
  return out;
}

QueryLedger ledger_recompute(uint32_t n, const EventLog& log, uint64_t m) {
  auto reject = [](const std::string& why) { throw ConfigError("malformed event log: " + why); };
  const uint64_t last = log.empty() ? 0 : log.back().m;
  if (m > last) reject("moment " + std::to_string(m) + " beyond the end of the log");

  std::vector<Membership> where(n, Membership::T);
  std::vector<Vertex> stack;
  std::vector<Edge> asked;
  std::vector<std::vector<Vertex>> asked_by(n);
  uint64_t clock = 0;
  bool root_pending = false;
  const Event* previous = nullptr;

  for (const Event& e : log) {
    if (e.m > m) break;
    if (e.a >= n || (e.kind == EventKind::QueryAsked && e.b >= n)) reject("vertex out of range");
    if (e.m < clock) reject("moments are not monotone");
    switch (e.kind) {
      case EventKind::QueryAsked: {
        if (e.m != clock + 1) reject("query clock skips");
        if (stack.empty() || stack.back() != e.a) reject("query not issued by the stack top");
        if (where[e.b] != Membership::T) reject("query target not in T");
        auto& mine = asked_by[e.a];
        if (std::find(mine.begin(), mine.end(), e.b) != mine.end()) reject("pair queried twice");
        mine.push_back(e.b);
        asked_by[e.b].push_back(e.a);
        asked.emplace_back(e.a, e.b);
        clock = e.m;
        break;
      }
      case EventKind::RootSelected:
        if (!stack.empty()) reject("root selected with a nonempty stack");
        if (where[e.a] != Membership::T) reject("root not in T");
        root_pending = true;
        break;
      case EventKind::VertexPushed: {
        if (where[e.a] != Membership::T) reject("pushed vertex not in T");
        const bool via_query = previous && previous->kind == EventKind::QueryAsked && previous->answer &&
                               previous->b == e.a;
        const bool via_root = root_pending && previous && previous->kind == EventKind::RootSelected &&
                              previous->a == e.a;
        if (!via_query && !via_root) reject("push without a positive query or root selection");
        root_pending = false;
        where[e.a] = Membership::U;
        stack.push_back(e.a);
        break;
      }
      case EventKind::VertexCompleted:
        if (stack.empty() || stack.back() != e.a) reject("completed vertex is not the stack top");
        stack.pop_back();
        where[e.a] = Membership::S;
        break;
    }
    previous = &e;
  }
  if (clock != m) reject("no query recorded at moment " + std::to_string(m));

  QueryLedger ledger;
  for (const auto& [u, v] : asked) {
    const Membership a = where[u], b = where[v];
    if (a == Membership::T && b == Membership::T) reject("queried pair inside T");
    if (a == Membership::T || b == Membership::T) {
      ((a == Membership::S || b == Membership::S) ? ledger.q_ST : ledger.q_UT) += 1;
    } else {
      ledger.q_SU += 1;
    }
  }
  return ledger;
}

}  // namespace dfsf
