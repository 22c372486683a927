#include "dfsf/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "dfsf/errors.hpp"
#include "union_find.hpp"

namespace dfsf {

__extension__ typedef unsigned __int128 u128;

DecimalFraction decimal_fraction(double value, int max_digits) {
  if (!(value >= 0.0) || !std::isfinite(value)) throw ConfigError("epsilon must be a finite non-negative number");
  std::array<char, 512> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed);
  if (ec != std::errc()) throw ConfigError("cannot format epsilon");
  const std::string_view text(buf.data(), end - buf.data());
  const auto dot = text.find('.');
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  while (!frac.empty() && frac.back() == '0') frac.remove_suffix(1);
  if (static_cast<int>(frac.size()) > max_digits)
    throw ConfigError("epsilon=" + std::string(text) + " has more than " + std::to_string(max_digits) +
                      " decimal places");
  if (whole.size() > 6) throw ConfigError("epsilon out of range");
  DecimalFraction out;
  for (char c : whole) out.numerator = out.numerator * 10 + static_cast<uint64_t>(c - '0');
  for (char c : frac) {
    out.numerator = out.numerator * 10 + static_cast<uint64_t>(c - '0');
    out.denominator *= 10;
  }
  return out;
}

Moments reference_moments(uint32_t n, double epsilon) {
  if (n < 2) throw ConfigError("reference moments need n >= 2");
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw ConfigError("reference moments need epsilon in [0, 1)");
  const DecimalFraction eps = decimal_fraction(epsilon);
  const u128 a = eps.numerator;
  const u128 d = eps.denominator;
  const u128 n2 = static_cast<u128>(n) * n;
  // eps - eps^2 = (a d - a^2) / d^2 ;  1 / (1 + eps) = d / (d + a)
  const u128 m1 = (a * d - a * a) * n2 / (d * (d + a));
  // eps - eps^2 + eps^3 = (a d^2 - a^2 d + a^3) / d^3
  const u128 m2 = (a * d * d - a * a * d + a * a * a) * n2 / (d * d * (d + a));
  Moments out{n, epsilon, static_cast<uint64_t>(m1), static_cast<uint64_t>(m2)};
  if (epsilon > 0.0 && out.m2 >= pair_count(n))
    throw ConfigError("n=" + std::to_string(n) + " is too small for epsilon=" + std::to_string(epsilon) +
                      ": m2 >= C(n,2)");
  return out;
}

double predicted_stack_at_m1(uint32_t n, double epsilon, uint64_t q_UT) {
  const double nd = static_cast<double>(n);
  return epsilon * epsilon * nd / 2.0 + static_cast<double>(q_UT) / nd;
}

ComponentCensus component_census(const Graph& g, const std::vector<uint8_t>* mask) {
  const uint32_t n = g.vertex_count();
  detail::UnionFind uf(n);
  auto included = [&](Vertex v) { return !mask || (*mask)[v]; };
  for (Vertex u = 0; u < n; ++u) {
    if (!included(u)) continue;
    for (Vertex v : g.neighbors(u))
      if (u < v && included(v)) uf.unite(u, v);
  }

  ComponentCensus census;
  // Roots visited in label order, so the first root of a given size owns the
  // smallest minimum label among components of that size.
  std::vector<uint8_t> seen(n, 0);
  uint32_t best_root = 0;
  uint64_t best_size = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (!included(v)) continue;
    const uint32_t r = uf.find(v);
    if (seen[r]) continue;
    seen[r] = 1;
    const uint64_t sz = uf.size_of(r);
    census.sizes.push_back(sz);
    if (sz > best_size) {
      best_size = sz;
      best_root = r;
    }
  }
  std::sort(census.sizes.begin(), census.sizes.end(), std::greater<>());
  census.giant.assign(n, 0);
  if (best_size > 0) {
    for (Vertex v = 0; v < n; ++v)
      if (included(v) && uf.find(v) == best_root) census.giant[v] = 1;
    census.giant_tie = census.sizes.size() > 1 && census.sizes[1] == census.sizes[0];
  }
  return census;
}

int64_t excess(const Graph& g) {
  const auto census = component_census(g);
  return static_cast<int64_t>(g.edge_count()) - static_cast<int64_t>(g.vertex_count()) +
         static_cast<int64_t>(census.sizes.size());
}

std::string_view to_string(Criticality c) {
  switch (c) {
    case Criticality::Supercritical:
      return "supercritical";
    case Criticality::Subcritical:
      return "subcritical";
    case Criticality::NearCritical:
      break;
  }
  return "near-critical";
}

CriticalityReading residual_criticality(uint64_t t_size, double p, double epsilon) {
  const double product = static_cast<double>(t_size) * p;
  CriticalityReading r;
  r.margin = product - 1.0;
  if (product >= 1.0 + epsilon * epsilon * epsilon)
    r.cls = Criticality::Supercritical;
  else if (product <= 1.0 - epsilon * epsilon * epsilon * epsilon)
    r.cls = Criticality::Subcritical;
  else
    r.cls = Criticality::NearCritical;
  return r;
}

uint64_t longest_forest_path(uint32_t n, std::span<const Edge> forest) {
  detail::UnionFind uf(n);
  std::vector<uint64_t> offsets(static_cast<size_t>(n) + 1, 0);
  for (const auto& [u, v] : forest) {
    if (u >= n || v >= n) throw InvariantViolation("forest: endpoint out of range");
    if (!uf.unite(u, v)) throw InvariantViolation("forest: edge (" + std::to_string(u) + "," + std::to_string(v) +
                                                  ") closes a cycle");
    ++offsets[u + 1];
    ++offsets[v + 1];
  }
  for (uint32_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
  std::vector<Vertex> adj(forest.size() * 2);
  std::vector<uint64_t> fill(offsets.begin(), offsets.end() - 1);
  for (const auto& [u, v] : forest) {
    adj[fill[u]++] = v;
    adj[fill[v]++] = u;
  }

  // Pass 1 fixes a parent order per tree; pass 2 folds heights leaf-upward,
  // combining the two tallest child branches at each vertex.
  constexpr Vertex kNone = UINT32_MAX;
  std::vector<Vertex> parent(n, kNone);
  std::vector<uint8_t> visited(n, 0);
  std::vector<Vertex> order;
  order.reserve(n);
  std::vector<uint64_t> height(n, 0);
  uint64_t best = 0;
  for (Vertex root = 0; root < n; ++root) {
    if (visited[root]) continue;
    order.clear();
    order.push_back(root);
    visited[root] = 1;
    for (size_t i = 0; i < order.size(); ++i) {
      const Vertex v = order[i];
      for (uint64_t j = offsets[v]; j < offsets[v + 1]; ++j) {
        const Vertex w = adj[j];
        if (visited[w]) continue;
        visited[w] = 1;
        parent[w] = v;
        order.push_back(w);
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const Vertex v = *it;
      uint64_t top1 = 0, top2 = 0;
      bool has1 = false, has2 = false;
      for (uint64_t j = offsets[v]; j < offsets[v + 1]; ++j) {
        const Vertex w = adj[j];
        if (w == parent[v]) continue;
        const uint64_t branch = height[w] + 1;
        if (!has1 || branch > top1) {
          top2 = top1;
          has2 = has1;
          top1 = branch;
          has1 = true;
        } else if (!has2 || branch > top2) {
          top2 = branch;
          has2 = true;
        }
      }
      height[v] = top1;
      best = std::max(best, top1 + top2);
    }
  }
  return best;
}

RunReport build_run_report(const RunConfig& config, const Graph& graph, const ComponentCensus& census,
                           const EngineResult& result) {
  RunReport r;
  r.config = config;
  r.warning = config.validate();
  r.p = config.edge_probability();
  const uint32_t n = graph.vertex_count();
  r.edge_count = graph.edge_count();
  r.dfs_query_total = result.dfs_query_total;
  r.completion_queries = result.completion_queries;
  r.max_U = result.max_stack;
  r.max_U_moment = result.max_stack_moment;
  r.longest_forest_path = longest_forest_path(n, result.forest_edges);
  r.excess_total = static_cast<int64_t>(graph.edge_count()) - static_cast<int64_t>(n) +
                   static_cast<int64_t>(census.sizes.size());
  r.giant_size = census.giant_size();
  r.second_size = census.second_size();
  r.component_count = census.sizes.size();
  r.giant_tie = census.giant_tie;
  r.first_giant_entry_m = result.first_giant_entry;

  if (config.epsilon) {
    const double eps = *config.epsilon;
    const Moments mo = reference_moments(n, eps);
    r.m1 = mo.m1;
    r.m2 = mo.m2;
    const TrajectorySample at1 = result.sample_at(mo.m1);
    const TrajectorySample at2 = result.sample_at(mo.m2);
    r.u_at_m1 = at1.size_U;
    r.q_UT_at_m1 = at1.ledger.q_UT;
    r.predicted_u_at_m1 = predicted_stack_at_m1(n, eps, at1.ledger.q_UT);
    r.T_p_at_m1 = static_cast<double>(at1.size_T) * r.p;
    r.T_p_at_m2 = static_cast<double>(at2.size_T) * r.p;
    r.class_at_m1 = std::string(to_string(residual_criticality(at1.size_T, r.p, eps).cls));
    r.class_at_m2 = std::string(to_string(residual_criticality(at2.size_T, r.p, eps).cls));

    auto residual = [&](uint64_t m, std::optional<uint64_t>& giant, std::optional<uint64_t>& second) {
      if (m >= result.dfs_query_total) {
        giant = 0;
        second = 0;
        return;
      }
      const auto* mask = result.residual_at(m);
      if (!mask) return;
      const ComponentCensus c = component_census(graph, mask);
      giant = c.giant_size();
      second = c.second_size();
    };
    residual(mo.m1, r.residual_giant_at_m1, r.residual_second_at_m1);
    residual(mo.m2, r.residual_giant_at_m2, r.residual_second_at_m2);
  }
  return r;
}

namespace {

constexpr std::array<std::string_view, 13> kMetrics = {
    "u_at_m1",     "q_UT_at_m1", "predicted_u_at_m1", "max_U",     "longest_forest_path",
    "excess_total", "giant_size", "second_size",       "T_p_at_m1", "T_p_at_m2",
    "first_giant_entry_m", "dfs_query_total", "edge_count"};

template <typename T>
std::optional<double> as_double(const std::optional<T>& v) {
  if (!v) return std::nullopt;
  return static_cast<double>(*v);
}

bool same_cell(const RunConfig& a, const RunConfig& b) {
  return a.n == b.n && a.epsilon == b.epsilon && a.p == b.p && a.engine == b.engine &&
         a.checkpoint_stride == b.checkpoint_stride;
}

}  // namespace

std::span<const std::string_view> aggregated_metrics() { return kMetrics; }

std::optional<double> metric_value(const RunReport& r, std::string_view name) {
  if (name == "u_at_m1") return as_double(r.u_at_m1);
  if (name == "q_UT_at_m1") return as_double(r.q_UT_at_m1);
  if (name == "predicted_u_at_m1") return r.predicted_u_at_m1;
  if (name == "max_U") return static_cast<double>(r.max_U);
  if (name == "longest_forest_path") return static_cast<double>(r.longest_forest_path);
  if (name == "excess_total") return static_cast<double>(r.excess_total);
  if (name == "giant_size") return static_cast<double>(r.giant_size);
  if (name == "second_size") return static_cast<double>(r.second_size);
  if (name == "T_p_at_m1") return r.T_p_at_m1;
  if (name == "T_p_at_m2") return r.T_p_at_m2;
  if (name == "first_giant_entry_m") return as_double(r.first_giant_entry_m);
  if (name == "dfs_query_total") return static_cast<double>(r.dfs_query_total);
  if (name == "edge_count") return static_cast<double>(r.edge_count);
  throw std::invalid_argument("unknown metric " + std::string(name));
}

const MetricSummary& AggregateReport::metric(std::string_view name) const {
  for (const auto& m : metrics)
    if (m.name == name) return m;
  throw std::out_of_range("aggregate has no metric " + std::string(name));
}

AggregateReport aggregate(std::span<const RunReport> reports) {
  if (reports.empty()) throw ConfigError("aggregate: no reports");
  AggregateReport out;
  out.config = reports.front().config;
  for (const auto& r : reports) {
    if (!same_cell(r.config, out.config)) throw ConfigError("aggregate: reports come from different configurations");
    out.config.seed = std::min(out.config.seed, r.config.seed);
  }
  out.seed_count = reports.size();

  for (std::string_view name : kMetrics) {
    std::vector<double> values;
    for (const auto& r : reports)
      if (auto v = metric_value(r, name)) values.push_back(*v);
    if (values.empty()) continue;
    std::sort(values.begin(), values.end());
    MetricSummary s;
    s.name = std::string(name);
    s.count = values.size();
    s.min = values.front();
    s.max = values.back();
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
      double ss = 0.0;
      for (double v : values) ss += (v - s.mean) * (v - s.mean);
      s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    const double half = 1.96 * s.stddev / std::sqrt(static_cast<double>(values.size()));
    s.ci_low = s.mean - half;
    s.ci_high = s.mean + half;
    out.metrics.push_back(std::move(s));
  }
  return out;
}

}  // namespace dfsf
