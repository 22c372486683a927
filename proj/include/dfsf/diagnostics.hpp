#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dfsf/config.hpp"
#include "dfsf/graph.hpp"
#include "dfsf/trajectory.hpp"

namespace dfsf {

// Reference clock values
//   m1 = (eps - eps^2) n^2 / (1 + eps),  m2 = (eps - eps^2 + eps^3) n^2 / (1 + eps),
// evaluated exactly over the rationals and floored.
struct Moments {
  uint32_t n = 0;
  double epsilon = 0.0;
  uint64_t m1 = 0;
  uint64_t m2 = 0;
};

// epsilon is read as the decimal it prints as (shortest round-trip form), so
// 0.1 means exactly 1/10. At most six decimal places are accepted.
// ConfigError when n < 2, epsilon outside [0, 1), or m2 >= C(n, 2).
Moments reference_moments(uint32_t n, double epsilon);

// Exact decimal reading of epsilon as numerator / 10^digits.
struct DecimalFraction {
  uint64_t numerator = 0;
  uint64_t denominator = 1;
};
DecimalFraction decimal_fraction(double value, int max_digits = 6);

// eps^2 n / 2 + q_UT / n.
double predicted_stack_at_m1(uint32_t n, double epsilon, uint64_t q_UT);

// |E| - |V| + #components.
int64_t excess(const Graph& g);

struct ComponentCensus {
  std::vector<uint64_t> sizes;  // descending
  std::vector<uint8_t> giant;   // vertex mask of the largest component
  bool giant_tie = false;       // another component has the same size
  uint64_t giant_size() const { return sizes.empty() ? 0 : sizes[0]; }
  uint64_t second_size() const { return sizes.size() < 2 ? 0 : sizes[1]; }
};

// Components of g, or of the subgraph induced by `mask` when given. The giant
// is the largest component, ties broken by the smallest minimum label.
ComponentCensus component_census(const Graph& g, const std::vector<uint8_t>* mask = nullptr);

enum class Criticality { Supercritical, NearCritical, Subcritical };
std::string_view to_string(Criticality c);

struct CriticalityReading {
  Criticality cls = Criticality::NearCritical;
  double margin = 0.0;  // t_size * p - 1
};

// Supercritical when t_size p >= 1 + eps^3, subcritical when <= 1 - eps^4.
CriticalityReading residual_criticality(uint64_t t_size, double p, double epsilon);

// Longest path (in edges) over the trees of a forest on n vertices.
// InvariantViolation if the edges contain a cycle.
uint64_t longest_forest_path(uint32_t n, std::span<const Edge> forest);

struct RunReport {
  RunConfig config;
  double p = 0.0;
  uint64_t edge_count = 0;
  std::optional<uint64_t> m1;
  std::optional<uint64_t> m2;
  uint64_t dfs_query_total = 0;
  uint64_t completion_queries = 0;
  std::optional<uint64_t> u_at_m1;
  std::optional<uint64_t> q_UT_at_m1;
  std::optional<double> predicted_u_at_m1;
  uint64_t max_U = 0;
  uint64_t max_U_moment = 0;
  uint64_t longest_forest_path = 0;
  int64_t excess_total = 0;
  uint64_t giant_size = 0;
  uint64_t second_size = 0;
  uint64_t component_count = 0;
  bool giant_tie = false;
  std::optional<double> T_p_at_m1;
  std::optional<double> T_p_at_m2;
  std::optional<std::string> class_at_m1;
  std::optional<std::string> class_at_m2;
  std::optional<uint64_t> residual_giant_at_m1;
  std::optional<uint64_t> residual_second_at_m1;
  std::optional<uint64_t> residual_giant_at_m2;
  std::optional<uint64_t> residual_second_at_m2;
  std::optional<uint64_t> first_giant_entry_m;
  std::string warning;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

// Assembles a report from the realized graph and an engine result. The
// result must carry samples and residual snapshots at m1 and m2 (or the run
// ended before them).
RunReport build_run_report(const RunConfig& config, const Graph& graph, const ComponentCensus& census,
                           const EngineResult& result);

struct MetricSummary {
  std::string name;
  uint64_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for a single value
  double min = 0.0;
  double max = 0.0;
  double ci_low = 0.0;  // mean -/+ 1.96 stddev / sqrt(count)
  double ci_high = 0.0;
};

struct AggregateReport {
  RunConfig config;  // seed is the first seed in the group
  uint64_t seed_count = 0;
  std::vector<MetricSummary> metrics;

  const MetricSummary& metric(std::string_view name) const;
};

// Names of the numeric report fields that aggregate() summarizes.
std::span<const std::string_view> aggregated_metrics();
std::optional<double> metric_value(const RunReport& r, std::string_view name);

// Order-insensitive: values are sorted before reduction. ConfigError on an
// empty list or reports from different configurations.
AggregateReport aggregate(std::span<const RunReport> reports);

}  // namespace dfsf
