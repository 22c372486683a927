#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace dfsf {

enum class EngineKind { Fast, Reference };

std::string_view to_string(EngineKind e);
EngineKind parse_engine(std::string_view name);  // ConfigError on unknown names

// One seeded run. Exactly one of epsilon / p is set.
struct RunConfig {
  uint32_t n = 0;
  std::optional<double> epsilon;
  std::optional<double> p;
  uint64_t seed = 0;
  EngineKind engine = EngineKind::Fast;
  uint64_t checkpoint_stride = 0;  // 0: only 0, m1, m2

  // Edge probability: (1 + epsilon) / n, or the explicit p.
  double edge_probability() const;

  // Throws ConfigError on invalid combinations. Returns a warning (empty if
  // none) for epsilon outside the small-epsilon band (0, 0.5].
  std::string validate() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

}  // namespace dfsf
