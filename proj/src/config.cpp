#include "dfsf/config.hpp"

#include <cmath>

#include "dfsf/errors.hpp"
#include "dfsf/reference_engine.hpp"

namespace dfsf {

std::string_view to_string(EngineKind e) { return e == EngineKind::Fast ? "fast" : "reference"; }

EngineKind parse_engine(std::string_view name) {
  if (name == "fast") return EngineKind::Fast;
  if (name == "reference") return EngineKind::Reference;
  throw ConfigError("unknown engine '" + std::string(name) + "' (expected fast or reference)");
}

double RunConfig::edge_probability() const {
  if (p) return *p;
  if (epsilon) return (1.0 + *epsilon) / static_cast<double>(n);
  throw ConfigError("config: neither epsilon nor p is set");
}

std::string RunConfig::validate() const {
  if (n == 0) throw ConfigError("config: n must be at least 1");
  if (epsilon.has_value() == p.has_value()) throw ConfigError("config: give exactly one of epsilon and p");
  if (engine == EngineKind::Reference && n > kReferenceMaxVertices)
    throw ConfigError("config: the reference engine refuses n > " + std::to_string(kReferenceMaxVertices));
  if (p && !(*p >= 0.0 && *p <= 1.0)) throw ConfigError("config: p must lie in [0, 1]");
  if (epsilon) {
    if (!(*epsilon >= 0.0 && *epsilon < 1.0)) throw ConfigError("config: epsilon must lie in [0, 1)");
    if (edge_probability() > 1.0) throw ConfigError("config: (1 + epsilon) / n exceeds 1");
    if (*epsilon == 0.0 || *epsilon > 0.5)
      return "epsilon=" + std::to_string(*epsilon) + " is outside the small-epsilon band (0, 0.5]";
  }
  return {};
}

}  // namespace dfsf
