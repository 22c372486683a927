#include "dfsf/dfsf.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "dfsf/config.hpp"
#include "dfsf/diagnostics.hpp"
#include "dfsf/errors.hpp"
#include "dfsf/experiment.hpp"
#include "dfsf/graph.hpp"
#include "dfsf/oracle.hpp"
#include "json.hpp"

struct dfsf_config {
  dfsf::RunConfig config;
  bool record_events = false;
};

struct dfsf_graph {
  dfsf::Graph graph;
};

struct dfsf_report {
  dfsf::RunOutput output;
};

namespace {

thread_local std::string g_last_error;

dfsf_status fail(dfsf_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

template <typename F>
dfsf_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const dfsf::ConfigError& e) {
    return fail(DFSF_ERROR_CONFIG, e.what());
  } catch (const dfsf::InvariantViolation& e) {
    return fail(DFSF_ERROR_INVARIANT, e.what());
  } catch (const dfsf::StreamExhausted& e) {
    return fail(DFSF_ERROR_INVARIANT, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(DFSF_ERROR_CONFIG, e.what());
  } catch (const std::bad_alloc&) {
    return fail(DFSF_ERROR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DFSF_ERROR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

#define DFSF_REQUIRE(ptr)                                                    \
  do {                                                                       \
    if (!(ptr)) return fail(DFSF_ERROR_CONFIG, #ptr " must not be NULL");    \
  } while (0)

}  // namespace

extern "C" {

const char* dfsf_version(void) { return "1.0.0"; }
const char* dfsf_last_error(void) { return g_last_error.c_str(); }
void dfsf_string_free(char* s) { std::free(s); }

dfsf_status dfsf_config_create(dfsf_config** out) {
  DFSF_REQUIRE(out);
  return guarded([&] {
    *out = new dfsf_config;
    return DFSF_OK;
  });
}

void dfsf_config_destroy(dfsf_config* cfg) { delete cfg; }

dfsf_status dfsf_config_set_n(dfsf_config* cfg, uint32_t n) {
  DFSF_REQUIRE(cfg);
  cfg->config.n = n;
  return DFSF_OK;
}

dfsf_status dfsf_config_set_epsilon(dfsf_config* cfg, double epsilon) {
  DFSF_REQUIRE(cfg);
  cfg->config.epsilon = epsilon;
  return DFSF_OK;
}

dfsf_status dfsf_config_set_p(dfsf_config* cfg, double p) {
  DFSF_REQUIRE(cfg);
  cfg->config.p = p;
  return DFSF_OK;
}

dfsf_status dfsf_config_set_seed(dfsf_config* cfg, uint64_t seed) {
  DFSF_REQUIRE(cfg);
  cfg->config.seed = seed;
  return DFSF_OK;
}

dfsf_status dfsf_config_set_engine(dfsf_config* cfg, dfsf_engine engine) {
  DFSF_REQUIRE(cfg);
  if (engine != DFSF_ENGINE_FAST && engine != DFSF_ENGINE_REFERENCE) return fail(DFSF_ERROR_CONFIG, "unknown engine");
  cfg->config.engine = engine == DFSF_ENGINE_FAST ? dfsf::EngineKind::Fast : dfsf::EngineKind::Reference;
  return DFSF_OK;
}

dfsf_status dfsf_config_set_checkpoint_stride(dfsf_config* cfg, uint64_t stride) {
  DFSF_REQUIRE(cfg);
  cfg->config.checkpoint_stride = stride;
  return DFSF_OK;
}

dfsf_status dfsf_config_set_record_events(dfsf_config* cfg, int enabled) {
  DFSF_REQUIRE(cfg);
  cfg->record_events = enabled != 0;
  return DFSF_OK;
}

dfsf_status dfsf_config_validate(const dfsf_config* cfg, char** warning) {
  DFSF_REQUIRE(cfg);
  return guarded([&] {
    const std::string w = cfg->config.validate();
    if (cfg->config.epsilon && cfg->config.n >= 2) dfsf::reference_moments(cfg->config.n, *cfg->config.epsilon);
    if (warning) *warning = w.empty() ? nullptr : dup_string(w);
    return DFSF_OK;
  });
}

dfsf_status dfsf_graph_materialize(uint32_t n, double p, uint64_t seed, dfsf_graph** out) {
  DFSF_REQUIRE(out);
  return guarded([&] {
    if (!(p >= 0.0 && p <= 1.0)) throw dfsf::ConfigError("p must lie in [0, 1]");
    *out = new dfsf_graph{dfsf::materialize_graph(n, p, seed)};
    return DFSF_OK;
  });
}

dfsf_status dfsf_graph_load(const char* path, dfsf_graph** out) {
  DFSF_REQUIRE(path);
  DFSF_REQUIRE(out);
  return guarded([&] {
    *out = new dfsf_graph{dfsf::load_graph(path)};
    return DFSF_OK;
  });
}

dfsf_status dfsf_graph_save(const dfsf_graph* g, const char* path) {
  DFSF_REQUIRE(g);
  DFSF_REQUIRE(path);
  return guarded([&] {
    dfsf::save_graph(path, g->graph);
    return DFSF_OK;
  });
}

uint32_t dfsf_graph_vertex_count(const dfsf_graph* g) { return g ? g->graph.vertex_count() : 0; }
uint64_t dfsf_graph_edge_count(const dfsf_graph* g) { return g ? g->graph.edge_count() : 0; }

dfsf_status dfsf_graph_excess(const dfsf_graph* g, int64_t* out) {
  DFSF_REQUIRE(g);
  DFSF_REQUIRE(out);
  return guarded([&] {
    *out = dfsf::excess(g->graph);
    return DFSF_OK;
  });
}

dfsf_status dfsf_graph_exact_longest_path(const dfsf_graph* g, uint64_t* out) {
  DFSF_REQUIRE(g);
  DFSF_REQUIRE(out);
  return guarded([&] {
    *out = dfsf::exact_longest_path(g->graph);
    return DFSF_OK;
  });
}

void dfsf_graph_destroy(dfsf_graph* g) { delete g; }

dfsf_status dfsf_run(const dfsf_config* cfg, dfsf_report** out) {
  DFSF_REQUIRE(cfg);
  DFSF_REQUIRE(out);
  return guarded([&] {
    *out = new dfsf_report{dfsf::run_single(cfg->config, cfg->record_events)};
    return DFSF_OK;
  });
}

void dfsf_report_destroy(dfsf_report* r) { delete r; }

dfsf_status dfsf_report_to_json(const dfsf_report* r, char** out) {
  DFSF_REQUIRE(r);
  DFSF_REQUIRE(out);
  return guarded([&] {
    *out = dup_string(dfsf::report_to_json(r->output.report));
    return DFSF_OK;
  });
}

dfsf_status dfsf_report_write_json(const dfsf_report* r, const char* path) {
  DFSF_REQUIRE(r);
  DFSF_REQUIRE(path);
  return guarded([&] {
    dfsf::write_file_atomic(path, dfsf::report_to_json(r->output.report));
    return DFSF_OK;
  });
}

dfsf_status dfsf_report_write_trajectory_csv(const dfsf_report* r, const char* path) {
  DFSF_REQUIRE(r);
  DFSF_REQUIRE(path);
  return guarded([&] {
    dfsf::write_file_atomic(path, dfsf::trajectory_to_csv(r->output.trajectory));
    return DFSF_OK;
  });
}

dfsf_status dfsf_report_write_events_csv(const dfsf_report* r, const char* path) {
  DFSF_REQUIRE(r);
  DFSF_REQUIRE(path);
  return guarded([&] {
    if (r->output.report.config.engine != dfsf::EngineKind::Reference)
      throw dfsf::ConfigError("event logs are only recorded by the reference engine");
    dfsf::write_file_atomic(path, dfsf::events_to_csv(r->output.events));
    return DFSF_OK;
  });
}

dfsf_status dfsf_report_get_double(const dfsf_report* r, const char* field, double* out) {
  DFSF_REQUIRE(r);
  DFSF_REQUIRE(field);
  DFSF_REQUIRE(out);
  return guarded([&] {
    const auto j = nlohmann::json::parse(dfsf::report_to_json(r->output.report));
    if (!j.contains(field)) throw dfsf::ConfigError(std::string("unknown report field ") + field);
    const auto& v = j.at(field);
    if (v.is_boolean()) {
      *out = v.get<bool>() ? 1.0 : 0.0;
    } else if (v.is_number()) {
      *out = v.get<double>();
    } else {
      throw dfsf::ConfigError(std::string("report field ") + field + " is not numeric here");
    }
    return DFSF_OK;
  });
}

dfsf_status dfsf_sweep(const dfsf_sweep_spec* spec, const char* out_dir, uint64_t* runs_written) {
  DFSF_REQUIRE(spec);
  DFSF_REQUIRE(out_dir);
  return guarded([&] {
    if ((spec->n_count && !spec->n_list) || (spec->epsilon_count && !spec->epsilon_list))
      throw dfsf::ConfigError("sweep: null list");
    dfsf::SweepSpec s;
    s.n_list.assign(spec->n_list, spec->n_list + spec->n_count);
    s.epsilon_list.assign(spec->epsilon_list, spec->epsilon_list + spec->epsilon_count);
    s.seeds = spec->seeds;
    s.base_seed = spec->base_seed;
    s.engine = spec->engine == DFSF_ENGINE_REFERENCE ? dfsf::EngineKind::Reference : dfsf::EngineKind::Fast;
    s.checkpoint_stride = spec->checkpoint_stride;
    s.jobs = spec->jobs;
    s.budget = spec->budget;
    s.trajectories = spec->write_trajectories != 0;
    const auto cells = dfsf::run_sweep(s, out_dir);
    if (runs_written) {
      *runs_written = 0;
      for (const auto& c : cells) *runs_written += c.reports.size();
    }
    return DFSF_OK;
  });
}

dfsf_status dfsf_verify(const char* const* paths, size_t count, char** table) {
  return guarded([&] {
    if (count > 0 && !paths) throw dfsf::ConfigError("verify: null path list");
    std::vector<std::filesystem::path> list;
    for (size_t i = 0; i < count; ++i) list.emplace_back(paths[i]);
    const auto result = dfsf::verify_reports(dfsf::load_reports(list));
    if (table) *table = dup_string(result.table());
    if (!result.all_passed()) {
      g_last_error = "one or more criteria failed";
      return DFSF_VERIFY_FAILED;
    }
    return DFSF_OK;
  });
}

dfsf_status dfsf_equivalence(const dfsf_equivalence_spec* spec, dfsf_equivalence_result* out) {
  DFSF_REQUIRE(spec);
  DFSF_REQUIRE(out);
  return guarded([&] {
    *out = {};
    const bool fault = spec->inject_fault != 0;
    const auto exhaustive = dfsf::equivalence_sweep(spec->n_max, fault);
    out->exhaustive_checked = exhaustive.graphs_checked;
    std::vector<dfsf::Counterexample> found = exhaustive.counterexamples;
    if (spec->random_trials > 0) {
      constexpr uint32_t sizes[] = {6, 16, 64, 256};
      const auto random = dfsf::random_equivalence(sizes, spec->random_trials, spec->seed, fault);
      out->random_checked = random.graphs_checked;
      found.insert(found.end(), random.counterexamples.begin(), random.counterexamples.end());
    }
    out->mismatches = found.size();
    if (spec->bundle_dir)
      for (size_t i = 0; i < found.size(); ++i) dfsf::write_counterexample_bundle(spec->bundle_dir, i, found[i]);
    if (!found.empty()) {
      g_last_error = found.size() == 1 ? found[0].difference
                                       : found[0].difference + " (and " + std::to_string(found.size() - 1) + " more)";
      return DFSF_VERIFY_FAILED;
    }
    return DFSF_OK;
  });
}

dfsf_status dfsf_dominance(uint32_t instances, uint32_t max_n, uint64_t seed, const char* cache_dir,
                           dfsf_dominance_result* out) {
  DFSF_REQUIRE(out);
  return guarded([&] {
    std::optional<dfsf::LongestPathCache> cache;
    if (cache_dir) cache.emplace(cache_dir);
    const auto summary = dfsf::check_dominance(instances, max_n, seed, cache ? &*cache : nullptr);
    *out = {summary.checked, summary.violations, summary.strict};
    if (summary.violations) {
      g_last_error = std::to_string(summary.violations) + " dominance violations";
      return DFSF_VERIFY_FAILED;
    }
    return DFSF_OK;
  });
}

}  // extern "C"
