/* C interface to the DFS stack-process simulator.
 *
 * Objects are opaque handles created and destroyed through this API. Every
 * fallible call returns a dfsf_status; on failure dfsf_last_error() describes
 * the problem (thread-local, valid until the next call on the same thread).
 * Strings returned through char** are owned by the caller and released with
 * dfsf_string_free.
 */
#ifndef DFSF_DFSF_H
#define DFSF_DFSF_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef DFSF_BUILDING
#    define DFSF_API __declspec(dllexport)
#  else
#    define DFSF_API __declspec(dllimport)
#  endif
#else
#  define DFSF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dfsf_status {
  DFSF_OK = 0,
  DFSF_VERIFY_FAILED = 1,
  DFSF_ERROR_CONFIG = 2,    /* bad arguments, config or input files */
  DFSF_ERROR_INVARIANT = 3, /* internal consistency check failed */
  DFSF_ERROR_INTERNAL = 4
} dfsf_status;

typedef enum dfsf_engine { DFSF_ENGINE_FAST = 0, DFSF_ENGINE_REFERENCE = 1 } dfsf_engine;

typedef struct dfsf_config dfsf_config;
typedef struct dfsf_graph dfsf_graph;
typedef struct dfsf_report dfsf_report;

DFSF_API const char* dfsf_version(void);
DFSF_API const char* dfsf_last_error(void);
DFSF_API void dfsf_string_free(char* s);

/* ---- run configuration ---- */
DFSF_API dfsf_status dfsf_config_create(dfsf_config** out);
DFSF_API void dfsf_config_destroy(dfsf_config* cfg);
DFSF_API dfsf_status dfsf_config_set_n(dfsf_config* cfg, uint32_t n);
/* Setting epsilon and p on the same config is allowed here and rejected by
 * dfsf_config_validate / dfsf_run. */
DFSF_API dfsf_status dfsf_config_set_epsilon(dfsf_config* cfg, double epsilon);
DFSF_API dfsf_status dfsf_config_set_p(dfsf_config* cfg, double p);
DFSF_API dfsf_status dfsf_config_set_seed(dfsf_config* cfg, uint64_t seed);
DFSF_API dfsf_status dfsf_config_set_engine(dfsf_config* cfg, dfsf_engine engine);
/* 0 = checkpoints only at 0, m1, m2. */
DFSF_API dfsf_status dfsf_config_set_checkpoint_stride(dfsf_config* cfg, uint64_t stride);
DFSF_API dfsf_status dfsf_config_set_record_events(dfsf_config* cfg, int enabled);
/* Writes a warning string (or NULL) through `warning` when non-NULL. */
DFSF_API dfsf_status dfsf_config_validate(const dfsf_config* cfg, char** warning);

/* ---- graphs ---- */
DFSF_API dfsf_status dfsf_graph_materialize(uint32_t n, double p, uint64_t seed, dfsf_graph** out);
DFSF_API dfsf_status dfsf_graph_load(const char* path, dfsf_graph** out);
DFSF_API dfsf_status dfsf_graph_save(const dfsf_graph* g, const char* path);
DFSF_API uint32_t dfsf_graph_vertex_count(const dfsf_graph* g);
DFSF_API uint64_t dfsf_graph_edge_count(const dfsf_graph* g);
DFSF_API dfsf_status dfsf_graph_excess(const dfsf_graph* g, int64_t* out);
DFSF_API dfsf_status dfsf_graph_exact_longest_path(const dfsf_graph* g, uint64_t* out);
DFSF_API void dfsf_graph_destroy(dfsf_graph* g);

/* ---- runs ---- */
DFSF_API dfsf_status dfsf_run(const dfsf_config* cfg, dfsf_report** out);
DFSF_API void dfsf_report_destroy(dfsf_report* r);
DFSF_API dfsf_status dfsf_report_to_json(const dfsf_report* r, char** out);
DFSF_API dfsf_status dfsf_report_write_json(const dfsf_report* r, const char* path);
DFSF_API dfsf_status dfsf_report_write_trajectory_csv(const dfsf_report* r, const char* path);
/* Event log CSV; requires the reference engine with recording enabled. */
DFSF_API dfsf_status dfsf_report_write_events_csv(const dfsf_report* r, const char* path);
/* Numeric field lookup by JSON field name; DFSF_ERROR_CONFIG if the field is
 * unknown or null in this report. */
DFSF_API dfsf_status dfsf_report_get_double(const dfsf_report* r, const char* field, double* out);

/* ---- sweeps ---- */
typedef struct dfsf_sweep_spec {
  const uint32_t* n_list;
  size_t n_count;
  const double* epsilon_list;
  size_t epsilon_count;
  uint32_t seeds;
  uint64_t base_seed;
  dfsf_engine engine;
  uint64_t checkpoint_stride;
  uint32_t jobs;
  uint64_t budget;
  int write_trajectories;
} dfsf_sweep_spec;

DFSF_API dfsf_status dfsf_sweep(const dfsf_sweep_spec* spec, const char* out_dir, uint64_t* runs_written);

/* ---- verification ---- */
/* Paths may be report files or directories. Returns DFSF_OK when every row
 * passes, DFSF_VERIFY_FAILED otherwise; the table is returned in both cases. */
DFSF_API dfsf_status dfsf_verify(const char* const* paths, size_t count, char** table);

/* ---- engine equivalence ---- */
typedef struct dfsf_equivalence_spec {
  uint32_t n_max;             /* exhaustive over all graphs on n_max <= 5 vertices */
  uint32_t random_trials;     /* per size in {6, 16, 64, 256}; 0 skips */
  uint64_t seed;
  int inject_fault;
  const char* bundle_dir;     /* counterexample bundles; NULL to skip */
} dfsf_equivalence_spec;

typedef struct dfsf_equivalence_result {
  uint64_t exhaustive_checked;
  uint64_t random_checked;
  uint64_t mismatches;
} dfsf_equivalence_result;

/* DFSF_OK iff no mismatches; DFSF_VERIFY_FAILED otherwise. */
DFSF_API dfsf_status dfsf_equivalence(const dfsf_equivalence_spec* spec, dfsf_equivalence_result* out);

/* ---- oracle dominance ---- */
typedef struct dfsf_dominance_result {
  uint64_t checked;
  uint64_t violations;
  uint64_t strict; /* instances where the exact longest path beats the DFS forest */
} dfsf_dominance_result;

/* Random graphs with 2 <= n <= max_n and p = c/n, c in [0.3, 3): checks
 * exact longest path >= longest forest path >= max stack - 1. */
DFSF_API dfsf_status dfsf_dominance(uint32_t instances, uint32_t max_n, uint64_t seed, const char* cache_dir,
                                    dfsf_dominance_result* out);

#ifdef __cplusplus
}
#endif

#endif /* DFSF_DFSF_H */
