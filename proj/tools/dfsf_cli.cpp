// Command-line front end. Talks to the simulator only through the C API.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dfsf/dfsf.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInvariant = 3;

int exit_code(dfsf_status s) {
  switch (s) {
    case DFSF_OK:
      return kExitOk;
    case DFSF_VERIFY_FAILED:
      return kExitVerifyFailed;
    case DFSF_ERROR_CONFIG:
      return kExitUsage;
    case DFSF_ERROR_INVARIANT:
    case DFSF_ERROR_INTERNAL:
      break;
  }
  return kExitInvariant;
}

int report_failure(const char* what, dfsf_status s) {
  if (s == DFSF_ERROR_INVARIANT || s == DFSF_ERROR_INTERNAL)
    std::cerr << "dfsf: invariant violation during " << what << ": " << dfsf_last_error() << '\n';
  else
    std::cerr << "dfsf: " << what << ": " << dfsf_last_error() << '\n';
  return exit_code(s);
}

// DFS_FRONTIER_BASE_SEED wins over --seed when set.
std::optional<uint64_t> seed_from_env() {
  const char* v = std::getenv("DFS_FRONTIER_BASE_SEED");
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  const unsigned long long seed = std::strtoull(v, &end, 10);
  if (*end != '\0') throw CLI::ValidationError("DFS_FRONTIER_BASE_SEED", "not an unsigned integer");
  return seed;
}

dfsf_engine engine_from(const std::string& name) {
  return name == "reference" ? DFSF_ENGINE_REFERENCE : DFSF_ENGINE_FAST;
}

struct Config {
  dfsf_config* handle = nullptr;
  Config() {
    if (dfsf_config_create(&handle) != DFSF_OK) throw std::bad_alloc();
  }
  ~Config() { dfsf_config_destroy(handle); }
  Config(const Config&) = delete;
  Config& operator=(const Config&) = delete;
};

struct RunArgs {
  uint32_t n = 0;
  std::optional<double> epsilon;
  std::optional<double> p;
  uint64_t seed = 1;
  std::string engine = "fast";
  uint64_t stride = 0;
  std::string out = "dfsf_run";
  bool trajectory = false;
  bool events = false;
};

int cmd_run(const RunArgs& a) {
  Config cfg;
  dfsf_config_set_n(cfg.handle, a.n);
  if (a.epsilon) dfsf_config_set_epsilon(cfg.handle, *a.epsilon);
  if (a.p) dfsf_config_set_p(cfg.handle, *a.p);
  dfsf_config_set_seed(cfg.handle, seed_from_env().value_or(a.seed));
  dfsf_config_set_engine(cfg.handle, engine_from(a.engine));
  dfsf_config_set_checkpoint_stride(cfg.handle, a.stride);
  dfsf_config_set_record_events(cfg.handle, a.events);

  char* warning = nullptr;
  if (auto s = dfsf_config_validate(cfg.handle, &warning); s != DFSF_OK) return report_failure("config", s);
  if (warning) {
    std::cerr << "dfsf: warning: " << warning << '\n';
    dfsf_string_free(warning);
  }

  dfsf_report* report = nullptr;
  if (auto s = dfsf_run(cfg.handle, &report); s != DFSF_OK) return report_failure("run", s);
  std::unique_ptr<dfsf_report, decltype(&dfsf_report_destroy)> guard(report, dfsf_report_destroy);

  const std::filesystem::path dir(a.out);
  const auto json_path = (dir / "report.json").string();
  if (auto s = dfsf_report_write_json(report, json_path.c_str()); s != DFSF_OK) return report_failure("write", s);
  std::cout << json_path << '\n';
  if (a.trajectory) {
    const auto csv = (dir / "trajectory.csv").string();
    if (auto s = dfsf_report_write_trajectory_csv(report, csv.c_str()); s != DFSF_OK) return report_failure("write", s);
    std::cout << csv << '\n';
  }
  if (a.events) {
    const auto csv = (dir / "events.csv").string();
    if (auto s = dfsf_report_write_events_csv(report, csv.c_str()); s != DFSF_OK) return report_failure("write", s);
    std::cout << csv << '\n';
  }
  return kExitOk;
}

struct SweepArgs {
  std::vector<uint32_t> n_list;
  std::vector<double> epsilon_list;
  uint32_t seeds = 20;
  uint64_t seed = 1;
  std::string engine = "fast";
  uint64_t stride = 0;
  std::string out = "dfsf_sweep";
  uint32_t jobs = 1;
  uint64_t budget = 1000;
  bool trajectories = false;
};

int cmd_sweep(const SweepArgs& a) {
  dfsf_sweep_spec spec{};
  spec.n_list = a.n_list.data();
  spec.n_count = a.n_list.size();
  spec.epsilon_list = a.epsilon_list.data();
  spec.epsilon_count = a.epsilon_list.size();
  spec.seeds = a.seeds;
  spec.base_seed = seed_from_env().value_or(a.seed);
  spec.engine = engine_from(a.engine);
  spec.checkpoint_stride = a.stride;
  spec.jobs = a.jobs;
  spec.budget = a.budget;
  spec.write_trajectories = a.trajectories;
  uint64_t written = 0;
  if (auto s = dfsf_sweep(&spec, a.out.c_str(), &written); s != DFSF_OK) return report_failure("sweep", s);
  std::cout << written << " runs written to " << a.out << '\n';
  return kExitOk;
}

int cmd_verify(const std::vector<std::string>& paths) {
  std::vector<const char*> raw;
  for (const auto& p : paths) raw.push_back(p.c_str());
  char* table = nullptr;
  const dfsf_status s = dfsf_verify(raw.data(), raw.size(), &table);
  if (table) {
    std::cout << table;
    dfsf_string_free(table);
  }
  if (s == DFSF_VERIFY_FAILED) return kExitVerifyFailed;
  if (s != DFSF_OK) return report_failure("verify", s);
  return kExitOk;
}

struct EquivalenceArgs {
  uint32_t n_max = 5;
  uint32_t random_trials = 1000;
  uint64_t seed = 1;
  bool inject_fault = false;
  std::string out;
};

int cmd_equivalence(const EquivalenceArgs& a) {
  dfsf_equivalence_spec spec{a.n_max, a.random_trials, seed_from_env().value_or(a.seed), a.inject_fault,
                             a.out.empty() ? nullptr : a.out.c_str()};
  dfsf_equivalence_result result{};
  const dfsf_status s = dfsf_equivalence(&spec, &result);
  if (s != DFSF_OK && s != DFSF_VERIFY_FAILED) return report_failure("equivalence", s);
  std::cout << "exhaustive graphs checked: " << result.exhaustive_checked << '\n'
            << "random graphs checked:     " << result.random_checked << '\n'
            << "mismatches:                " << result.mismatches << '\n'
            << (s == DFSF_OK ? "PASS" : "FAIL") << '\n';
  if (s != DFSF_OK) std::cerr << "dfsf: first mismatch: " << dfsf_last_error() << '\n';
  return exit_code(s);
}

struct DominanceArgs {
  uint32_t instances = 500;
  uint32_t max_n = 16;
  uint64_t seed = 1;
  std::string cache_dir;
};

int cmd_dominance(const DominanceArgs& a) {
  dfsf_dominance_result result{};
  const dfsf_status s = dfsf_dominance(a.instances, a.max_n, seed_from_env().value_or(a.seed),
                                       a.cache_dir.empty() ? nullptr : a.cache_dir.c_str(), &result);
  if (s != DFSF_OK && s != DFSF_VERIFY_FAILED) return report_failure("dominance", s);
  std::cout << "instances: " << result.checked << "  violations: " << result.violations
            << "  exact > forest: " << result.strict << '\n'
            << (s == DFSF_OK ? "PASS" : "FAIL") << '\n';
  return exit_code(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Depth-first search stack process on G(n, p): runs, sweeps and verification"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "one seeded run; writes report.json (and optional CSVs) under --out");
  run_cmd->add_option("--n", run.n, "vertex count")->required()->check(CLI::PositiveNumber);
  auto* eps_opt = run_cmd->add_option("--epsilon", run.epsilon, "p = (1 + epsilon) / n");
  auto* p_opt = run_cmd->add_option("--p", run.p, "explicit edge probability");
  eps_opt->excludes(p_opt);
  run_cmd->add_option("--seed", run.seed, "seed (DFS_FRONTIER_BASE_SEED overrides)");
  run_cmd->add_option("--engine", run.engine)->check(CLI::IsMember({"fast", "reference"}));
  run_cmd->add_option("--checkpoint-stride", run.stride, "periodic checkpoint spacing in queries (0: none)");
  run_cmd->add_option("--out", run.out, "output directory");
  run_cmd->add_flag("--trajectory", run.trajectory, "write trajectory.csv");
  run_cmd->add_flag("--events", run.events, "write events.csv (reference engine)");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "seeded campaign over n x epsilon cells");
  sweep_cmd->add_option("--n", sweep.n_list, "vertex counts")->required()->delimiter(',');
  sweep_cmd->add_option("--epsilon", sweep.epsilon_list, "epsilon values")->required()->delimiter(',');
  sweep_cmd->add_option("--seeds", sweep.seeds, "runs per cell");
  sweep_cmd->add_option("--seed", sweep.seed, "base seed; run i uses base + i");
  sweep_cmd->add_option("--engine", sweep.engine)->check(CLI::IsMember({"fast", "reference"}));
  sweep_cmd->add_option("--checkpoint-stride", sweep.stride);
  sweep_cmd->add_option("--out", sweep.out, "output directory");
  sweep_cmd->add_option("--jobs", sweep.jobs, "concurrent runs")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--budget", sweep.budget, "maximum total runs");
  sweep_cmd->add_flag("--trajectories", sweep.trajectories, "write a trajectory CSV per run");

  std::vector<std::string> verify_paths;
  auto* verify_cmd = app.add_subcommand("verify", "check campaign inequalities over run reports");
  verify_cmd->add_option("reports", verify_paths, "report files or directories");

  EquivalenceArgs equiv;
  auto* equiv_cmd = app.add_subcommand("equivalence", "cross-check the fast engine against the reference engine");
  equiv_cmd->add_option("--n-max", equiv.n_max, "exhaustive sweep over all graphs on this many vertices")->check(CLI::Range(1, 5));
  equiv_cmd->add_option("--random-trials", equiv.random_trials, "random graphs per size in {6,16,64,256}");
  equiv_cmd->add_option("--seed", equiv.seed);
  equiv_cmd->add_flag("--inject-fault", equiv.inject_fault, "perturb the fast engine to exercise the harness");
  equiv_cmd->add_option("--out", equiv.out, "directory for counterexample bundles");

  DominanceArgs dom;
  auto* dom_cmd = app.add_subcommand("dominance", "exact longest path vs DFS forest path on small random graphs");
  dom_cmd->add_option("--instances", dom.instances);
  dom_cmd->add_option("--max-n", dom.max_n)->check(CLI::Range(2, 20));
  dom_cmd->add_option("--seed", dom.seed);
  dom_cmd->add_option("--cache-dir", dom.cache_dir, "memoize exact results on disk");

  try {
    app.parse(argc, argv);
    if (*run_cmd) {
      if (!run.epsilon && !run.p) throw CLI::ValidationError("run", "one of --epsilon and --p is required");
      return cmd_run(run);
    }
    if (*sweep_cmd) return cmd_sweep(sweep);
    if (*verify_cmd) return cmd_verify(verify_paths);
    if (*equiv_cmd) return cmd_equivalence(equiv);
    if (*dom_cmd) return cmd_dominance(dom);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  return kExitUsage;
}
