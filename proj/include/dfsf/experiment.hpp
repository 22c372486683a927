#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "dfsf/config.hpp"
#include "dfsf/diagnostics.hpp"
#include "dfsf/reference_engine.hpp"
#include "dfsf/trajectory.hpp"

namespace dfsf {

struct RunOutput {
  RunReport report;
  std::vector<TrajectorySample> trajectory;
  EventLog events;  // reference engine with record_events only
};

// Materializes G(n, p) from the seed, runs the configured engine against it
// and assembles the report.
RunOutput run_single(const RunConfig& config, bool record_events = false);

// Upper bound on periodic checkpoints per run.
inline constexpr uint64_t kMaxCheckpoints = 50'000'000;

std::string report_to_json(const RunReport& r);
RunReport report_from_json(const std::string& text);  // ConfigError on schema mismatch
std::string aggregate_to_json(const AggregateReport& a);
std::string aggregate_to_csv(const AggregateReport& a);
std::string trajectory_to_csv(const std::vector<TrajectorySample>& samples);
std::string events_to_csv(const EventLog& log);
std::string runs_table_csv(const std::vector<RunReport>& reports);  // one row per seed

// Shortest decimal text of a double ("0.1", "1e-06" becomes "0.000001").
std::string format_decimal(double v);

// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

struct SweepSpec {
  std::vector<uint32_t> n_list;
  std::vector<double> epsilon_list;
  uint32_t seeds = 1;
  uint64_t base_seed = 0;
  EngineKind engine = EngineKind::Fast;
  uint64_t checkpoint_stride = 0;
  uint32_t jobs = 1;
  uint64_t budget = 1000;  // maximum number of runs
  bool trajectories = false;
};

struct SweepCell {
  uint32_t n = 0;
  double epsilon = 0.0;
  std::filesystem::path dir;
  std::vector<RunReport> reports;  // ordered by seed
  AggregateReport aggregate;
};

// Seeds are base_seed + i for i in [0, seeds). Layout under out_dir:
//   n<N>_eps<E>/seed_<S>.json, runs.csv, aggregate.json, aggregate.csv
//   cells.csv (one aggregate row per cell), plot_stack.gp
std::vector<SweepCell> run_sweep(const SweepSpec& spec, const std::filesystem::path& out_dir);

// Runs every (cell, seed) in memory without touching the filesystem.
std::vector<SweepCell> run_campaign(const SweepSpec& spec);

struct VerifyRow {
  std::string criterion;
  std::string cell;
  bool passed = false;
  std::string detail;
};

struct VerifyResult {
  std::vector<VerifyRow> rows;
  bool all_passed() const;
  std::string table() const;
};

// Evaluates the campaign inequalities over a set of reports.
VerifyResult verify_reports(const std::vector<RunReport>& reports);

// Collects run reports from files and directories (recursively, *.json with
// kind "run_report"). ConfigError if nothing is found or a file is malformed.
std::vector<RunReport> load_reports(const std::vector<std::filesystem::path>& paths);

}  // namespace dfsf
