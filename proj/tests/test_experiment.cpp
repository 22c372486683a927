#include <gtest/gtest.h>

#include <filesystem>
#include <unistd.h>

#include "dfsf/config.hpp"
#include "dfsf/errors.hpp"
#include "dfsf/experiment.hpp"

using namespace dfsf;
namespace fs = std::filesystem;

namespace {

RunConfig cell(uint32_t n, double eps, uint64_t seed, EngineKind engine = EngineKind::Fast) {
  RunConfig c;
  c.n = n;
  c.epsilon = eps;
  c.seed = seed;
  c.engine = engine;
  return c;
}

fs::path fresh_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("dfsf_exp_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  return dir;
}

std::string slurp_tree(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::string all;
  for (const auto& f : files) all += fs::relative(f, dir).string() + "\n" + read_file(f);
  return all;
}

const VerifyRow& find_row(const VerifyResult& v, const std::string& criterion) {
  for (const auto& r : v.rows)
    if (r.criterion == criterion) return r;
  throw std::out_of_range(criterion);
}

}  // namespace

TEST(Config, Validation) {
  RunConfig both = cell(10, 0.4, 1);
  both.p = 0.1;
  EXPECT_THROW(both.validate(), ConfigError);
  RunConfig neither;
  neither.n = 10;
  EXPECT_THROW(neither.validate(), ConfigError);
  EXPECT_THROW(cell(6000, 0.1, 1, EngineKind::Reference).validate(), ConfigError);
  EXPECT_TRUE(cell(1000, 0.1, 1).validate().empty());
  EXPECT_FALSE(cell(1000, 0.7, 1).validate().empty());
  EXPECT_FALSE(cell(1000, 0.0, 1).validate().empty());
  EXPECT_DOUBLE_EQ(cell(1000, 0.1, 1).edge_probability(), 1.1 / 1000);
  EXPECT_EQ(parse_engine("reference"), EngineKind::Reference);
  EXPECT_THROW(parse_engine("turbo"), ConfigError);
}

TEST(RunSingle, ClockBound) {
  const auto out = run_single(cell(1000, 0.1, 1, EngineKind::Reference));
  EXPECT_LE(out.report.dfs_query_total, 499500u);
  EXPECT_EQ(out.report.dfs_query_total + out.report.completion_queries, 499500u);
}

TEST(RunSingle, EnginesProduceIdenticalReports) {
  for (uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    RunConfig fast = cell(1500, 0.1, seed);
    fast.checkpoint_stride = 5000;
    RunConfig ref = fast;
    ref.engine = EngineKind::Reference;
    const auto a = run_single(fast);
    const auto b = run_single(ref);
    RunReport ra = a.report, rb = b.report;
    rb.config.engine = ra.config.engine;
    EXPECT_EQ(ra, rb) << "seed " << seed;
    EXPECT_EQ(a.trajectory, b.trajectory);
  }
}

TEST(RunSingle, DeterministicPerSeed) {
  EXPECT_EQ(run_single(cell(5000, 0.1, 9)).report, run_single(cell(5000, 0.1, 9)).report);
  EXPECT_NE(run_single(cell(5000, 0.1, 9)).report, run_single(cell(5000, 0.1, 10)).report);
}

TEST(ReportJson, RoundTrip) {
  const auto out = run_single(cell(3000, 0.2, 4));
  const std::string text = report_to_json(out.report);
  EXPECT_EQ(report_from_json(text), out.report);
  EXPECT_EQ(report_to_json(report_from_json(text)), text);

  RunConfig explicit_p;
  explicit_p.n = 500;
  explicit_p.p = 0.003;
  explicit_p.seed = 2;
  const auto r = run_single(explicit_p).report;
  EXPECT_FALSE(r.m1.has_value());
  EXPECT_EQ(report_from_json(report_to_json(r)), r);
}

TEST(ReportJson, Rejections) {
  EXPECT_THROW(report_from_json("not json"), ConfigError);
  EXPECT_THROW(report_from_json("{\"kind\":\"aggregate\"}"), ConfigError);
  EXPECT_THROW(report_from_json("{\"kind\":\"run_report\",\"schema_version\":99}"), ConfigError);
  std::string text = report_to_json(run_single(cell(500, 0.1, 1)).report);
  text.replace(text.find("\"max_U\""), 7, "\"max_X\"");
  EXPECT_THROW(report_from_json(text), ConfigError);
}

TEST(Csv, TrajectoryAndEvents) {
  RunConfig c = cell(50, 0.2, 3, EngineKind::Reference);
  c.checkpoint_stride = 100;
  const auto out = run_single(c, true);
  const std::string traj = trajectory_to_csv(out.trajectory);
  EXPECT_EQ(traj.substr(0, traj.find('\n')), "m,size_S,size_U,size_T,q_ST,q_SU,q_UT");
  EXPECT_EQ(static_cast<size_t>(std::count(traj.begin(), traj.end(), '\n')), out.trajectory.size() + 1);
  const std::string ev = events_to_csv(out.events);
  EXPECT_EQ(ev.substr(0, ev.find('\n')), "m,event_kind,vertex_or_pair,answer");
  EXPECT_FALSE(out.events.empty());
}

TEST(FormatDecimal, ShortestForms) {
  EXPECT_EQ(format_decimal(0.1), "0.1");
  EXPECT_EQ(format_decimal(0.05), "0.05");
  EXPECT_EQ(format_decimal(1e-6), "0.000001");
  EXPECT_EQ(format_decimal(2.0), "2");
}

TEST(Sweep, LayoutMatchesSingleRuns) {
  const auto dir = fresh_dir("sweep");
  SweepSpec spec;
  spec.n_list = {800};
  spec.epsilon_list = {0.1, 0.2};
  spec.seeds = 3;
  spec.base_seed = 5;
  spec.jobs = 2;
  const auto cells = run_sweep(spec, dir);
  ASSERT_EQ(cells.size(), 2u);
  for (const auto& c : cells) {
    ASSERT_EQ(c.reports.size(), 3u);
    for (uint64_t i = 0; i < 3; ++i) {
      const RunReport single = run_single(cell(800, c.epsilon, 5 + i)).report;
      EXPECT_EQ(c.reports[i], single);
      const auto file = c.dir / ("seed_" + std::to_string(5 + i) + ".json");
      EXPECT_EQ(report_from_json(read_file(file)), single);
    }
    for (const char* f : {"runs.csv", "aggregate.json", "aggregate.csv"}) EXPECT_TRUE(fs::exists(c.dir / f)) << f;
    EXPECT_EQ(c.aggregate.seed_count, 3u);
  }
  EXPECT_TRUE(fs::exists(dir / "cells.csv"));
  EXPECT_TRUE(fs::exists(dir / "n800_eps0.1"));
  EXPECT_EQ(load_reports({dir}).size(), 6u);

  const std::string first = slurp_tree(dir);
  spec.jobs = 1;
  run_sweep(spec, dir);
  EXPECT_EQ(slurp_tree(dir), first);
  fs::remove_all(dir);
}

TEST(Sweep, BudgetAndEmptySpecs) {
  SweepSpec spec;
  spec.n_list = {100, 200};
  spec.epsilon_list = {0.1, 0.2};
  spec.seeds = 10;
  spec.budget = 39;
  EXPECT_THROW(run_campaign(spec), ConfigError);
  spec.epsilon_list.clear();
  spec.budget = 1000;
  EXPECT_THROW(run_campaign(spec), ConfigError);
}

TEST(Verify, ExcessAboveBoundFails) {
  SweepSpec spec;
  spec.n_list = {1000};
  spec.epsilon_list = {0.1};
  spec.seeds = 4;
  spec.base_seed = 1;
  auto reports = run_campaign(spec).front().reports;
  EXPECT_EQ(find_row(verify_reports(reports), "max_stack").criterion, "max_stack");
  reports[2].excess_total = 7;  // 7 eps^3 n with eps = 0.1, n = 1000
  const auto v = verify_reports(reports);
  EXPECT_FALSE(find_row(v, "excess_bound").passed);
  EXPECT_FALSE(v.all_passed());
  EXPECT_NE(v.table().find("FAIL"), std::string::npos);
}

TEST(Verify, Errors) {
  EXPECT_THROW(verify_reports({}), ConfigError);
  const auto empty = fresh_dir("empty");
  fs::create_directories(empty);
  EXPECT_THROW(load_reports({empty}), ConfigError);
  EXPECT_THROW(load_reports({empty / "missing.json"}), ConfigError);
  write_file_atomic(empty / "bad.json", "{\"kind\":\"run_report\",\"schema_version\":1}");
  EXPECT_THROW(load_reports({empty / "bad.json"}), ConfigError);
  fs::remove_all(empty);
}
