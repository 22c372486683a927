#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <string>
#include <unistd.h>

#include "dfsf/dfsf.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  dfsf_string_free(s);
  return out;
}

}  // namespace

TEST(CApi, RunAndQuery) {
  dfsf_config* cfg = nullptr;
  ASSERT_EQ(dfsf_config_create(&cfg), DFSF_OK);
  dfsf_config_set_n(cfg, 1000);
  dfsf_config_set_epsilon(cfg, 0.1);
  dfsf_config_set_seed(cfg, 1);
  char* warning = nullptr;
  EXPECT_EQ(dfsf_config_validate(cfg, &warning), DFSF_OK);
  EXPECT_EQ(warning, nullptr);

  dfsf_report* rep = nullptr;
  ASSERT_EQ(dfsf_run(cfg, &rep), DFSF_OK) << dfsf_last_error();
  double m1 = 0;
  ASSERT_EQ(dfsf_report_get_double(rep, "m1", &m1), DFSF_OK);
  EXPECT_EQ(m1, 81818.0);
  double junk;
  EXPECT_EQ(dfsf_report_get_double(rep, "no_such_field", &junk), DFSF_ERROR_CONFIG);

  char* json = nullptr;
  ASSERT_EQ(dfsf_report_to_json(rep, &json), DFSF_OK);
  EXPECT_NE(take(json).find("\"run_report\""), std::string::npos);

  dfsf_config_set_engine(cfg, DFSF_ENGINE_REFERENCE);
  dfsf_report* ref = nullptr;
  ASSERT_EQ(dfsf_run(cfg, &ref), DFSF_OK);
  double a = 0, b = 0;
  dfsf_report_get_double(rep, "max_U", &a);
  dfsf_report_get_double(ref, "max_U", &b);
  EXPECT_EQ(a, b);
  dfsf_report_destroy(ref);
  dfsf_report_destroy(rep);
  dfsf_config_destroy(cfg);
}

TEST(CApi, ConfigErrors) {
  dfsf_config* cfg = nullptr;
  dfsf_config_create(&cfg);
  dfsf_config_set_n(cfg, 10);
  dfsf_config_set_epsilon(cfg, 0.4);
  dfsf_config_set_p(cfg, 0.1);
  EXPECT_EQ(dfsf_config_validate(cfg, nullptr), DFSF_ERROR_CONFIG);
  EXPECT_STRNE(dfsf_last_error(), "");
  dfsf_report* rep = nullptr;
  EXPECT_EQ(dfsf_run(cfg, &rep), DFSF_ERROR_CONFIG);
  EXPECT_EQ(rep, nullptr);
  dfsf_config_destroy(cfg);
  EXPECT_EQ(dfsf_run(nullptr, &rep), DFSF_ERROR_CONFIG);
}

TEST(CApi, GraphsAndOracles) {
  dfsf_graph* g = nullptr;
  ASSERT_EQ(dfsf_graph_materialize(4, 1.0, 3, &g), DFSF_OK);
  EXPECT_EQ(dfsf_graph_edge_count(g), 6u);
  int64_t ex = 0;
  dfsf_graph_excess(g, &ex);
  EXPECT_EQ(ex, 3);
  uint64_t lp = 0;
  dfsf_graph_exact_longest_path(g, &lp);
  EXPECT_EQ(lp, 3u);

  const auto path = std::filesystem::temp_directory_path() / ("dfsf_capi_" + std::to_string(::getpid()) + ".txt");
  ASSERT_EQ(dfsf_graph_save(g, path.c_str()), DFSF_OK);
  dfsf_graph* h = nullptr;
  ASSERT_EQ(dfsf_graph_load(path.c_str(), &h), DFSF_OK);
  EXPECT_EQ(dfsf_graph_vertex_count(h), 4u);
  std::filesystem::remove(path);
  EXPECT_EQ(dfsf_graph_load(path.c_str(), &h), DFSF_ERROR_CONFIG);
  dfsf_graph_destroy(h);
  dfsf_graph_destroy(g);

  dfsf_equivalence_spec spec{4, 5, 1, 0, nullptr};
  dfsf_equivalence_result res{};
  EXPECT_EQ(dfsf_equivalence(&spec, &res), DFSF_OK);
  EXPECT_EQ(res.exhaustive_checked, 64u);
  EXPECT_EQ(res.random_checked, 20u);
  spec.inject_fault = 1;
  EXPECT_EQ(dfsf_equivalence(&spec, &res), DFSF_VERIFY_FAILED);
  EXPECT_GT(res.mismatches, 0u);

  dfsf_dominance_result dom{};
  EXPECT_EQ(dfsf_dominance(30, 12, 2, nullptr, &dom), DFSF_OK);
  EXPECT_EQ(dom.checked, 30u);
}

TEST(CApi, SweepAndVerify) {
  const auto dir = std::filesystem::temp_directory_path() / ("dfsf_capi_sweep_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  const uint32_t ns[] = {600};
  const double eps[] = {0.1};
  dfsf_sweep_spec spec{ns, 1, eps, 1, 2, 1, DFSF_ENGINE_FAST, 0, 1, 1000, 1};
  uint64_t written = 0;
  ASSERT_EQ(dfsf_sweep(&spec, dir.c_str(), &written), DFSF_OK) << dfsf_last_error();
  EXPECT_EQ(written, 2u);
  const std::string d = dir.string();
  const char* paths[] = {d.c_str()};
  char* table = nullptr;
  const dfsf_status st = dfsf_verify(paths, 1, &table);
  EXPECT_TRUE(st == DFSF_OK || st == DFSF_VERIFY_FAILED);
  EXPECT_NE(take(table).find("criterion"), std::string::npos);

  spec.budget = 1;
  EXPECT_EQ(dfsf_sweep(&spec, dir.c_str(), &written), DFSF_ERROR_CONFIG);
  std::filesystem::remove_all(dir);
  const char* none[] = {"/nonexistent/dfsf"};
  EXPECT_EQ(dfsf_verify(none, 1, &table), DFSF_ERROR_CONFIG);
}
