#include "dfsf/experiment.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "dfsf/errors.hpp"
#include "dfsf/fast_engine.hpp"
#include "dfsf/graph.hpp"

namespace dfsf {

RunOutput run_single(const RunConfig& config, bool record_events) {
  config.validate();
  const double p = config.edge_probability();
  const uint64_t stride = config.checkpoint_stride;
  if (stride != 0 && stride != kUnboundedStride && pair_count(config.n) / stride > kMaxCheckpoints)
    throw ConfigError("checkpoint stride " + std::to_string(stride) + " yields more than " +
                      std::to_string(kMaxCheckpoints) + " checkpoints");

  std::optional<Moments> moments;
  if (config.epsilon) moments = reference_moments(config.n, *config.epsilon);

  const Graph graph = materialize_graph(config.n, p, config.seed);
  const ComponentCensus census = component_census(graph);

  RunOptions run;
  run.checkpoints = checkpoint_schedule(config.n, config.epsilon, stride);
  if (moments) run.residual_moments = {moments->m1, moments->m2};
  run.giant = &census.giant;

  RunOutput out;
  EngineResult result;
  if (config.engine == EngineKind::Fast) {
    FastOptions options;
    options.run = std::move(run);
    result = run_fast(graph, options);
  } else {
    GraphOracle oracle(graph);
    ReferenceOptions options;
    options.run = std::move(run);
    options.record_events = record_events;
    ReferenceRun ref = run_reference(config.n, oracle, options);
    result = std::move(ref.result);
    out.events = std::move(ref.events);
  }
  out.report = build_run_report(config, graph, census, result);
  out.trajectory = std::move(result.samples);
  return out;
}

namespace {

struct Job {
  size_t cell;
  RunConfig config;
};

std::string cell_name(uint32_t n, double eps) { return "n" + std::to_string(n) + "_eps" + format_decimal(eps); }

std::vector<SweepCell> execute(const SweepSpec& spec, const std::filesystem::path* out_dir) {
  if (spec.n_list.empty() || spec.epsilon_list.empty() || spec.seeds == 0)
    throw ConfigError("sweep: need at least one n, one epsilon and one seed");
  const uint64_t total = static_cast<uint64_t>(spec.n_list.size()) * spec.epsilon_list.size() * spec.seeds;
  if (total > spec.budget)
    throw ConfigError("sweep: " + std::to_string(total) + " runs exceed the budget of " + std::to_string(spec.budget));

  std::vector<SweepCell> cells;
  std::vector<Job> jobs;
  for (uint32_t n : spec.n_list) {
    for (double eps : spec.epsilon_list) {
      SweepCell cell;
      cell.n = n;
      cell.epsilon = eps;
      if (out_dir) cell.dir = *out_dir / cell_name(n, eps);
      cell.reports.resize(spec.seeds);
      for (uint32_t i = 0; i < spec.seeds; ++i) {
        RunConfig c;
        c.n = n;
        c.epsilon = eps;
        c.seed = spec.base_seed + i;
        c.engine = spec.engine;
        c.checkpoint_stride = spec.checkpoint_stride;
        c.validate();
        jobs.push_back({cells.size(), c});
      }
      cells.push_back(std::move(cell));
    }
  }
  // Moments are checked up front so a bad cell fails before any work starts.
  for (const auto& cell : cells) reference_moments(cell.n, cell.epsilon);

  std::atomic<size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      {
        std::lock_guard lock(error_mutex);
        if (error) return;
      }
      try {
        const Job& job = jobs[i];
        RunOutput out = run_single(job.config);
        SweepCell& cell = cells[job.cell];
        const size_t slot = job.config.seed - spec.base_seed;
        if (out_dir) {
          const std::string stem = "seed_" + std::to_string(job.config.seed);
          write_file_atomic(cell.dir / (stem + ".json"), report_to_json(out.report));
          if (spec.trajectories) write_file_atomic(cell.dir / (stem + "_trajectory.csv"), trajectory_to_csv(out.trajectory));
        }
        cell.reports[slot] = std::move(out.report);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const uint32_t threads = std::max<uint32_t>(1, std::min<uint64_t>(spec.jobs, jobs.size()));
  std::vector<std::thread> pool;
  for (uint32_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  for (auto& cell : cells) cell.aggregate = aggregate(cell.reports);

  if (out_dir) {
    std::ostringstream summary;
    summary << "n,epsilon,seeds,metric,mean,stddev,min,max,ci_low,ci_high\n";
    for (const auto& cell : cells) {
      write_file_atomic(cell.dir / "runs.csv", runs_table_csv(cell.reports));
      write_file_atomic(cell.dir / "aggregate.json", aggregate_to_json(cell.aggregate));
      write_file_atomic(cell.dir / "aggregate.csv", aggregate_to_csv(cell.aggregate));
      for (const auto& m : cell.aggregate.metrics)
        summary << cell.n << ',' << format_decimal(cell.epsilon) << ',' << cell.aggregate.seed_count << ',' << m.name
                << ',' << format_decimal(m.mean) << ',' << format_decimal(m.stddev) << ',' << format_decimal(m.min)
                << ',' << format_decimal(m.max) << ',' << format_decimal(m.ci_low) << ','
                << format_decimal(m.ci_high) << '\n';
    }
    write_file_atomic(*out_dir / "cells.csv", summary.str());
    write_file_atomic(*out_dir / "plot_stack.gp",
                      "# Normalized stack height at m1 per cell: gnuplot plot_stack.gp\n"
                      "set datafile separator ','\n"
                      "set xlabel 'epsilon'\n"
                      "set ylabel 'mean u_at_m1 / (epsilon^2 n)'\n"
                      "set key off\n"
                      "plot '< grep \",u_at_m1,\" cells.csv' using 2:($5/($2*$2*$1)) with points pt 7\n");
  }
  return cells;
}

}  // namespace

std::vector<SweepCell> run_sweep(const SweepSpec& spec, const std::filesystem::path& out_dir) {
  return execute(spec, &out_dir);
}

std::vector<SweepCell> run_campaign(const SweepSpec& spec) { return execute(spec, nullptr); }

}  // namespace dfsf
