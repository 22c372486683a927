#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "dfsf/errors.hpp"
#include "dfsf/experiment.hpp"

namespace dfsf {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Cell {
  uint32_t n;
  double epsilon;
  std::vector<const RunReport*> runs;

  std::string name() const { return "n=" + std::to_string(n) + " eps=" + format_decimal(epsilon); }
  double scale() const { return epsilon * epsilon * n; }
  double eps3n() const { return epsilon * epsilon * epsilon * n; }
};

const RunReport& require_m1(const RunReport& r) {
  if (!r.u_at_m1 || !r.q_UT_at_m1 || !r.T_p_at_m1 || !r.T_p_at_m2)
    throw ConfigError("verify: report for seed " + std::to_string(r.config.seed) + " lacks the m1/m2 readings");
  return r;
}

// Relative deviation of the mean of `value` from eps^2 n.
double mean_deviation(const Cell& c, uint64_t (*value)(const RunReport&)) {
  double sum = 0.0;
  for (const auto* r : c.runs) sum += static_cast<double>(value(*r));
  return std::abs(sum / static_cast<double>(c.runs.size()) / c.scale() - 1.0);
}

}  // namespace

bool VerifyResult::all_passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.passed; });
}

std::string VerifyResult::table() const {
  size_t w_crit = 9, w_cell = 4;
  for (const auto& r : rows) {
    w_crit = std::max(w_crit, r.criterion.size());
    w_cell = std::max(w_cell, r.cell.size());
  }
  std::ostringstream out;
  auto pad = [](const std::string& s, size_t w) { return s + std::string(w > s.size() ? w - s.size() : 0, ' '); };
  out << pad("criterion", w_crit) << "  " << pad("cell", w_cell) << "  result  detail\n";
  for (const auto& r : rows)
    out << pad(r.criterion, w_crit) << "  " << pad(r.cell, w_cell) << "  " << (r.passed ? "PASS  " : "FAIL  ") << "  "
        << r.detail << '\n';
  return out.str();
}

VerifyResult verify_reports(const std::vector<RunReport>& reports) {
  if (reports.empty()) throw ConfigError("verify: no reports");
  VerifyResult result;
  auto row = [&](std::string criterion, std::string cell, bool ok, std::string detail) {
    result.rows.push_back({std::move(criterion), std::move(cell), ok, std::move(detail)});
  };

  std::map<std::pair<uint32_t, double>, Cell> cells;
  std::vector<const RunReport*> without_epsilon;
  for (const auto& r : reports) {
    if (r.config.epsilon) {
      auto& c = cells.try_emplace({r.config.n, *r.config.epsilon}, Cell{r.config.n, *r.config.epsilon, {}})
                    .first->second;
      c.runs.push_back(&require_m1(r));
    } else {
      without_epsilon.push_back(&r);
    }
  }

  auto forest_row = [&](const std::string& name, const std::vector<const RunReport*>& runs) {
    uint64_t bad = 0, strict = 0;
    for (const auto* r : runs) {
      if (r->longest_forest_path + 1 < r->max_U) ++bad;
      if (r->longest_forest_path + 1 > r->max_U) ++strict;
    }
    row("forest_path_covers_stack", name, bad == 0,
        std::to_string(runs.size() - bad) + "/" + std::to_string(runs.size()) + " runs, " + std::to_string(strict) +
            " with path longer than max_U-1");
  };

  std::map<double, std::vector<double>> deviation_by_eps;
  for (const auto& [key, c] : cells) {
    const std::string name = c.name();
    const double n = c.n;
    const double eps = c.epsilon;
    const size_t k = c.runs.size();
    auto count = [&](auto pred) {
      return static_cast<uint64_t>(std::count_if(c.runs.begin(), c.runs.end(), [&](const RunReport* r) { return pred(*r); }));
    };
    auto tally = [&](uint64_t ok) { return std::to_string(ok) + "/" + std::to_string(k) + " runs"; };

    const double dev_u = mean_deviation(c, [](const RunReport& r) { return *r.u_at_m1; });
    deviation_by_eps[eps].push_back(dev_u);
    row("stack_at_m1", name, dev_u <= 5 * eps,
        "|mean u_at_m1/(eps^2 n) - 1| = " + fmt(dev_u) + " <= " + fmt(5 * eps));

    const double dev_max = mean_deviation(c, [](const RunReport& r) { return r.max_U; });
    row("max_stack", name, dev_max <= 5 * eps,
        "|mean max_U/(eps^2 n) - 1| = " + fmt(dev_max) + " <= " + fmt(5 * eps));
    forest_row(name, c.runs);

    const uint64_t bracket_ok = count([&](const RunReport& r) {
      const double u = static_cast<double>(*r.u_at_m1);
      const double q = static_cast<double>(*r.q_UT_at_m1) / n;
      return u / 2 - 8 * c.eps3n() <= q && q <= (1 + eps) * u / 2;
    });
    const uint64_t allowed_misses = k / 20;
    row("q_UT_bracket", name, k - bracket_ok <= allowed_misses,
        tally(bracket_ok) + " inside [u/2 - 8 eps^3 n, (1+eps) u/2], need >= " + std::to_string(k - allowed_misses));

    double worst_identity = 0.0;
    const uint64_t identity_ok = count([&](const RunReport& r) {
      const double pred = eps * eps * n / 2 + static_cast<double>(*r.q_UT_at_m1) / n;
      const double resid = std::abs(static_cast<double>(*r.u_at_m1) - pred);
      worst_identity = std::max(worst_identity, resid);
      return resid <= 10 * c.eps3n();
    });
    row("stack_identity", name, identity_ok == k,
        tally(identity_ok) + ", worst |u - (eps^2 n/2 + q_UT/n)| = " + fmt(worst_identity) + " <= " +
            fmt(10 * c.eps3n()));

    int64_t worst_excess = 0;
    const uint64_t excess_ok = count([&](const RunReport& r) {
      worst_excess = std::max(worst_excess, r.excess_total);
      return static_cast<double>(r.excess_total) <= 6 * c.eps3n();
    });
    row("excess_bound", name, excess_ok == k,
        tally(excess_ok) + ", max excess " + std::to_string(worst_excess) + " <= " + fmt(6 * c.eps3n()));

    const double slack = std::sqrt(std::log(n) / n);
    const double lo = 1 + eps * eps * eps - 5 * slack;
    const double hi = 1 - eps * eps * eps * eps + 4 * slack;
    double min_tp1 = INFINITY, max_tp2 = -INFINITY;
    const uint64_t crit_ok = count([&](const RunReport& r) {
      min_tp1 = std::min(min_tp1, *r.T_p_at_m1);
      max_tp2 = std::max(max_tp2, *r.T_p_at_m2);
      return *r.T_p_at_m1 >= lo && *r.T_p_at_m2 <= hi;
    });
    row("criticality", name, crit_ok == k,
        tally(crit_ok) + ", min |T(m1)|p " + fmt(min_tp1) + " >= " + fmt(lo) + ", max |T(m2)|p " + fmt(max_tp2) +
            " <= " + fmt(hi));

    const double onset_limit = n * std::log(n) * std::log(n);
    const uint64_t onset_ok = count([&](const RunReport& r) {
      return r.first_giant_entry_m && static_cast<double>(*r.first_giant_entry_m) <= onset_limit;
    });
    row("giant_onset", name, onset_ok == k, tally(onset_ok) + " enter the giant by n ln^2 n = " + fmt(onset_limit));
  }

  if (deviation_by_eps.size() >= 2) {
    auto mean = [](const std::vector<double>& v) {
      double s = 0;
      for (double x : v) s += x;
      return s / static_cast<double>(v.size());
    };
    const auto& [eps_lo, dev_lo] = *deviation_by_eps.begin();
    const auto& [eps_hi, dev_hi] = *deviation_by_eps.rbegin();
    const double a = mean(dev_lo), b = mean(dev_hi);
    row("stack_trend", "eps=" + format_decimal(eps_lo) + " vs eps=" + format_decimal(eps_hi), a < b,
        "deviation " + fmt(a) + " < " + fmt(b));
  }
  if (!without_epsilon.empty()) forest_row("explicit p", without_epsilon);
  return result;
}

std::vector<RunReport> load_reports(const std::vector<std::filesystem::path>& paths) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::recursive_directory_iterator(p))
        if (entry.is_regular_file() && entry.path().extension() == ".json") found.push_back(entry.path());
      std::sort(found.begin(), found.end());
      for (auto& f : found) {
        // Directory scans skip aggregates and other JSON files.
        if (read_file(f).find("\"run_report\"") != std::string::npos) files.push_back(std::move(f));
      }
    } else if (fs::exists(p)) {
      files.push_back(p);
    } else {
      throw ConfigError("no such report: " + p.string());
    }
  }
  if (files.empty()) throw ConfigError("verify: no run reports found");
  std::vector<RunReport> reports;
  reports.reserve(files.size());
  for (const auto& f : files) {
    try {
      reports.push_back(report_from_json(read_file(f)));
    } catch (const ConfigError& e) {
      throw ConfigError(f.string() + ": " + e.what());
    }
  }
  return reports;
}

}  // namespace dfsf
