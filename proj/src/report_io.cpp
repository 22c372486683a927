#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "dfsf/errors.hpp"
#include "dfsf/experiment.hpp"
#include "json.hpp"

namespace dfsf {

using Json = nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;

template <typename T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <typename T>
std::optional<T> get_opt(const Json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("report: missing field '") + key + "'");
  const Json& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<T>();
}

template <typename T>
T get(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) throw ConfigError(std::string("report: missing field '") + key + "'");
  return j.at(key).get<T>();
}

std::string csv_value(const std::optional<double>& v) { return v ? format_decimal(*v) : std::string(); }

}  // namespace

std::string format_decimal(double v) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  std::string general(buf.data(), res.ptr);
  if (general.find('e') == std::string::npos) return general;
  res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed);
  if (res.ec == std::errc()) return std::string(buf.data(), res.ptr);
  return general;
}

std::string report_to_json(const RunReport& r) {
  Json j;
  j["kind"] = "run_report";
  j["schema_version"] = kSchemaVersion;
  j["config"] = {{"n", r.config.n},
                 {"epsilon", opt(r.config.epsilon)},
                 {"p", opt(r.config.p)},
                 {"seed", r.config.seed},
                 {"engine", std::string(to_string(r.config.engine))},
                 {"checkpoint_stride", r.config.checkpoint_stride}};
  j["p"] = r.p;
  j["edge_count"] = r.edge_count;
  j["m1"] = opt(r.m1);
  j["m2"] = opt(r.m2);
  j["dfs_query_total"] = r.dfs_query_total;
  j["completion_queries"] = r.completion_queries;
  j["u_at_m1"] = opt(r.u_at_m1);
  j["q_UT_at_m1"] = opt(r.q_UT_at_m1);
  j["predicted_u_at_m1"] = opt(r.predicted_u_at_m1);
  j["max_U"] = r.max_U;
  j["max_U_moment"] = r.max_U_moment;
  j["longest_forest_path"] = r.longest_forest_path;
  j["excess_total"] = r.excess_total;
  j["giant_size"] = r.giant_size;
  j["second_size"] = r.second_size;
  j["component_count"] = r.component_count;
  j["giant_tie"] = r.giant_tie;
  j["T_p_at_m1"] = opt(r.T_p_at_m1);
  j["T_p_at_m2"] = opt(r.T_p_at_m2);
  j["class_at_m1"] = opt(r.class_at_m1);
  j["class_at_m2"] = opt(r.class_at_m2);
  j["residual_giant_at_m1"] = opt(r.residual_giant_at_m1);
  j["residual_second_at_m1"] = opt(r.residual_second_at_m1);
  j["residual_giant_at_m2"] = opt(r.residual_giant_at_m2);
  j["residual_second_at_m2"] = opt(r.residual_second_at_m2);
  j["first_giant_entry_m"] = opt(r.first_giant_entry_m);
  j["warning"] = r.warning;
  return j.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("report: invalid JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("kind", "") != "run_report") throw ConfigError("report: not a run report");
  if (j.value("schema_version", 0) != kSchemaVersion) throw ConfigError("report: unsupported schema version");
  try {
    RunReport r;
    const Json& c = j.at("config");
    r.config.n = get<uint32_t>(c, "n");
    r.config.epsilon = get_opt<double>(c, "epsilon");
    r.config.p = get_opt<double>(c, "p");
    r.config.seed = get<uint64_t>(c, "seed");
    r.config.engine = parse_engine(get<std::string>(c, "engine"));
    r.config.checkpoint_stride = get<uint64_t>(c, "checkpoint_stride");
    r.p = get<double>(j, "p");
    r.edge_count = get<uint64_t>(j, "edge_count");
    r.m1 = get_opt<uint64_t>(j, "m1");
    r.m2 = get_opt<uint64_t>(j, "m2");
    r.dfs_query_total = get<uint64_t>(j, "dfs_query_total");
    r.completion_queries = get<uint64_t>(j, "completion_queries");
    r.u_at_m1 = get_opt<uint64_t>(j, "u_at_m1");
    r.q_UT_at_m1 = get_opt<uint64_t>(j, "q_UT_at_m1");
    r.predicted_u_at_m1 = get_opt<double>(j, "predicted_u_at_m1");
    r.max_U = get<uint64_t>(j, "max_U");
    r.max_U_moment = get<uint64_t>(j, "max_U_moment");
    r.longest_forest_path = get<uint64_t>(j, "longest_forest_path");
    r.excess_total = get<int64_t>(j, "excess_total");
    r.giant_size = get<uint64_t>(j, "giant_size");
    r.second_size = get<uint64_t>(j, "second_size");
    r.component_count = get<uint64_t>(j, "component_count");
    r.giant_tie = get<bool>(j, "giant_tie");
    r.T_p_at_m1 = get_opt<double>(j, "T_p_at_m1");
    r.T_p_at_m2 = get_opt<double>(j, "T_p_at_m2");
    r.class_at_m1 = get_opt<std::string>(j, "class_at_m1");
    r.class_at_m2 = get_opt<std::string>(j, "class_at_m2");
    r.residual_giant_at_m1 = get_opt<uint64_t>(j, "residual_giant_at_m1");
    r.residual_second_at_m1 = get_opt<uint64_t>(j, "residual_second_at_m1");
    r.residual_giant_at_m2 = get_opt<uint64_t>(j, "residual_giant_at_m2");
    r.residual_second_at_m2 = get_opt<uint64_t>(j, "residual_second_at_m2");
    r.first_giant_entry_m = get_opt<uint64_t>(j, "first_giant_entry_m");
    r.warning = get<std::string>(j, "warning");
    if (r.config.epsilon.has_value() == r.config.p.has_value())
      throw ConfigError("report: config must carry exactly one of epsilon and p");
    return r;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("report: schema mismatch: ") + e.what());
  }
}

std::string aggregate_to_json(const AggregateReport& a) {
  Json j;
  j["kind"] = "aggregate_report";
  j["schema_version"] = kSchemaVersion;
  j["config"] = {{"n", a.config.n},
                 {"epsilon", opt(a.config.epsilon)},
                 {"p", opt(a.config.p)},
                 {"base_seed", a.config.seed},
                 {"engine", std::string(to_string(a.config.engine))},
                 {"checkpoint_stride", a.config.checkpoint_stride}};
  j["seed_count"] = a.seed_count;
  Json metrics = Json::object();
  for (const auto& m : a.metrics)
    metrics[m.name] = {{"count", m.count}, {"mean", m.mean},       {"stddev", m.stddev},  {"min", m.min},
                       {"max", m.max},     {"ci_low", m.ci_low},   {"ci_high", m.ci_high}};
  j["metrics"] = std::move(metrics);
  return j.dump(2) + "\n";
}

std::string aggregate_to_csv(const AggregateReport& a) {
  std::ostringstream out;
  out << "metric,count,mean,stddev,min,max,ci_low,ci_high\n";
  for (const auto& m : a.metrics)
    out << m.name << ',' << m.count << ',' << format_decimal(m.mean) << ',' << format_decimal(m.stddev) << ','
        << format_decimal(m.min) << ',' << format_decimal(m.max) << ',' << format_decimal(m.ci_low) << ','
        << format_decimal(m.ci_high) << '\n';
  return out.str();
}

std::string trajectory_to_csv(const std::vector<TrajectorySample>& samples) {
  std::ostringstream out;
  out << "m,size_S,size_U,size_T,q_ST,q_SU,q_UT\n";
  for (const auto& s : samples)
    out << s.m << ',' << s.size_S << ',' << s.size_U << ',' << s.size_T << ',' << s.ledger.q_ST << ','
        << s.ledger.q_SU << ',' << s.ledger.q_UT << '\n';
  return out.str();
}

std::string events_to_csv(const EventLog& log) {
  std::ostringstream out;
  out << "m,event_kind,vertex_or_pair,answer\n";
  for (const auto& e : log) {
    out << e.m << ',';
    switch (e.kind) {
      case EventKind::QueryAsked:
        out << "query," << e.a << '-' << e.b << ',' << (e.answer ? 1 : 0);
        break;
      case EventKind::VertexPushed:
        out << "push," << e.a << ',';
        break;
      case EventKind::VertexCompleted:
        out << "complete," << e.a << ',';
        break;
      case EventKind::RootSelected:
        out << "root," << e.a << ',';
        break;
    }
    out << '\n';
  }
  return out.str();
}

std::string runs_table_csv(const std::vector<RunReport>& reports) {
  std::ostringstream out;
  out << "seed,n,epsilon,p,engine";
  for (auto name : aggregated_metrics()) out << ',' << name;
  out << '\n';
  for (const auto& r : reports) {
    out << r.config.seed << ',' << r.config.n << ',' << csv_value(r.config.epsilon) << ',' << format_decimal(r.p)
        << ',' << to_string(r.config.engine);
    for (auto name : aggregated_metrics()) out << ',' << csv_value(metric_value(r, name));
    out << '\n';
  }
  return out.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out << content;
    if (!out) throw ConfigError("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace dfsf
