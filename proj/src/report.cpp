#include "advmorph/report.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

namespace advmorph {

namespace fs = std::filesystem;

std::string format_number(double v) {
  std::string s = fmt::format("{}", v);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

void write_atomic(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError(path.parent_path().string(), "cannot create directory: " + ec.message());
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(tmp.string(), "cannot open for writing");
    out << content;
    out.flush();
    if (!out) throw IoError(tmp.string(), "write failed");
  }
  fs::rename(tmp, path, ec);
  if (ec) throw IoError(path.string(), "rename failed: " + ec.message());
}

nlohmann::json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string(), "cannot open");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path.string(), std::string("invalid JSON: ") + e.what());
  }
}

void write_json_file(const fs::path& path, const nlohmann::json& j) {
  write_atomic(path, j.dump(2) + "\n");
}

std::string perturbations_csv(const ToyWalkerSpec& robot, const std::optional<VectorXd>& length_delta,
                              const std::optional<VectorXd>& thickness_delta) {
  auto column = [](const BodyShaped& shape, const std::optional<VectorXd>& delta) {
    std::vector<std::string> out(static_cast<std::size_t>(shape.size()));
    if (!delta) return out;
    // Rows only need signs and magnitudes; epsilon is irrelevant for the table.
    const double bound = delta->size() ? delta->cwiseAbs().maxCoeff() : 0.0;
    const auto rows = perturbation_report(shape, PerturbationVectord(*delta, bound));
    for (std::size_t i = 0; i < rows.size(); ++i) out[i] = format_percent(rows[i].percent);
    return out;
  };
  const auto lengths = column(robot.lengths, length_delta);
  const auto thicknesses = column(robot.thicknesses, thickness_delta);
  std::string csv = "part,length_pct,thickness_pct\n";
  for (std::size_t i = 0; i < robot.lengths.part_names().size(); ++i)
    csv += fmt::format("{},{},{}\n", robot.lengths.part_names()[i], lengths[i], thicknesses[i]);
  return csv;
}

std::string perturbations_csv(const SweepReport& report, double epsilon) {
  std::optional<VectorXd> length, thickness, joint;
  for (const auto& c : report.cells) {
    if (c.epsilon != epsilon || !c.ok || !c.search) continue;
    if (c.kind == "length") length = c.search->delta_best;
    if (c.kind == "thickness") thickness = c.search->delta_best;
    if (c.kind == "both") joint = c.search->delta_best;
  }
  const auto n = report.robot.lengths.size();
  if (joint && !length) length = joint->head(n);
  if (joint && !thickness) thickness = joint->tail(n);
  return perturbations_csv(report.robot, length, thickness);
}

std::string rewards_csv(const SweepReport& report) {
  std::string csv = "epsilon,kind,grand_mean\n";
  for (const auto& c : report.cells)
    csv += fmt::format("{},{},{}\n", format_number(c.epsilon), c.kind,
                       c.grand ? format_number(c.grand->mean) : std::string());
  return csv;
}

std::string best_trace_csv(const std::vector<double>& trace) {
  std::string csv = "generation,G_min\n";
  for (std::size_t g = 0; g < trace.size(); ++g) csv += fmt::format("{},{}\n", g, format_number(trace[g]));
  return csv;
}

std::string run_means_csv(const std::vector<double>& run_means) {
  std::string csv = "run,mean\n";
  for (std::size_t i = 0; i < run_means.size(); ++i)
    csv += fmt::format("{},{}\n", i, format_number(run_means[i]));
  return csv;
}

std::optional<double> headline_epsilon(const SweepReport& report) {
  std::optional<double> best;
  for (const auto& c : report.cells) {
    if (c.kind == kCleanKind) continue;
    if (c.epsilon == 0.05) return 0.05;
    if (!best || c.epsilon > *best) best = c.epsilon;
  }
  return best;
}

std::string cell_stem(const CellResult& cell) {
  return fmt::format("{}_eps{}", cell.kind, format_number(cell.epsilon));
}

namespace {

std::vector<double> to_std(const VectorXd& v) { return {v.data(), v.data() + v.size()}; }

VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

nlohmann::json to_json(const SearchResult& r) {
  nlohmann::json population = nlohmann::json::array();
  for (Eigen::Index i = 0; i < r.population_final.cols(); ++i)
    population.push_back(to_std(r.population_final.col(i)));
  return {
      {"delta_best", to_std(r.delta_best)},
      {"epsilon", r.epsilon},
      {"G_min", r.g_min},
      {"best_trace", r.best_trace},
      {"evaluations", r.evaluations},
      {"accepted_per_generation", r.accepted_per_generation},
      {"population_final", population},
  };
}

SearchResult search_result_from_json(const nlohmann::json& j) {
  try {
    SearchResult r;
    r.delta_best = to_eigen(j.at("delta_best").get<std::vector<double>>());
    r.epsilon = j.value("epsilon", 0.0);
    r.g_min = j.at("G_min").get<double>();
    r.best_trace = j.value("best_trace", std::vector<double>{});
    r.evaluations = j.value("evaluations", std::int64_t{0});
    r.accepted_per_generation = j.value("accepted_per_generation", std::vector<int>{});
    if (j.contains("population_final")) {
      const auto pop = j["population_final"].get<std::vector<std::vector<double>>>();
      if (!pop.empty()) {
        r.population_final.resize(static_cast<Eigen::Index>(pop.front().size()),
                                  static_cast<Eigen::Index>(pop.size()));
        for (std::size_t i = 0; i < pop.size(); ++i)
          r.population_final.col(static_cast<Eigen::Index>(i)) = to_eigen(pop[i]);
      }
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed search result: ") + e.what());
  }
}

nlohmann::json grand_average_json(double epsilon, const std::string& kind, const GrandAverage& grand,
                                  const std::string& run_means_file) {
  return {{"epsilon", epsilon},
          {"kind", kind},
          {"grand_mean", grand.mean},
          {"run_means_file", run_means_file}};
}

nlohmann::json to_json(const SweepReport& report, bool with_timestamp) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : report.cells) {
    nlohmann::json cell{{"epsilon", c.epsilon}, {"kind", c.kind}, {"ok", c.ok}};
    if (!c.error.empty()) cell["error"] = c.error;
    if (c.grand) {
      cell["grand_mean"] = c.grand->mean;
      cell["run_means"] = c.grand->run_means;
    }
    if (c.search) cell["search"] = to_json(*c.search);
    cells.push_back(std::move(cell));
  }
  nlohmann::json j{
      {"config", to_json(report.config)},
      {"robot", to_json(report.robot)},
      {"cells", cells},
      {"all_ok", report.all_ok()},
  };
  if (with_timestamp) j["created_at"] = timestamp_utc();
  return j;
}

SweepReport sweep_report_from_json(const nlohmann::json& j) {
  try {
    SweepReport report{config_from_json(j.at("config")), toy_walker_spec_from_json(j.at("robot")), {}};
    for (const auto& c : j.at("cells")) {
      CellResult cell;
      cell.epsilon = c.at("epsilon").get<double>();
      cell.kind = c.at("kind").get<std::string>();
      cell.ok = c.value("ok", false);
      cell.error = c.value("error", std::string());
      if (c.contains("grand_mean"))
        cell.grand = GrandAverage{c["grand_mean"].get<double>(),
                                  c.value("run_means", std::vector<double>{})};
      if (c.contains("search")) cell.search = search_result_from_json(c["search"]);
      report.cells.push_back(std::move(cell));
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed result.json: ") + e.what());
  }
}

void emit_reports(const SweepReport& report, const fs::path& dir) {
  for (const auto& c : report.cells) {
    const std::string stem = cell_stem(c);
    if (c.grand) {
      const std::string means = "run_means_" + stem + ".csv";
      write_atomic(dir / means, run_means_csv(c.grand->run_means));
      write_json_file(dir / ("grand_" + stem + ".json"),
                      grand_average_json(c.epsilon, c.kind, *c.grand, means));
    }
    if (c.search) write_atomic(dir / ("best_trace_" + stem + ".csv"), best_trace_csv(c.search->best_trace));
  }
  std::vector<double> attacked;
  for (const auto& c : report.cells)
    if (c.kind != kCleanKind && std::find(attacked.begin(), attacked.end(), c.epsilon) == attacked.end())
      attacked.push_back(c.epsilon);
  for (double eps : attacked)
    write_atomic(dir / fmt::format("perturbations_eps{}.csv", format_number(eps)),
                 perturbations_csv(report, eps));
  const auto headline = headline_epsilon(report);
  write_atomic(dir / "perturbations.csv",
               headline ? perturbations_csv(report, *headline)
                        : perturbations_csv(report.robot, std::nullopt, std::nullopt));
  write_atomic(dir / "rewards.csv", rewards_csv(report));
  write_json_file(dir / "result.json", to_json(report));
  spdlog::info("reports written to {}", dir.string());
}

}  // namespace advmorph
