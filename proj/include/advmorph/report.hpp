#pragma once

// Report files. Layouts are fixed:
//   perturbations*.csv   part,length_pct,thickness_pct
//   rewards.csv          epsilon,kind,grand_mean
//   best_trace*.csv      generation,G_min
//   run_means*.csv       run,mean
//   grand_*.json         {epsilon, kind, grand_mean, run_means_file}
//   result.json          full dump; "created_at" is the only non-deterministic field

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>

#include "advmorph/sweep.hpp"

namespace advmorph {

/// Shortest round-trip decimal, always with a '.' or exponent ("0.0", "0.05").
std::string format_number(double v);

/// Writes through a temporary sibling file and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

std::string perturbations_csv(const ToyWalkerSpec& robot, const std::optional<VectorXd>& length_delta,
                              const std::optional<VectorXd>& thickness_delta);
/// Table for one epsilon, assembled from the sweep's cells at that epsilon.
std::string perturbations_csv(const SweepReport& report, double epsilon);
std::string rewards_csv(const SweepReport& report);
std::string best_trace_csv(const std::vector<double>& trace);
std::string run_means_csv(const std::vector<double>& run_means);

/// Epsilon whose table goes into perturbations.csv: 0.05 when swept,
/// otherwise the largest attacked epsilon.
std::optional<double> headline_epsilon(const SweepReport& report);

std::string cell_stem(const CellResult& cell);

nlohmann::json to_json(const SearchResult& result);
SearchResult search_result_from_json(const nlohmann::json& j);

nlohmann::json grand_average_json(double epsilon, const std::string& kind, const GrandAverage& grand,
                                  const std::string& run_means_file);

nlohmann::json to_json(const SweepReport& report, bool with_timestamp = true);
SweepReport sweep_report_from_json(const nlohmann::json& j);

/// Writes every report file for a finished sweep into `dir`.
void emit_reports(const SweepReport& report, const std::filesystem::path& dir);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace advmorph
