#pragma once

// Experiment configuration. JSON schema (every key optional):
//
//   {
//     "robot": "toy_biped" | "toy_quadruped" | "custom",
//     "robot_file": "configs/humanoid.json",        // required for "custom"
//     "gait": {"sigma": 0.0, ...},                  // overrides robot gait constants
//     "kinds": ["length", "thickness"],             // each length|thickness|both
//     "epsilons": [0.0, 0.01, 0.05, 0.1],
//     "de": {"population_size": 14, "F": 0.5, "CR": 0.7, "generations": 100},
//     "eval": {"episodes": 50, "horizon": 1000, "runs": 1000},
//     "output_dir": "out",
//     "master_seed": 1,
//     "parallel": false,
//     "threads": 1
//   }
//
// de.population_size defaults to the robot preset (14 biped, 26 quadruped).

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "advmorph/env.hpp"
#include "advmorph/toy_walker.hpp"

namespace advmorph {

enum class RobotChoice { ToyBiped, ToyQuadruped, Custom };

struct DESettings {
  std::optional<int> population_size;
  double F = 0.5;
  double CR = 0.7;
  int generations = 100;
};

struct EvalSettings {
  int episodes = 50;  // M
  int horizon = 1000;  // T
  int runs = 1000;
};

struct ExperimentConfig {
  RobotChoice robot = RobotChoice::ToyBiped;
  std::string robot_file;
  nlohmann::json gait_overrides = nlohmann::json::object();
  std::vector<AttackKind> kinds{AttackKind::Length, AttackKind::Thickness};
  std::vector<double> epsilons{0.0, 0.01, 0.05, 0.1};
  DESettings de;
  EvalSettings eval;
  std::string output_dir = "out";
  std::uint64_t master_seed = 1;
  bool parallel = false;
  int threads = 1;

  void validate() const;
};

ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {});
nlohmann::json to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::filesystem::path& path);

std::string to_string(RobotChoice robot);
RobotChoice robot_choice_from_string(const std::string& s);

/// Built-in or file-backed robot with gait overrides applied.
ToyWalkerSpec resolve_robot(const ExperimentConfig& config);

}  // namespace advmorph
