#include "advmorph/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace advmorph {

std::string to_string(RobotChoice robot) {
  switch (robot) {
    case RobotChoice::ToyBiped:
      return "toy_biped";
    case RobotChoice::ToyQuadruped:
      return "toy_quadruped";
    case RobotChoice::Custom:
      return "custom";
  }
  return "?";
}

RobotChoice robot_choice_from_string(const std::string& s) {
  if (s == "toy_biped") return RobotChoice::ToyBiped;
  if (s == "toy_quadruped") return RobotChoice::ToyQuadruped;
  if (s == "custom") return RobotChoice::Custom;
  throw ConfigError("unknown robot '" + s + "' (expected toy_biped|toy_quadruped|custom)");
}

void ExperimentConfig::validate() const {
  if (robot == RobotChoice::Custom && robot_file.empty())
    throw ConfigError("robot 'custom' needs robot_file");
  if (kinds.empty()) throw ConfigError("at least one attack kind is required");
  if (epsilons.empty()) throw ConfigError("at least one epsilon is required");
  for (double e : epsilons)
    if (!(e >= 0.0 && e < 1.0)) throw ConfigError("every epsilon must lie in [0, 1)");
  if (de.population_size && *de.population_size < 4)
    throw ConfigError("de.population_size must be at least 4");
  if (!(de.F > 0.0)) throw ConfigError("de.F must be positive");
  if (!(de.CR >= 0.0 && de.CR <= 1.0)) throw ConfigError("de.CR must lie in [0, 1]");
  if (de.generations < 0) throw ConfigError("de.generations must be non-negative");
  if (eval.episodes < 1 || eval.horizon < 1 || eval.runs < 1)
    throw ConfigError("eval.episodes, eval.horizon and eval.runs must be at least 1");
  if (threads < 0) throw ConfigError("threads must be non-negative");
}

namespace {

void check_keys(const nlohmann::json& j, const std::vector<std::string>& known, const std::string& where) {
  if (!j.is_object())
    throw ConfigError((where.empty() ? std::string("configuration") : where) + " must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError("unknown configuration key '" + where + key + "'");
}

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig c) {
  check_keys(j,
             {"robot", "robot_file", "gait", "kinds", "epsilons", "de", "eval", "output_dir",
              "master_seed", "parallel", "threads"},
             "");
  if (j.contains("de")) check_keys(j["de"], {"population_size", "F", "CR", "generations"}, "de.");
  if (j.contains("eval")) check_keys(j["eval"], {"episodes", "horizon", "runs"}, "eval.");
  try {
    if (j.contains("robot")) c.robot = robot_choice_from_string(j["robot"].get<std::string>());
    if (j.contains("robot_file")) c.robot_file = j["robot_file"].get<std::string>();
    if (j.contains("gait")) c.gait_overrides = j["gait"];
    if (j.contains("kinds")) {
      c.kinds.clear();
      for (const auto& k : j["kinds"]) c.kinds.push_back(attack_kind_from_string(k.get<std::string>()));
    }
    if (j.contains("epsilons")) c.epsilons = j["epsilons"].get<std::vector<double>>();
    if (j.contains("de")) {
      const auto& d = j["de"];
      if (d.contains("population_size")) c.de.population_size = d["population_size"].get<int>();
      c.de.F = d.value("F", c.de.F);
      c.de.CR = d.value("CR", c.de.CR);
      c.de.generations = d.value("generations", c.de.generations);
    }
    if (j.contains("eval")) {
      const auto& e = j["eval"];
      c.eval.episodes = e.value("episodes", c.eval.episodes);
      c.eval.horizon = e.value("horizon", c.eval.horizon);
      c.eval.runs = e.value("runs", c.eval.runs);
    }
    c.output_dir = j.value("output_dir", c.output_dir);
    c.master_seed = j.value("master_seed", c.master_seed);
    c.parallel = j.value("parallel", c.parallel);
    c.threads = j.value("threads", c.threads);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.what());
  }
  c.validate();
  return c;
}

nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json kinds = nlohmann::json::array();
  for (auto k : c.kinds) kinds.push_back(to_string(k));
  nlohmann::json de{{"F", c.de.F}, {"CR", c.de.CR}, {"generations", c.de.generations}};
  if (c.de.population_size) de["population_size"] = *c.de.population_size;
  nlohmann::json j{
      {"robot", to_string(c.robot)},
      {"gait", c.gait_overrides},
      {"kinds", kinds},
      {"epsilons", c.epsilons},
      {"de", de},
      {"eval", {{"episodes", c.eval.episodes}, {"horizon", c.eval.horizon}, {"runs", c.eval.runs}}},
      {"master_seed", c.master_seed},
  };
  if (!c.robot_file.empty()) j["robot_file"] = c.robot_file;
  return j;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string(), "cannot open configuration");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path.string(), std::string("invalid JSON: ") + e.what());
  }
  auto config = config_from_json(j);
  // Relative robot files resolve against the configuration's directory.
  if (!config.robot_file.empty() && std::filesystem::path(config.robot_file).is_relative() &&
      !std::filesystem::exists(config.robot_file))
    config.robot_file = (path.parent_path() / config.robot_file).string();
  return config;
}

ToyWalkerSpec resolve_robot(const ExperimentConfig& config) {
  ToyWalkerSpec spec = [&] {
    switch (config.robot) {
      case RobotChoice::ToyBiped:
        return toy_biped();
      case RobotChoice::ToyQuadruped:
        return toy_quadruped();
      case RobotChoice::Custom:
        return load_robot_file(config.robot_file);
    }
    throw ConfigError("unknown robot");
  }();
  spec.gait = gait_constants_from_json(config.gait_overrides, spec.gait);
  if (config.de.population_size) spec.population_size = *config.de.population_size;
  spec.validate();
  return spec;
}

}  // namespace advmorph
