#include "advmorph/toy_walker.hpp"

#include <cmath>
#include <fstream>

#include "advmorph/body_io.hpp"

namespace advmorph {
namespace {

Mask all_true(Eigen::Index n) { return Mask::Constant(n, true); }

BodyShaped make_shape(const std::vector<double>& values, const std::vector<std::string>& names,
                      const std::vector<MirrorPair>& pairs, DimensionKind kind, Mask mask) {
  return BodyShaped(Eigen::Map<const VectorXd>(values.data(), static_cast<Eigen::Index>(values.size())),
                    names, pairs, kind, std::move(mask));
}

}  // namespace

void GaitConstants::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(std::string("gait constants: ") + what);
  };
  require(v0 > 0.0, "v0 must be positive");
  require(k_a >= 0.0, "k_a must be non-negative");
  require(k_m >= 0.0, "k_m must be non-negative");
  require(lambda >= 0.0 && lambda < 1.0, "lambda must lie in [0, 1)");
  require(c_tilt >= 0.0, "c_tilt must be non-negative");
  require(theta_max > 0.0, "theta_max must be positive");
  require(sigma >= 0.0, "sigma must be non-negative");
  require(rho > 0.0, "rho must be positive");
}

void ToyWalkerSpec::validate() const {
  gait.validate();
  if (lengths.kind() != DimensionKind::Length || thicknesses.kind() != DimensionKind::Thickness)
    throw ConfigError("robot '" + name + "': shapes must be one length and one thickness vector");
  if (lengths.size() != thicknesses.size() || lengths.part_names() != thicknesses.part_names())
    throw ConfigError("robot '" + name + "': length and thickness shapes must list the same parts");
  if (population_size < 4) throw ConfigError("robot '" + name + "': population_size must be >= 4");
}

ToyWalkerSpec toy_biped() {
  const std::vector<std::string> names{"torso",      "right thigh", "right leg", "right foot",
                                       "left thigh", "left leg",    "left foot"};
  const std::vector<MirrorPair> pairs{{1, 4}, {2, 5}, {3, 6}};
  return ToyWalkerSpec{
      "toy_biped",
      make_shape({0.40, 0.45, 0.50, 0.20, 0.45, 0.50, 0.20}, names, pairs, DimensionKind::Length,
                 all_true(7)),
      make_shape({0.05, 0.05, 0.04, 0.06, 0.05, 0.04, 0.06}, names, pairs,
                 DimensionKind::Thickness, all_true(7)),
      GaitConstants{},
      RewardForm::Walker2d,
      14,
  };
}

ToyWalkerSpec toy_quadruped() {
  std::vector<std::string> names{"torso"};
  for (const char* leg : {"left front", "right front", "left back", "right back"})
    for (const char* seg : {"thigh", "leg", "foot"}) names.push_back(std::string(leg) + " " + seg);
  // Diagonal gait pairs: left front with right back, right front with left back.
  const std::vector<MirrorPair> pairs{{1, 10}, {2, 11}, {3, 12}, {4, 7}, {5, 8}, {6, 9}};
  const double hip = 0.2 * std::sqrt(2.0);
  const double ankle = 0.4 * std::sqrt(2.0);
  std::vector<double> lengths{0.25};
  for (int leg = 0; leg < 4; ++leg) lengths.insert(lengths.end(), {hip, hip, ankle});
  Mask length_mask = all_true(13);
  length_mask[0] = false;  // spherical torso has no length
  return ToyWalkerSpec{
      "toy_quadruped",
      make_shape(lengths, names, pairs, DimensionKind::Length, length_mask),
      make_shape(std::vector<double>(13, 0.08), names, pairs, DimensionKind::Thickness,
                 all_true(13)),
      GaitConstants{},
      RewardForm::Ant,
      26,
  };
}

nlohmann::json to_json(const GaitConstants& g) {
  return {{"v0", g.v0},         {"k_a", g.k_a},         {"k_m", g.k_m},
          {"lambda", g.lambda}, {"c_tilt", g.c_tilt},   {"theta_max", g.theta_max},
          {"sigma", g.sigma},   {"rho", g.rho}};
}

GaitConstants gait_constants_from_json(const nlohmann::json& j, GaitConstants g) {
  if (!j.is_object()) throw ConfigError("gait constants must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number()) throw ConfigError("gait constant '" + key + "' must be a number");
    const double v = value.get<double>();
    if (key == "v0") g.v0 = v;
    else if (key == "k_a") g.k_a = v;
    else if (key == "k_m") g.k_m = v;
    else if (key == "lambda") g.lambda = v;
    else if (key == "c_tilt") g.c_tilt = v;
    else if (key == "theta_max") g.theta_max = v;
    else if (key == "sigma") g.sigma = v;
    else if (key == "rho") g.rho = v;
    else throw ConfigError("unknown gait constant '" + key + "'");
  }
  g.validate();
  return g;
}

nlohmann::json to_json(const ToyWalkerSpec& spec) {
  auto lengths = to_json(spec.lengths);
  auto thicknesses = to_json(spec.thicknesses);
  return {
      {"name", spec.name},
      {"reward", to_string(spec.reward)},
      {"population_size", spec.population_size},
      {"part_names", spec.lengths.part_names()},
      {"mirror_pairs", mirror_pairs_to_json(spec.lengths.mirror_pairs())},
      {"length", {{"values", lengths["values"]}, {"attackable", lengths["attackable"]}}},
      {"thickness", {{"values", thicknesses["values"]}, {"attackable", thicknesses["attackable"]}}},
      {"gait", to_json(spec.gait)},
  };
}

ToyWalkerSpec toy_walker_spec_from_json(const nlohmann::json& j) {
  try {
    auto shape = [&](const char* key, const char* kind) {
      nlohmann::json s = j.at(key);
      s["kind"] = kind;
      s["part_names"] = j.at("part_names");
      s["mirror_pairs"] = j.value("mirror_pairs", nlohmann::json::array());
      return body_shape_from_json(s);
    };
    ToyWalkerSpec spec{
        j.value("name", std::string("custom")),
        shape("length", "length"),
        shape("thickness", "thickness"),
        gait_constants_from_json(j.value("gait", nlohmann::json::object())),
        reward_form_from_string(j.value("reward", std::string("walker2d"))),
        j.value("population_size", 14),
    };
    spec.validate();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed robot definition: ") + e.what());
  }
}

ToyWalkerSpec load_robot_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string(), "cannot open robot file");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path.string(), std::string("invalid JSON: ") + e.what());
  }
  try {
    return toy_walker_spec_from_json(j);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

double asymmetry(const VectorXd& lengths, const std::vector<MirrorPair>& pairs) {
  double a = 0.0;
  for (const auto& p : pairs) {
    const double l = lengths[p.left];
    const double r = lengths[p.right];
    a += std::abs(l - r) / (l + r);
  }
  return a;
}

double body_mass(const VectorXd& lengths, const VectorXd& thicknesses, double rho) {
  return rho * lengths.dot(thicknesses);
}

ToyGeometry toy_geometry(const Morphology& morphology, const ToyWalkerSpec& spec) {
  const auto& g = spec.gait;
  const double m0 = body_mass(spec.lengths.values(), spec.thicknesses.values(), g.rho);
  const double m = body_mass(morphology.length.values, morphology.thickness.values, g.rho);
  ToyGeometry geo;
  geo.asymmetry = asymmetry(morphology.length.values, spec.lengths.mirror_pairs());
  geo.mass_ratio = m / m0;
  geo.forward_velocity = g.v0 * std::exp(-g.k_a * geo.asymmetry) * std::pow(m0 / m, g.k_m);
  if (!std::isfinite(geo.forward_velocity) || !std::isfinite(geo.mass_ratio))
    throw SimulationDiverged("toy walker: non-finite geometry for robot '" + spec.name + "'");
  return geo;
}

ToyStep toy_step(double theta, const ToyGeometry& geometry, const GaitConstants& gait,
                 RewardForm form, double eta) {
  ToyStep s;
  s.theta = gait.lambda * theta + gait.c_tilt * geometry.asymmetry + gait.sigma * eta;
  if (!std::isfinite(s.theta)) throw SimulationDiverged("toy walker: tilt became non-finite");
  const double torque_sq = geometry.mass_ratio * geometry.mass_ratio;
  const double impact_sq = torque_sq * (1.0 + std::abs(s.theta) / gait.theta_max);
  s.forward_velocity = geometry.forward_velocity;
  s.reward = reward(form, geometry.forward_velocity, torque_sq, impact_sq);
  s.terminated = std::abs(s.theta) >= gait.theta_max;
  return s;
}

ToyStep toy_step(double theta, const ToyGeometry& geometry, const GaitConstants& gait,
                 RewardForm form, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  return toy_step(theta, geometry, gait, form, normal(rng));
}

ToyWalkerEnv::ToyWalkerEnv(ToyWalkerSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

State ToyWalkerEnv::reset(const Morphology& morphology, std::uint64_t) {
  if (morphology.length.values.size() != spec_.lengths.size() ||
      morphology.thickness.values.size() != spec_.thicknesses.size())
    throw ContractViolation("toy walker: morphology does not match robot '" + spec_.name + "'");
  geometry_ = toy_geometry(morphology, spec_);
  return State::Zero(1);
}

StepResult ToyWalkerEnv::step(const State& state, const Action& action) {
  if (state.size() != 1) throw ContractViolation("toy walker: state must be [theta]");
  if (!std::isfinite(state[0])) throw SimulationDiverged("toy walker: non-finite state");
  const double eta = action.size() > 0 ? action[0] : 0.0;
  const ToyStep s = toy_step(state[0], geometry_, spec_.gait, spec_.reward, eta);
  StepResult r;
  r.state = State::Constant(1, s.theta);
  r.reward = s.reward;
  r.terminated = s.terminated;
  r.forward_velocity = s.forward_velocity;
  return r;
}

std::unique_ptr<Environment> ToyWalkerEnv::clone() const {
  return std::make_unique<ToyWalkerEnv>(*this);
}

}  // namespace advmorph
