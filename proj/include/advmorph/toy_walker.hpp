#pragma once

// Closed-form walker used in place of a physics engine.
//
// Per morphology:
//   A     = sum over mirror pairs of |l_i - l_j| / (l_i + l_j)
//   m     = rho * sum_i length_i * thickness_i       (m0 for the clean body)
//   v_fwd = v0 * exp(-k_a A) * (m0 / m)^k_m
// Per step, with eta ~ N(0, 1) from the policy:
//   theta' = lambda theta + c_tilt A + sigma eta
//   |u|^2  = (m / m0)^2,   |f|^2 = (m / m0)^2 (1 + |theta'| / theta_max)
//   terminated iff |theta'| >= theta_max

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>

#include "advmorph/env.hpp"
#include "advmorph/reward.hpp"

namespace advmorph {

struct GaitConstants {
  double v0 = 1.0;
  double k_a = 20.0;
  double k_m = 1.0;
  double lambda = 0.9;
  double c_tilt = 2.0;
  double theta_max = 1.0;
  double sigma = 0.05;
  double rho = 1.0;

  void validate() const;
};

struct ToyWalkerSpec {
  std::string name;
  BodyShaped lengths;
  BodyShaped thicknesses;
  GaitConstants gait;
  RewardForm reward = RewardForm::Walker2d;
  int population_size = 14;  // DE population preset for this robot

  void validate() const;
};

/// 7 parts: torso, right/left thigh, leg, foot; walker2d reward, NP = 14.
ToyWalkerSpec toy_biped();
/// 13 parts: torso plus four thigh/leg/foot chains; torso length is not
/// attackable; asymmetry pairs are the diagonal legs; ant reward, NP = 26.
ToyWalkerSpec toy_quadruped();

nlohmann::json to_json(const ToyWalkerSpec& spec);
nlohmann::json to_json(const GaitConstants& gait);
ToyWalkerSpec toy_walker_spec_from_json(const nlohmann::json& j);
/// Overrides only the constants present in `j`.
GaitConstants gait_constants_from_json(const nlohmann::json& j, GaitConstants base = {});
ToyWalkerSpec load_robot_file(const std::filesystem::path& path);

double asymmetry(const VectorXd& lengths, const std::vector<MirrorPair>& pairs);
double body_mass(const VectorXd& lengths, const VectorXd& thicknesses, double rho);

struct ToyGeometry {
  double asymmetry = 0.0;
  double mass_ratio = 1.0;  // m / m0
  double forward_velocity = 0.0;
};

ToyGeometry toy_geometry(const Morphology& morphology, const ToyWalkerSpec& spec);

struct ToyStep {
  double theta = 0.0;
  double reward = 0.0;
  bool terminated = false;
  double forward_velocity = 0.0;
};

/// One step of the closed-form model with an explicit disturbance draw.
ToyStep toy_step(double theta, const ToyGeometry& geometry, const GaitConstants& gait,
                 RewardForm form, double eta);
/// Same, drawing eta from `rng`.
ToyStep toy_step(double theta, const ToyGeometry& geometry, const GaitConstants& gait,
                 RewardForm form, Rng& rng);

/// State vector is [theta]. Reads action[0] as the standard-normal disturbance.
class ToyWalkerEnv final : public Environment {
 public:
  explicit ToyWalkerEnv(ToyWalkerSpec spec);

  State reset(const Morphology& morphology, std::uint64_t seed) override;
  StepResult step(const State& state, const Action& action) override;
  std::unique_ptr<Environment> clone() const override;

  const ToyWalkerSpec& spec() const noexcept { return spec_; }
  const ToyGeometry& geometry() const noexcept { return geometry_; }

 private:
  ToyWalkerSpec spec_;
  ToyGeometry geometry_;
};

}  // namespace advmorph
