#include "advmorph/reward.hpp"

#include "advmorph/errors.hpp"

namespace advmorph {

double reward(RewardForm form, double v_fwd, double torque_sq, double impact_sq) {
  switch (form) {
    case RewardForm::Walker2d:
      return reward_walker2d_sq(v_fwd, torque_sq);
    case RewardForm::Ant:
      return reward_ant_sq(v_fwd, torque_sq, impact_sq);
    case RewardForm::Humanoid:
      return reward_humanoid_sq(v_fwd, torque_sq, impact_sq);
  }
  throw ContractViolation("unknown reward form");
}

std::string to_string(RewardForm form) {
  switch (form) {
    case RewardForm::Walker2d:
      return "walker2d";
    case RewardForm::Ant:
      return "ant";
    case RewardForm::Humanoid:
      return "humanoid";
  }
  return "?";
}

RewardForm reward_form_from_string(const std::string& s) {
  if (s == "walker2d") return RewardForm::Walker2d;
  if (s == "ant") return RewardForm::Ant;
  if (s == "humanoid") return RewardForm::Humanoid;
  throw ConfigError("unknown reward form '" + s + "' (expected walker2d|ant|humanoid)");
}

}  // namespace advmorph
