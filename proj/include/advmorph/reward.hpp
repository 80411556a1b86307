#pragma once

// Per-step locomotion rewards for the three robot families. Each form takes the
// forward velocity, the joint-torque vector u and (where used) the impact
// force vector f. The *_sq overloads take squared norms directly.

#include <Eigen/Core>

#include <string>

namespace advmorph {

enum class RewardForm { Walker2d, Ant, Humanoid };

inline double reward_walker2d_sq(double v_fwd, double torque_sq) {
  return v_fwd - 1e-3 * torque_sq + 1.0;
}

inline double reward_ant_sq(double v_fwd, double torque_sq, double impact_sq) {
  return v_fwd - 0.5 * torque_sq - 0.5e-3 * impact_sq + 1.0;
}

inline double reward_humanoid_sq(double v_fwd, double torque_sq, double impact_sq) {
  return 5.0 * v_fwd - 0.1 * torque_sq - 0.5e-6 * impact_sq + 4.0;
}

template <typename U>
double reward_walker2d(double v_fwd, const Eigen::MatrixBase<U>& torque) {
  return reward_walker2d_sq(v_fwd, torque.squaredNorm());
}

template <typename U, typename F>
double reward_ant(double v_fwd, const Eigen::MatrixBase<U>& torque, const Eigen::MatrixBase<F>& impact) {
  return reward_ant_sq(v_fwd, torque.squaredNorm(), impact.squaredNorm());
}

template <typename U, typename F>
double reward_humanoid(double v_fwd, const Eigen::MatrixBase<U>& torque,
                       const Eigen::MatrixBase<F>& impact) {
  return reward_humanoid_sq(v_fwd, torque.squaredNorm(), impact.squaredNorm());
}

/// Dispatch on the configured form. Walker2d ignores the impact term.
double reward(RewardForm form, double v_fwd, double torque_sq, double impact_sq);

std::string to_string(RewardForm form);
RewardForm reward_form_from_string(const std::string& s);

}  // namespace advmorph
