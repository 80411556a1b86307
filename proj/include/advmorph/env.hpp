#pragma once

// Environment and policy contracts plus the episode runner.

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <random>

#include "advmorph/body.hpp"

namespace advmorph {

using Rng = std::mt19937_64;
using State = Eigen::VectorXd;
using Action = Eigen::VectorXd;

/// Length and thickness shapes handed to an environment at reset.
struct Morphology {
  AdversarialShaped length;
  AdversarialShaped thickness;
};

struct StepResult {
  State state;
  double reward = 0.0;
  bool terminated = false;
  /// Diagnostic only; NaN when the environment does not report it.
  double forward_velocity = std::numeric_limits<double>::quiet_NaN();
};

/// Identical (morphology, seed, action sequence) must give bit-identical
/// trajectories. Instances are single-threaded; use clone() per worker.
class Environment {
 public:
  virtual ~Environment() = default;
  virtual State reset(const Morphology& morphology, std::uint64_t seed) = 0;
  virtual StepResult step(const State& state, const Action& action) = 0;
  virtual std::unique_ptr<Environment> clone() const = 0;
};

/// Deterministic given the state and the position of the rng stream.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual Action act(const State& state, Rng& rng) const = 0;
};

/// Open-loop stand-in for a learned controller: its only contribution is one
/// standard-normal draw per step, which the toy walker reads as a disturbance.
class OpenLoopPolicy final : public Policy {
 public:
  Action act(const State& state, Rng& rng) const override;
};

enum class Termination { HorizonReached, Fell };

struct EpisodeOutcome {
  double cumulative_reward = 0.0;
  int steps_taken = 0;
  Termination termination = Termination::HorizonReached;
  friend bool operator==(const EpisodeOutcome&, const EpisodeOutcome&) = default;
};

/// Called after every step with the step index and its result.
using StepObserver = std::function<void(int t, const StepResult&)>;

/// Sums rewards for at most `horizon` steps; the step that terminates the
/// episode still contributes its reward.
EpisodeOutcome run_episode(Environment& env, const Policy& policy, const Morphology& morphology,
                           int horizon, std::uint64_t seed, const StepObserver& observer = {});

}  // namespace advmorph

namespace advmorph {

/// Which shape family an attack perturbs. Both = joint vector [length; thickness].
enum class AttackKind { Length, Thickness, Both };

std::string to_string(AttackKind kind);
AttackKind attack_kind_from_string(const std::string& s);

/// Dimension of the search vector for `kind`.
Eigen::Index attack_dimension(const BodyShaped& lengths, const BodyShaped& thicknesses,
                              AttackKind kind);

Mask attack_mask(const BodyShaped& lengths, const BodyShaped& thicknesses, AttackKind kind);

/// Applies a search vector to the clean shape pair. The family not covered by
/// `kind` stays clean.
Morphology make_morphology(const BodyShaped& lengths, const BodyShaped& thicknesses,
                           AttackKind kind, const VectorXd& delta, double epsilon);

Morphology clean_morphology(const BodyShaped& lengths, const BodyShaped& thicknesses);

}  // namespace advmorph
