#include "advmorph/env.hpp"

#include <cmath>

namespace advmorph {

Action OpenLoopPolicy::act(const State&, Rng& rng) const {
  std::normal_distribution<double> normal(0.0, 1.0);
  Action a(1);
  a[0] = normal(rng);
  return a;
}

EpisodeOutcome run_episode(Environment& env, const Policy& policy, const Morphology& morphology,
                           int horizon, std::uint64_t seed, const StepObserver& observer) {
  if (horizon < 1) throw ContractViolation("run_episode: horizon must be at least 1");
  Rng rng(seed);
  State state = env.reset(morphology, seed);
  EpisodeOutcome out;
  for (int t = 0; t < horizon; ++t) {
    StepResult r = env.step(state, policy.act(state, rng));
    if (!std::isfinite(r.reward))
      throw SimulationDiverged("run_episode: non-finite reward at step " + std::to_string(t));
    out.cumulative_reward += r.reward;
    out.steps_taken = t + 1;
    if (observer) observer(t, r);
    if (r.terminated) {
      out.termination = Termination::Fell;
      break;
    }
    state = std::move(r.state);
  }
  return out;
}

}  // namespace advmorph

namespace advmorph {

std::string to_string(AttackKind kind) {
  switch (kind) {
    case AttackKind::Length:
      return "length";
    case AttackKind::Thickness:
      return "thickness";
    case AttackKind::Both:
      return "both";
  }
  return "?";
}

AttackKind attack_kind_from_string(const std::string& s) {
  if (s == "length") return AttackKind::Length;
  if (s == "thickness") return AttackKind::Thickness;
  if (s == "both") return AttackKind::Both;
  throw ConfigError("unknown attack kind '" + s + "' (expected length|thickness|both)");
}

Eigen::Index attack_dimension(const BodyShaped& lengths, const BodyShaped& thicknesses,
                              AttackKind kind) {
  switch (kind) {
    case AttackKind::Length:
      return lengths.size();
    case AttackKind::Thickness:
      return thicknesses.size();
    case AttackKind::Both:
      return lengths.size() + thicknesses.size();
  }
  return 0;
}

Mask attack_mask(const BodyShaped& lengths, const BodyShaped& thicknesses, AttackKind kind) {
  switch (kind) {
    case AttackKind::Length:
      return lengths.attackable();
    case AttackKind::Thickness:
      return thicknesses.attackable();
    case AttackKind::Both: {
      Mask m(lengths.size() + thicknesses.size());
      m << lengths.attackable(), thicknesses.attackable();
      return m;
    }
  }
  return {};
}

Morphology clean_morphology(const BodyShaped& lengths, const BodyShaped& thicknesses) {
  return {unperturbed(lengths), unperturbed(thicknesses)};
}

Morphology make_morphology(const BodyShaped& lengths, const BodyShaped& thicknesses,
                           AttackKind kind, const VectorXd& delta, double epsilon) {
  if (delta.size() != attack_dimension(lengths, thicknesses, kind))
    throw ContractViolation("make_morphology: perturbation has dimension " +
                            std::to_string(delta.size()) + ", attack expects " +
                            std::to_string(attack_dimension(lengths, thicknesses, kind)));
  switch (kind) {
    case AttackKind::Length:
      return {apply_perturbation(lengths, PerturbationVectord(delta, epsilon)),
              unperturbed(thicknesses)};
    case AttackKind::Thickness:
      return {unperturbed(lengths),
              apply_perturbation(thicknesses, PerturbationVectord(delta, epsilon))};
    case AttackKind::Both:
      return {apply_perturbation(lengths,
                                 PerturbationVectord(delta.head(lengths.size()), epsilon)),
              apply_perturbation(thicknesses,
                                 PerturbationVectord(delta.tail(thicknesses.size()), epsilon))};
  }
  throw ContractViolation("make_morphology: unknown attack kind");
}

}  // namespace advmorph
