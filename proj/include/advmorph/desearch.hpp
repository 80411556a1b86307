#pragma once

// DE/best/1/bin over perturbation vectors, minimizing a (possibly stochastic)
// fitness inside the epsilon max-norm ball.

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "advmorph/body.hpp"

namespace advmorph {

struct DEConfig {
  int population_size = 14;
  double F = 0.5;
  double CR = 0.7;
  int generations = 100;
  double epsilon = 0.05;
  Eigen::Index dim = 0;
  std::uint64_t master_seed = 0;
  int threads = 1;  // fitness evaluations in flight; 0 = all cores

  void validate() const;
};

/// best + F (r1 - r2), before any projection.
template <typename B, typename R1, typename R2>
Vector<typename B::Scalar> mutate(const Eigen::MatrixBase<B>& best, const Eigen::MatrixBase<R1>& r1,
                                  const Eigen::MatrixBase<R2>& r2, typename B::Scalar F) {
  return best + F * (r1 - r2);
}

/// Binomial crossover. Draws the forced index j_r first, then one uniform r in
/// [0, 1) per coordinate; coordinate j comes from the mutant iff r < CR or
/// j == j_r. With r drawn from [0, 1) this matches the r <= CR rule up to a
/// null set and makes CR = 0 and CR = 1 exact.
template <typename T, typename M, typename Rng>
Vector<typename T::Scalar> crossover(const Eigen::MatrixBase<T>& target,
                                     const Eigen::MatrixBase<M>& mutant, double CR, Rng& rng,
                                     Eigen::Index* forced_index = nullptr) {
  using Scalar = typename T::Scalar;
  const Eigen::Index d = target.size();
  if (mutant.size() != d) throw ContractViolation("crossover: dimension mismatch");
  if (!(CR >= 0.0 && CR <= 1.0)) throw ContractViolation("crossover: CR must lie in [0, 1]");
  if (d == 0) return Vector<Scalar>();
  std::uniform_int_distribution<Eigen::Index> pick(0, d - 1);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const Eigen::Index jr = pick(rng);
  if (forced_index) *forced_index = jr;
  Vector<Scalar> trial(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const double r = uniform(rng);
    trial[j] = (r < CR || j == jr) ? mutant(j) : target(j);
  }
  return trial;
}

/// Fitness of a perturbation; `evaluation_id` selects the seed block so that
/// stochastic fitness functions stay reproducible.
using FitnessFn = std::function<double(const VectorXd& delta, std::uint64_t evaluation_id)>;

struct Selection {
  VectorXd survivor;
  bool accepted = false;
  /// Set when the trial also beat the running minimum.
  std::optional<double> new_best;
};

/// Greedy replacement: the trial survives iff its fitness is <= the target's;
/// the best is updated iff an accepted trial is strictly below g_min.
Selection select(const VectorXd& trial, const VectorXd& target, double trial_fitness,
                 double target_fitness, double g_min);

/// Evaluates both vectors with `fitness` and applies the same rule.
Selection select(const VectorXd& trial, const VectorXd& target, const FitnessFn& fitness,
                 std::uint64_t trial_id, std::uint64_t target_id, double g_min);

struct SearchResult {
  VectorXd delta_best;
  double epsilon = 0.0;
  double g_min = std::numeric_limits<double>::infinity();
  /// Entry 0 is the initial population's minimum, entry g the minimum after
  /// generation g.
  std::vector<double> best_trace;
  std::int64_t evaluations = 0;
  /// One individual per column.
  Eigen::MatrixXd population_final;
  std::vector<int> accepted_per_generation;
};

/// Raised when a fitness evaluation fails; carries the state reached so far.
class SearchAborted : public Error {
 public:
  SearchAborted(const std::string& what, SearchResult partial)
      : Error(what), partial_(std::move(partial)) {}
  const SearchResult& partial() const noexcept { return partial_; }

 private:
  SearchResult partial_;
};

/// Evaluation ids: initial individuals use 0..NP-1; in generation g >= 1 the
/// trial and target of individual i use NP + 2((g-1) NP + i) and that + 1.
constexpr std::uint64_t trial_evaluation_id(int population_size, int generation, int individual) {
  return static_cast<std::uint64_t>(population_size) +
         2ULL * (static_cast<std::uint64_t>(generation - 1) * static_cast<std::uint64_t>(population_size) +
                 static_cast<std::uint64_t>(individual));
}

/// Runs the full attack loop. Donors and targets are taken from the previous
/// generation, while the best individual is updated as soon as an accepted
/// trial beats it, so it can change several times within one generation.
/// Target fitness values of a generation are evaluated concurrently
/// (config.threads); trials are evaluated in index order.
SearchResult search(const FitnessFn& fitness, const DEConfig& config, const Mask& attackable);

enum class Benchmark { Sphere, Rastrigin };

double benchmark_fitness(Benchmark which, const VectorXd& x);
std::string to_string(Benchmark which);

}  // namespace advmorph
