#include "advmorph/desearch.hpp"

#include <spdlog/spdlog.h>

#include <cmath>
#include <numbers>

#include "advmorph/eval.hpp"
#include "advmorph/parallel.hpp"

namespace advmorph {

void DEConfig::validate() const {
  if (population_size < 4) throw ConfigError("DE: population size must be at least 4");
  if (!(F > 0.0) || !std::isfinite(F)) throw ConfigError("DE: F must be positive");
  if (!(CR >= 0.0 && CR <= 1.0)) throw ConfigError("DE: CR must lie in [0, 1]");
  if (generations < 0) throw ConfigError("DE: generations must be non-negative");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ConfigError("DE: epsilon must be positive");
  if (dim < 1) throw ConfigError("DE: dimension must be at least 1");
}

Selection select(const VectorXd& trial, const VectorXd& target, double trial_fitness,
                 double target_fitness, double g_min) {
  Selection s;
  if (trial_fitness <= target_fitness) {
    s.survivor = trial;
    s.accepted = true;
    if (trial_fitness < g_min) s.new_best = trial_fitness;
  } else {
    s.survivor = target;
  }
  return s;
}

Selection select(const VectorXd& trial, const VectorXd& target, const FitnessFn& fitness,
                 std::uint64_t trial_id, std::uint64_t target_id, double g_min) {
  const double trial_fitness = fitness(trial, trial_id);
  const double target_fitness = fitness(target, target_id);
  return select(trial, target, trial_fitness, target_fitness, g_min);
}

namespace {

double checked(double value, std::uint64_t id) {
  if (!std::isfinite(value))
    throw SimulationDiverged("fitness evaluation " + std::to_string(id) + " is not finite");
  return value;
}

}  // namespace

SearchResult search(const FitnessFn& fitness, const DEConfig& config, const Mask& attackable) {
  config.validate();
  if (attackable.size() != config.dim) throw ConfigError("DE: mask size differs from dimension");

  const int np = config.population_size;
  const auto npz = static_cast<std::size_t>(np);
  Rng rng(derive_seed(config.master_seed, 0xde5ea2c4ULL, 0));

  SearchResult result;
  result.epsilon = config.epsilon;
  result.population_final.resize(config.dim, np);
  for (int i = 0; i < np; ++i)
    result.population_final.col(i) =
        sample_initial(config.dim, config.epsilon, attackable, rng).deltas();

  auto& population = result.population_final;
  try {
    std::vector<double> initial(npz);
    parallel_for(npz, config.threads, [&](std::size_t i) {
      initial[i] = checked(fitness(population.col(static_cast<Eigen::Index>(i)), i), i);
    });
    result.evaluations += np;
    for (int i = 0; i < np; ++i) {
      if (initial[static_cast<std::size_t>(i)] < result.g_min) {
        result.g_min = initial[static_cast<std::size_t>(i)];
        result.delta_best = population.col(i);
      }
    }
    result.best_trace.push_back(result.g_min);

    std::uniform_int_distribution<int> pick(0, np - 1);
    std::vector<double> target_fit(npz);
    for (int g = 1; g <= config.generations; ++g) {
      // Donors r1, r2 and targets come from the previous generation; the best
      // individual is the running one, so later individuals in a generation
      // mutate around improvements found earlier in the same generation.
      const Eigen::MatrixXd previous = population;
      parallel_for(npz, config.threads, [&](std::size_t k) {
        const auto i = static_cast<int>(k);
        const auto id = trial_evaluation_id(np, g, i) + 1;
        target_fit[k] = checked(fitness(previous.col(i), id), id);
      });
      result.evaluations += np;

      int accepted = 0;
      for (int i = 0; i < np; ++i) {
        int r1, r2;
        do r1 = pick(rng); while (r1 == i);
        do r2 = pick(rng); while (r2 == i || r2 == r1);
        const VectorXd mutant =
            mutate(result.delta_best, previous.col(r1), previous.col(r2), config.F);
        const VectorXd trial =
            clamp(crossover(previous.col(i), mutant, config.CR, rng), config.epsilon, attackable)
                .deltas();
        const auto id = trial_evaluation_id(np, g, i);
        const double trial_fit = checked(fitness(trial, id), id);
        ++result.evaluations;

        Selection s = select(trial, previous.col(i), trial_fit,
                             target_fit[static_cast<std::size_t>(i)], result.g_min);
        if (s.accepted) {
          ++accepted;
          population.col(i) = s.survivor;
        }
        if (s.new_best) {
          result.g_min = *s.new_best;
          result.delta_best = s.survivor;
        }
      }
      result.accepted_per_generation.push_back(accepted);
      result.best_trace.push_back(result.g_min);
      spdlog::debug("generation {}: G_min={} accepted={}/{}", g, result.g_min, accepted, np);
    }
  } catch (const Error& e) {
    throw SearchAborted(std::string("search aborted: ") + e.what(), std::move(result));
  }
  return result;
}

double benchmark_fitness(Benchmark which, const VectorXd& x) {
  switch (which) {
    case Benchmark::Sphere:
      return x.squaredNorm();
    case Benchmark::Rastrigin: {
      const double two_pi = 2.0 * std::numbers::pi;
      return 10.0 * static_cast<double>(x.size()) +
             (x.array().square() - 10.0 * (two_pi * x.array()).cos()).sum();
    }
  }
  throw ContractViolation("unknown benchmark");
}

std::string to_string(Benchmark which) {
  return which == Benchmark::Sphere ? "sphere" : "rastrigin";
}

}  // namespace advmorph
