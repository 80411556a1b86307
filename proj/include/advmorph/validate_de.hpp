#pragma once

// Convergence suite for the DE loop on analytic benchmarks with known minima.

#include <ostream>
#include <string>
#include <vector>

#include "advmorph/desearch.hpp"

namespace advmorph {

struct ValidationCase {
    // PopulationSpread: largest per-coordinate range across the final population.
  enum class Metric { MaxNormOfBest, BestValue, PopulationSpread };

  std::string name;
  Benchmark benchmark = Benchmark::Sphere;
  Eigen::Index dim = 1;
  int population_size = 14;
  double F = 0.5;
  double CR = 0.7;
  int generations = 100;
  double epsilon = 0.5;
  Metric metric = Metric::MaxNormOfBest;
  double threshold = 1e-2;  // seed passes iff metric < threshold (<= for BestValue, PopulationSpread)
  int seeds = 100;          // master seeds 1..seeds
  int required_passes = 95;
};

struct ValidationOutcome {
  ValidationCase spec;
  std::vector<double> metric;  // per seed
  int passes = 0;
  double seconds = 0.0;
  bool ok() const { return passes >= spec.required_passes; }
};

/// sphere dim 7, rastrigin dim 2, sphere dim 1 with NP = 4. The NP = 4 case
/// checks that the population contracts to a point; with four individuals in
/// one dimension DE/best/1 can stagnate away from the optimum.
std::vector<ValidationCase> default_validation_suite();

ValidationOutcome run_validation_case(const ValidationCase& c, std::ostream* per_seed_log = nullptr);

}  // namespace advmorph
