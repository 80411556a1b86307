#include "advmorph/validate_de.hpp"

#include <fmt/format.h>

#include <chrono>

namespace advmorph {

std::vector<ValidationCase> default_validation_suite() {
  using Metric = ValidationCase::Metric;
  std::vector<ValidationCase> suite;
  suite.push_back({"sphere-d7", Benchmark::Sphere, 7, 14, 0.5, 0.7, 100, 0.5,
                   Metric::MaxNormOfBest, 1e-2, 100, 95});
  suite.push_back({"rastrigin-d2", Benchmark::Rastrigin, 2, 14, 0.5, 0.7, 100, 5.12,
                   Metric::BestValue, 1.0, 100, 80});
  suite.push_back({"sphere-d1-np4", Benchmark::Sphere, 1, 4, 0.5, 0.7, 100, 0.5,
                   Metric::PopulationSpread, 1e-9, 100, 100});
  return suite;
}

ValidationOutcome run_validation_case(const ValidationCase& c, std::ostream* log) {
  ValidationOutcome out{c, {}, 0, 0.0};
  const auto start = std::chrono::steady_clock::now();
  const Mask mask = Mask::Constant(c.dim, true);
  const FitnessFn fitness = [&](const VectorXd& x, std::uint64_t) {
    return benchmark_fitness(c.benchmark, x);
  };
  for (int seed = 1; seed <= c.seeds; ++seed) {
    DEConfig de;
    de.population_size = c.population_size;
    de.F = c.F;
    de.CR = c.CR;
    de.generations = c.generations;
    de.epsilon = c.epsilon;
    de.dim = c.dim;
    de.master_seed = static_cast<std::uint64_t>(seed);
    const SearchResult r = search(fitness, de, mask);
    double value = 0.0;
    bool pass = false;
    const char* label = "";
    switch (c.metric) {
      case ValidationCase::Metric::MaxNormOfBest:
        value = r.delta_best.cwiseAbs().maxCoeff();
        pass = value < c.threshold;
        label = "max|delta|";
        break;
      case ValidationCase::Metric::BestValue:
        value = r.g_min;
        pass = value <= c.threshold;
        label = "best";
        break;
      case ValidationCase::Metric::PopulationSpread:
        value = (r.population_final.rowwise().maxCoeff() - r.population_final.rowwise().minCoeff())
                    .maxCoeff();
        pass = value <= c.threshold;
        label = "spread";
        break;
    }
    out.metric.push_back(value);
    out.passes += pass ? 1 : 0;
    if (log)
      *log << fmt::format("{} seed={:3d} {}={:.3e} max|delta|={:.3e} G_min={:.3e} {}\n", c.name,
                          seed, label, value, r.delta_best.cwiseAbs().maxCoeff(), r.g_min,
                          pass ? "ok" : "MISS");
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace advmorph
