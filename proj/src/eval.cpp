#include "advmorph/eval.hpp"

#include <cmath>

#include "advmorph/parallel.hpp"

namespace advmorph {

FitnessEstimate average_cumulative_reward(const Environment& env, const Policy& policy,
                                          const Morphology& morphology, int episodes, int horizon,
                                          SeedBlock block) {
  if (episodes < 1) throw ContractViolation("average_cumulative_reward: M must be at least 1");
  auto worker = env.clone();
  FitnessEstimate est;
  est.episodes = episodes;
  est.seed_block = block;
  est.per_episode.resize(static_cast<std::size_t>(episodes));
  double sum = 0.0;
  for (int m = 0; m < episodes; ++m) {
    const auto seed = derive_seed(block.master_seed, block.run_index, static_cast<std::uint64_t>(m));
    const double g = run_episode(*worker, policy, morphology, horizon, seed).cumulative_reward;
    if (!std::isfinite(g))
      throw SimulationDiverged("average_cumulative_reward: episode " + std::to_string(m) +
                               " returned a non-finite reward");
    est.per_episode[static_cast<std::size_t>(m)] = g;
    sum += g;
  }
  est.mean = sum / episodes;
  return est;
}

GrandAverage grand_average(const Environment& env, const Policy& policy,
                           const Morphology& morphology, int runs, int episodes, int horizon,
                           std::uint64_t master_seed, int threads) {
  if (runs < 1) throw ContractViolation("grand_average: runs must be at least 1");
  GrandAverage out;
  out.run_means.resize(static_cast<std::size_t>(runs));
  parallel_for(out.run_means.size(), threads, [&](std::size_t i) {
    out.run_means[i] =
        average_cumulative_reward(env, policy, morphology, episodes, horizon, {master_seed, i}).mean;
  });
  double sum = 0.0;
  for (double v : out.run_means) sum += v;
  out.mean = sum / runs;
  return out;
}

}  // namespace advmorph
