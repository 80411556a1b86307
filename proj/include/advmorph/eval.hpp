#pragma once

// Monte-Carlo fitness: the M-episode average cumulative reward and the grand
// average over many such estimates.

#include <cstdint>
#include <vector>

#include "advmorph/env.hpp"

namespace advmorph {

/// SplitMix64 finalizer. A bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Episode seed for (master, run, episode):
///   mix64(mix64(run << 32 | episode) ^ mix64(master)).
/// Injective in (run, episode) for indices below 2^32 at fixed master,
/// because every stage is a bijection of the packed key.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t run_index,
                                    std::uint64_t episode_index) noexcept {
  const std::uint64_t key = (run_index << 32) | (episode_index & 0xffffffffULL);
  return mix64(mix64(key) ^ mix64(master_seed));
}

/// Identifies the seeds consumed by one estimate: episodes 0..M-1 of
/// `run_index` under `master_seed`.
struct SeedBlock {
  std::uint64_t master_seed = 0;
  std::uint64_t run_index = 0;
  friend bool operator==(const SeedBlock&, const SeedBlock&) = default;
};

struct FitnessEstimate {
  double mean = 0.0;
  std::vector<double> per_episode;
  int episodes = 0;
  SeedBlock seed_block;
};

/// Runs M episodes seeded from `block` and sums them in index order.
/// Throws SimulationDiverged if any episode return is non-finite.
FitnessEstimate average_cumulative_reward(const Environment& env, const Policy& policy,
                                          const Morphology& morphology, int episodes, int horizon,
                                          SeedBlock block);

struct GrandAverage {
  double mean = 0.0;
  std::vector<double> run_means;
};

/// Average of `runs` independent estimates; run i uses seed block (master_seed, i).
GrandAverage grand_average(const Environment& env, const Policy& policy,
                           const Morphology& morphology, int runs, int episodes, int horizon,
                           std::uint64_t master_seed, int threads = 1);

}  // namespace advmorph
