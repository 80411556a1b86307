#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "advmorph/config.hpp"
#include "advmorph/eval.hpp"
#include "advmorph/toy_walker.hpp"

using namespace advmorph;

namespace {

ToyWalkerSpec biped(double sigma) {
  auto spec = toy_biped();
  spec.gait.sigma = sigma;
  return spec;
}

/// Length attack whose steady tilt sits just below the fall threshold.
Morphology marginal_attack(const ToyWalkerSpec& spec) {
  VectorXd delta = VectorXd::Zero(7);
  delta[1] = 0.05;
  delta[4] = -0.03;
  return make_morphology(spec.lengths, spec.thicknesses, AttackKind::Length, delta, 0.05);
}

class NanEnv final : public Environment {
 public:
  State reset(const Morphology&, std::uint64_t) override { return State::Zero(1); }
  StepResult step(const State& s, const Action&) override {
    return {s, std::numeric_limits<double>::quiet_NaN(), false};
  }
  std::unique_ptr<Environment> clone() const override { return std::make_unique<NanEnv>(); }
};

}  // namespace

TEST(DeriveSeed, DeterministicAndDistinctOnNeighbours) {
  EXPECT_EQ(derive_seed(7, 3, 4), derive_seed(7, 3, 4));
  EXPECT_NE(derive_seed(7, 0, 0), derive_seed(7, 0, 1));
  EXPECT_NE(derive_seed(7, 0, 1), derive_seed(7, 1, 0));
  EXPECT_NE(derive_seed(7, 0, 0), derive_seed(8, 0, 0));
}

TEST(DeriveSeed, NoCollisionsOverAMillionPairs) {
  std::vector<std::uint64_t> seeds;
  seeds.reserve(1000000);
  for (std::uint64_t i = 0; i < 1000; ++i)
    for (std::uint64_t j = 0; j < 1000; ++j) seeds.push_back(derive_seed(12345, i, j));
  std::sort(seeds.begin(), seeds.end());
  EXPECT_EQ(std::adjacent_find(seeds.begin(), seeds.end()), seeds.end());
}

TEST(DeriveSeed, MixIsTheSplitMix64Finalizer) {
  // Published SplitMix64 outputs for state 0: the first draw is mix64(0).
  EXPECT_EQ(mix64(0), 0xe220a8397b1dcdafULL);
}

TEST(AverageCumulativeReward, DeterministicEnvironmentHasZeroVariance) {
  const auto spec = biped(0.0);
  const ToyWalkerEnv env(spec);
  const auto morph = marginal_attack(spec);
  ToyWalkerEnv single(spec);
  const double g = run_episode(single, OpenLoopPolicy{}, morph, 1000, 99).cumulative_reward;
  for (int m : {1, 7, 50}) {
    const auto est = average_cumulative_reward(env, OpenLoopPolicy{}, morph, m, 1000, {1, 2});
    ASSERT_EQ(est.episodes, m);
    ASSERT_EQ(est.per_episode.size(), static_cast<std::size_t>(m));
    for (double x : est.per_episode) ASSERT_EQ(x, g);
    EXPECT_NEAR(est.mean, g, 1e-12 * g);
  }
}

TEST(AverageCumulativeReward, DefaultEpisodeCountIsFifty) { EXPECT_EQ(EvalSettings{}.episodes, 50); }

TEST(AverageCumulativeReward, ReproducibleAndMeanMatchesSamples) {
  const auto spec = biped(0.05);
  const ToyWalkerEnv env(spec);
  const auto morph = marginal_attack(spec);
  const auto a = average_cumulative_reward(env, OpenLoopPolicy{}, morph, 50, 1000, {77, 3});
  const auto b = average_cumulative_reward(env, OpenLoopPolicy{}, morph, 50, 1000, {77, 3});
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.per_episode, b.per_episode);
  EXPECT_EQ(a.seed_block, (SeedBlock{77, 3}));
  const double avg = std::accumulate(a.per_episode.begin(), a.per_episode.end(), 0.0) / 50.0;
  EXPECT_NEAR(a.mean, avg, 1e-12 * std::abs(avg));
  // The stochastic environment really is stochastic here.
  const auto [lo, hi] = std::minmax_element(a.per_episode.begin(), a.per_episode.end());
  EXPECT_LT(*lo, *hi);
}

TEST(AverageCumulativeReward, MeanIsPermutationInvariant) {
  const auto spec = biped(0.05);
  const ToyWalkerEnv env(spec);
  const auto est = average_cumulative_reward(env, OpenLoopPolicy{}, marginal_attack(spec), 64, 1000, {5, 0});
  std::mt19937_64 rng(1);
  for (int k = 0; k < 20; ++k) {
    auto shuffled = est.per_episode;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const double mean = std::accumulate(shuffled.begin(), shuffled.end(), 0.0) / 64.0;
    ASSERT_NEAR(mean, est.mean, 1e-12 * std::abs(est.mean));
  }
}

TEST(AverageCumulativeReward, LargerSampleAgreesWithinStandardError) {
  const auto spec = biped(0.05);
  const ToyWalkerEnv env(spec);
  const auto morph = marginal_attack(spec);
  // Nested blocks: the first 200 episodes of the 5000-episode block.
  const auto small = average_cumulative_reward(env, OpenLoopPolicy{}, morph, 200, 1000, {9, 0});
  const auto large = average_cumulative_reward(env, OpenLoopPolicy{}, morph, 5000, 1000, {9, 0});
  ASSERT_TRUE(std::equal(small.per_episode.begin(), small.per_episode.end(), large.per_episode.begin()));
  double ss = 0.0;
  for (double x : small.per_episode) ss += (x - small.mean) * (x - small.mean);
  const double sd = std::sqrt(ss / 199.0);
  ASSERT_GT(sd, 0.0);
  EXPECT_LT(std::abs(small.mean - large.mean), 5.0 * sd / std::sqrt(200.0));
}

TEST(AverageCumulativeReward, NonFiniteEpisodeFailsEstimate) {
  const auto spec = toy_biped();
  EXPECT_THROW(average_cumulative_reward(NanEnv{}, OpenLoopPolicy{},
                                         clean_morphology(spec.lengths, spec.thicknesses), 3, 10, {}),
               SimulationDiverged);
}

TEST(AverageCumulativeReward, RequiresAtLeastOneEpisode) {
  const auto spec = toy_biped();
  EXPECT_THROW(average_cumulative_reward(ToyWalkerEnv(spec), OpenLoopPolicy{},
                                         clean_morphology(spec.lengths, spec.thicknesses), 0, 10, {}),
               ContractViolation);
}

TEST(GrandAverage, SingleRunEqualsOneEstimate) {
  const auto spec = biped(0.05);
  const ToyWalkerEnv env(spec);
  const auto morph = marginal_attack(spec);
  const auto grand = grand_average(env, OpenLoopPolicy{}, morph, 1, 20, 1000, 31);
  const auto est = average_cumulative_reward(env, OpenLoopPolicy{}, morph, 20, 1000, {31, 0});
  EXPECT_EQ(grand.mean, est.mean);
  EXPECT_EQ(grand.run_means, std::vector<double>{est.mean});
}

TEST(GrandAverage, DeterministicEnvironmentIgnoresRunCount) {
  const auto spec = biped(0.0);
  const ToyWalkerEnv env(spec);
  const auto morph = marginal_attack(spec);
  ToyWalkerEnv single(spec);
  const double g = run_episode(single, OpenLoopPolicy{}, morph, 1000, 0).cumulative_reward;
  for (int runs : {1, 5, 40}) {
    const auto grand = grand_average(env, OpenLoopPolicy{}, morph, runs, 4, 1000, 2);
    EXPECT_NEAR(grand.mean, g, 1e-12 * g);
  }
}

TEST(GrandAverage, RunsUseDisjointSeedBlocks) {
  const auto spec = biped(0.05);
  const ToyWalkerEnv env(spec);
  const auto grand = grand_average(env, OpenLoopPolicy{}, marginal_attack(spec), 10, 5, 1000, 8);
  auto sorted = grand.run_means;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end());
}

TEST(GrandAverage, ThreadCountDoesNotChangeResult) {
  const auto spec = biped(0.05);
  const ToyWalkerEnv env(spec);
  const auto morph = marginal_attack(spec);
  const auto one = grand_average(env, OpenLoopPolicy{}, morph, 12, 5, 1000, 4, 1);
  const auto four = grand_average(env, OpenLoopPolicy{}, morph, 12, 5, 1000, 4, 4);
  EXPECT_EQ(one.mean, four.mean);
  EXPECT_EQ(one.run_means, four.run_means);
}

TEST(GrandAverage, AttackAtFivePercentBeatsCleanOverThousandRuns) {
  const auto spec = toy_biped();
  const ToyWalkerEnv env(spec);
  VectorXd delta = VectorXd::Zero(7);
  delta.segment(1, 3).setConstant(0.05);
  delta.segment(4, 3).setConstant(-0.05);
  const auto attacked = grand_average(
      env, OpenLoopPolicy{},
      make_morphology(spec.lengths, spec.thicknesses, AttackKind::Length, delta, 0.05), 1000, 50,
      1000, 3);
  const auto clean = grand_average(env, OpenLoopPolicy{},
                                   clean_morphology(spec.lengths, spec.thicknesses), 1000, 50, 1000, 3);
  EXPECT_EQ(attacked.run_means.size(), 1000u);
  EXPECT_LT(attacked.mean, clean.mean);
}
