#include <gtest/gtest.h>

#include <random>

#include "advmorph/body.hpp"
#include "advmorph/body_io.hpp"

using namespace advmorph;

namespace {

BodyShaped shape_of(std::initializer_list<double> values, Mask mask = {}) {
  VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  std::vector<std::string> names;
  for (Eigen::Index k = 0; k < v.size(); ++k) names.push_back("part" + std::to_string(k));
  if (mask.size() == 0) mask = Mask::Constant(v.size(), true);
  return BodyShaped(v, names, {}, DimensionKind::Length, mask);
}

VectorXd vec(std::initializer_list<double> values) {
  VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

}  // namespace

TEST(BodyShape, RejectsNonPositiveDimensions) {
  EXPECT_THROW(shape_of({0.4, 0.0}), ContractViolation);
  EXPECT_THROW(shape_of({-1.0}), ContractViolation);
}

TEST(BodyShape, RejectsOverlappingOrOutOfRangeMirrorPairs) {
  const VectorXd v = VectorXd::Ones(3);
  const std::vector<std::string> names{"a", "b", "c"};
  const Mask m = Mask::Constant(3, true);
  EXPECT_THROW(BodyShaped(v, names, {{0, 1}, {1, 2}}, DimensionKind::Length, m), ContractViolation);
  EXPECT_THROW(BodyShaped(v, names, {{0, 3}}, DimensionKind::Length, m), ContractViolation);
  const BodyShaped ok(v, names, {{1, 2}}, DimensionKind::Length, m);
  EXPECT_EQ(ok.unpaired(), std::vector<Eigen::Index>{0});
}

TEST(ApplyPerturbation, ZeroDeltaIsIdentity) {
  const auto shape = shape_of({0.4, 0.45, 0.5});
  const auto adv = apply_perturbation(shape, PerturbationVectord::zero(3));
  EXPECT_EQ(adv.values, shape.values());  // bit-identical
}

TEST(ApplyPerturbation, TableRatiosOnUnitDimensions) {
  EXPECT_DOUBLE_EQ(apply_perturbation(shape_of({1.0}), PerturbationVectord(vec({-0.0474}), 0.05))
                       .values[0],
                   0.9526);
  const auto adv =
      apply_perturbation(shape_of({1.0, 1.0}), PerturbationVectord(vec({0.0473, 0.0393}), 0.05));
  EXPECT_DOUBLE_EQ(adv.values[0], 1.0473);
  EXPECT_DOUBLE_EQ(adv.values[1], 1.0393);
}

TEST(ApplyPerturbation, DimensionMismatchIsContractViolation) {
  EXPECT_THROW(apply_perturbation(shape_of({1.0, 2.0}), PerturbationVectord::zero(3)),
               ContractViolation);
}

TEST(ApplyPerturbation, MaskedEntryMustNotMove) {
  Mask m(2);
  m << false, true;
  const auto shape = shape_of({1.0, 2.0}, m);
  EXPECT_THROW(apply_perturbation(shape, PerturbationVectord(vec({0.01, 0.0}), 0.05)),
               ContractViolation);
  const auto adv = apply_perturbation(shape, PerturbationVectord(vec({0.0, 0.05}), 0.05));
  EXPECT_EQ(adv.values[0], 1.0);
}

TEST(ApplyPerturbation, NonPositiveResultIsDegenerate) {
  EXPECT_THROW(apply_perturbation(shape_of({1.0}), PerturbationVectord(vec({-1.0}), 1.0)),
               DegenerateShape);
}

TEST(PerturbationVector, EnforcesMaxNorm) {
  EXPECT_THROW(PerturbationVectord(vec({0.06}), 0.05), ContractViolation);
  EXPECT_NO_THROW(PerturbationVectord(vec({-0.05, 0.05}), 0.05));
}

TEST(Clamp, ClipsComponentwise) {
  const auto c = clamp(vec({0.2, -0.07}), 0.05, Mask::Constant(2, true));
  EXPECT_EQ(c.deltas(), vec({0.05, -0.05}));
}

TEST(Clamp, ForcesMaskedToZero) {
  Mask m(2);
  m << true, false;
  EXPECT_EQ(clamp(vec({0.03, 0.03}), 0.05, m).deltas(), vec({0.03, 0.0}));
}

TEST(Clamp, BoundaryIsFeasible) {
  EXPECT_EQ(clamp(vec({-0.05, 0.05}), 0.05, Mask::Constant(2, true)).deltas(), vec({-0.05, 0.05}));
}

TEST(ClampProperty, IdempotentAndNeverOvershoots) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> wide(-3.0, 3.0), eps_dist(1e-6, 0.99);
  std::bernoulli_distribution coin(0.8);
  for (int trial = 0; trial < 2000; ++trial) {
    const Eigen::Index d = 1 + trial % 13;
    VectorXd raw(d);
    Mask m(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      raw[i] = wide(rng);
      m[i] = coin(rng);
    }
    const double eps = eps_dist(rng);
    const auto once = clamp(raw, eps, m);
    const auto twice = clamp(once.deltas(), eps, m);
    ASSERT_EQ(once.deltas(), twice.deltas());
    for (Eigen::Index i = 0; i < d; ++i) {
      ASSERT_LE(std::abs(once[i]), eps);
      if (!m[i]) ASSERT_EQ(once[i], 0.0);
    }
  }
}

TEST(ApplyProperty, RecoverRatiosRoundTrip) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dims(0.01, 2.0), eps_dist(1e-3, 0.9);
  for (int trial = 0; trial < 2000; ++trial) {
    const Eigen::Index d = 1 + trial % 9;
    VectorXd base(d);
    for (Eigen::Index i = 0; i < d; ++i) base[i] = dims(rng);
    const BodyShaped shape(base, std::vector<std::string>(static_cast<std::size_t>(d), "p"), {},
                           DimensionKind::Thickness, Mask::Constant(d, true));
    const double eps = eps_dist(rng);
    const auto delta = sample_initial(d, eps, shape.attackable(), rng);
    const auto adv = apply_perturbation(shape, delta);
    ASSERT_LE((recover_ratios(adv) - delta.deltas()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(SampleInitial, ZeroEpsilonGivesZeroVector) {
  std::mt19937_64 rng(1);
  EXPECT_EQ(sample_initial(4, 0.0, Mask::Constant(4, true), rng).deltas(), VectorXd::Zero(4));
}

TEST(SampleInitial, SupportAndMask) {
  std::mt19937_64 rng(2);
  Mask m = Mask::Constant(5, true);
  m[2] = false;
  for (int k = 0; k < 1000; ++k) {
    const auto d = sample_initial(5, 0.05, m, rng);
    ASSERT_LE(d.deltas().cwiseAbs().maxCoeff(), 0.05);
    ASSERT_EQ(d[2], 0.0);
  }
}

TEST(SampleInitial, MeanWithinThreeStandardErrors) {
  std::mt19937_64 rng(3);
  const int n = 100000;
  const double eps = 0.05;
  double sum = 0.0;
  for (int k = 0; k < n; ++k) sum += sample_initial(1, eps, Mask::Constant(1, true), rng)[0];
  // U(-eps, eps) has standard deviation eps / sqrt(3).
  const double se = eps / std::sqrt(3.0) / std::sqrt(static_cast<double>(n));
  EXPECT_LT(std::abs(sum / n), 3.0 * se);
}

TEST(PerturbationReport, SignedPercentRows) {
  const BodyShaped shape(VectorXd::Ones(2), {"left thigh", "torso"}, {}, DimensionKind::Length,
                         (Mask(2) << true, false).finished());
  const auto rows = perturbation_report(shape, PerturbationVectord(vec({-0.0474, 0.0}), 0.05));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].part, "left thigh");
  EXPECT_DOUBLE_EQ(*rows[0].percent, -4.74);
  EXPECT_EQ(format_percent(rows[0].percent), "-4.74");
  EXPECT_EQ(rows[1].part, "torso");
  EXPECT_FALSE(rows[1].percent.has_value());
  EXPECT_EQ(format_percent(rows[1].percent), "-");
}

TEST(PerturbationReport, ZeroPrintsPositive) {
  EXPECT_EQ(format_percent(percent_of_ratio(0.0)), "+0.00");
  EXPECT_EQ(format_percent(percent_of_ratio(-1e-7)), "+0.00");
  EXPECT_EQ(format_percent(percent_of_ratio(0.0482)), "+4.82");
}

TEST(BodyShapeJson, RoundTrip) {
  const BodyShaped shape(VectorXd::LinSpaced(4, 0.1, 0.4), {"torso", "a", "b", "c"}, {{1, 2}},
                         DimensionKind::Thickness, (Mask(4) << false, true, true, true).finished());
  const auto back = body_shape_from_json(to_json(shape));
  EXPECT_EQ(back.values(), shape.values());
  EXPECT_EQ(back.part_names(), shape.part_names());
  EXPECT_EQ(back.mirror_pairs(), shape.mirror_pairs());
  EXPECT_EQ(back.kind(), DimensionKind::Thickness);
  EXPECT_TRUE((back.attackable() == shape.attackable()).all());
}

TEST(BodyShapeJson, MalformedIsConfigError) {
  EXPECT_THROW(body_shape_from_json({{"kind", "length"}}), ConfigError);
  EXPECT_THROW(body_shape_from_json({{"kind", "width"}, {"part_names", {"a"}}, {"values", {1.0}}}),
               ConfigError);
  EXPECT_THROW(body_shape_from_json({{"kind", "length"}, {"part_names", {"a"}}, {"values", {-1.0}}}),
               ConfigError);
}
