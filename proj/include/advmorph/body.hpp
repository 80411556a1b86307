#pragma once

// Body shapes and multiplicative shape perturbations.
//
// A body shape b is a vector of positive part dimensions. An attack applies
// b_adv = (1 + delta) o b with ||delta||_inf <= epsilon, and entries masked as
// non-attackable never move.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "advmorph/errors.hpp"

namespace advmorph {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using VectorXd = Vector<double>;
using Mask = Eigen::Array<bool, Eigen::Dynamic, 1>;

enum class DimensionKind { Length, Thickness };

struct MirrorPair {
  Eigen::Index left;
  Eigen::Index right;
  friend bool operator==(const MirrorPair&, const MirrorPair&) = default;
};

template <typename Scalar>
class BodyShape {
 public:
  BodyShape(Vector<Scalar> values, std::vector<std::string> part_names,
            std::vector<MirrorPair> mirror_pairs, DimensionKind kind,
            Mask attackable)
      : values_(std::move(values)),
        part_names_(std::move(part_names)),
        mirror_pairs_(std::move(mirror_pairs)),
        kind_(kind),
        attackable_(std::move(attackable)) {
    const auto n = values_.size();
    if (n == 0) throw ContractViolation("body shape must have at least one part");
    if (static_cast<Eigen::Index>(part_names_.size()) != n || attackable_.size() != n)
      throw ContractViolation("body shape: values, part_names and attackable differ in length");
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!(values_[i] > Scalar(0)) || !std::isfinite(static_cast<double>(values_[i])))
        throw ContractViolation("body shape: part '" + part_names_[i] +
                                "' must have a strictly positive dimension");
    }
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (const auto& p : mirror_pairs_) {
      for (auto idx : {p.left, p.right}) {
        if (idx < 0 || idx >= n)
          throw ContractViolation("body shape: mirror pair index out of range");
        if (used[static_cast<std::size_t>(idx)])
          throw ContractViolation("body shape: mirror pairs must be disjoint");
        used[static_cast<std::size_t>(idx)] = true;
      }
    }
  }

  const Vector<Scalar>& values() const noexcept { return values_; }
  const std::vector<std::string>& part_names() const noexcept { return part_names_; }
  const std::vector<MirrorPair>& mirror_pairs() const noexcept { return mirror_pairs_; }
  DimensionKind kind() const noexcept { return kind_; }
  const Mask& attackable() const noexcept { return attackable_; }
  Eigen::Index size() const noexcept { return values_.size(); }

  /// Parts that belong to no mirror pair (torso, head, ...).
  std::vector<Eigen::Index> unpaired() const {
    std::vector<bool> used(static_cast<std::size_t>(size()), false);
    for (const auto& p : mirror_pairs_) {
      used[static_cast<std::size_t>(p.left)] = true;
      used[static_cast<std::size_t>(p.right)] = true;
    }
    std::vector<Eigen::Index> out;
    for (Eigen::Index i = 0; i < size(); ++i)
      if (!used[static_cast<std::size_t>(i)]) out.push_back(i);
    return out;
  }

 private:
  Vector<Scalar> values_;
  std::vector<std::string> part_names_;
  std::vector<MirrorPair> mirror_pairs_;
  DimensionKind kind_;
  Mask attackable_;
};

/// Signed ratio vector inside the epsilon max-norm ball.
template <typename Scalar>
class PerturbationVector {
 public:
  PerturbationVector(Vector<Scalar> deltas, Scalar epsilon)
      : deltas_(std::move(deltas)), epsilon_(epsilon) {
    if (!(epsilon_ >= Scalar(0)))
      throw ContractViolation("perturbation: epsilon must be non-negative");
    for (Eigen::Index i = 0; i < deltas_.size(); ++i) {
      if (!(std::abs(deltas_[i]) <= epsilon_))
        throw ContractViolation("perturbation: component outside the epsilon ball");
    }
  }

  static PerturbationVector zero(Eigen::Index dim, Scalar epsilon = Scalar(0)) {
    return PerturbationVector(Vector<Scalar>::Zero(dim), epsilon);
  }

  const Vector<Scalar>& deltas() const noexcept { return deltas_; }
  Scalar epsilon() const noexcept { return epsilon_; }
  Eigen::Index size() const noexcept { return deltas_.size(); }
  Scalar operator[](Eigen::Index i) const { return deltas_[i]; }

 private:
  Vector<Scalar> deltas_;
  Scalar epsilon_;
};

template <typename Scalar>
struct AdversarialShape {
  BodyShape<Scalar> base;
  PerturbationVector<Scalar> delta;
  Vector<Scalar> values;
};

using BodyShaped = BodyShape<double>;
using PerturbationVectord = PerturbationVector<double>;
using AdversarialShaped = AdversarialShape<double>;

/// Clean shape viewed as an adversarial shape with a zero perturbation.
template <typename Scalar>
AdversarialShape<Scalar> unperturbed(const BodyShape<Scalar>& shape) {
  return {shape, PerturbationVector<Scalar>::zero(shape.size()), shape.values()};
}

template <typename Scalar>
AdversarialShape<Scalar> apply_perturbation(const BodyShape<Scalar>& shape,
                                            const PerturbationVector<Scalar>& delta) {
  if (delta.size() != shape.size())
    throw ContractViolation("apply_perturbation: perturbation has dimension " +
                            std::to_string(delta.size()) + ", shape has " +
                            std::to_string(shape.size()));
  for (Eigen::Index i = 0; i < shape.size(); ++i) {
    if (!shape.attackable()[i] && delta[i] != Scalar(0))
      throw ContractViolation("apply_perturbation: non-attackable part '" +
                              shape.part_names()[static_cast<std::size_t>(i)] +
                              "' has a non-zero perturbation");
  }
  Vector<Scalar> values =
      ((Vector<Scalar>::Ones(shape.size()) + delta.deltas()).array() * shape.values().array())
          .matrix();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (!(values[i] > Scalar(0)))
      throw DegenerateShape("apply_perturbation: part '" +
                            shape.part_names()[static_cast<std::size_t>(i)] +
                            "' would have a non-positive dimension");
  }
  return {shape, delta, std::move(values)};
}

/// Ratio vector that maps `base` onto `values`, i.e. values / base - 1.
template <typename Scalar>
Vector<Scalar> recover_ratios(const AdversarialShape<Scalar>& adv) {
  return (adv.values.array() / adv.base.values().array() - Scalar(1)).matrix();
}

/// Projects a raw ratio vector onto the feasible set: componentwise clip to
/// [-epsilon, epsilon], masked entries forced to zero. Total and idempotent.
template <typename Derived>
PerturbationVector<typename Derived::Scalar> clamp(const Eigen::MatrixBase<Derived>& raw,
                                                   typename Derived::Scalar epsilon,
                                                   const Mask& attackable) {
  using Scalar = typename Derived::Scalar;
  if (raw.size() != attackable.size())
    throw ContractViolation("clamp: mask and vector differ in length");
  const Scalar eps = std::max(epsilon, Scalar(0));
  Vector<Scalar> out(raw.size());
  for (Eigen::Index i = 0; i < raw.size(); ++i) {
    // std::clamp returns one of its bounds exactly, so no overshoot.
    out[i] = attackable[i] ? std::clamp(raw(i), -eps, eps) : Scalar(0);
  }
  return PerturbationVector<Scalar>(std::move(out), eps);
}

/// Uniform draw on [-epsilon, epsilon] for each attackable component.
template <typename Scalar, typename Rng>
PerturbationVector<Scalar> sample_initial(Eigen::Index dim, Scalar epsilon, const Mask& attackable,
                                          Rng& rng) {
  if (dim < 1) throw ContractViolation("sample_initial: dimension must be at least 1");
  if (attackable.size() != dim) throw ContractViolation("sample_initial: mask size mismatch");
  Vector<Scalar> out = Vector<Scalar>::Zero(dim);
  if (epsilon > Scalar(0)) {
    std::uniform_real_distribution<Scalar> uniform(-epsilon, epsilon);
    for (Eigen::Index i = 0; i < dim; ++i)
      if (attackable[i]) out[i] = uniform(rng);
  }
  return PerturbationVector<Scalar>(std::move(out), std::max(epsilon, Scalar(0)));
}

struct ReportRow {
  std::string part;
  std::optional<double> percent;  // empty for non-attackable parts
};

/// Percent rounded to two decimals, with negative zero folded to +0.
inline double percent_of_ratio(double ratio) {
  double pct = std::round(ratio * 100.0 * 100.0) / 100.0;
  return pct == 0.0 ? 0.0 : pct;
}

template <typename Scalar>
std::vector<ReportRow> perturbation_report(const BodyShape<Scalar>& shape,
                                           const PerturbationVector<Scalar>& delta) {
  if (delta.size() != shape.size())
    throw ContractViolation("perturbation_report: dimension mismatch");
  std::vector<ReportRow> rows;
  rows.reserve(static_cast<std::size_t>(shape.size()));
  for (Eigen::Index i = 0; i < shape.size(); ++i) {
    ReportRow row{shape.part_names()[static_cast<std::size_t>(i)], std::nullopt};
    if (shape.attackable()[i]) row.percent = percent_of_ratio(static_cast<double>(delta[i]));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// "+4.74", "-0.36", "+0.00" or "-" for a missing entry.
std::string format_percent(const std::optional<double>& percent);

std::string to_string(DimensionKind kind);
DimensionKind dimension_kind_from_string(const std::string& s);

}  // namespace advmorph
