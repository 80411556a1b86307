#pragma once

// Attack protocol: for each epsilon > 0 and each attack kind, search for the
// worst perturbation and grand-average it; epsilon = 0 grand-averages the clean
// body once and never searches.

#include <optional>
#include <string>
#include <vector>

#include "advmorph/config.hpp"
#include "advmorph/desearch.hpp"
#include "advmorph/eval.hpp"

namespace advmorph {

/// Kind label used in reports for the clean baseline.
inline constexpr const char* kCleanKind = "clean";

struct CellResult {
  double epsilon = 0.0;
  std::string kind;  // length | thickness | both | clean
  bool ok = false;
  std::string error;
  std::optional<SearchResult> search;
  std::optional<GrandAverage> grand;
};

struct SweepReport {
  ExperimentConfig config;
  ToyWalkerSpec robot;
  std::vector<CellResult> cells;

  bool all_ok() const;
};

/// Seed for the DE search of one (epsilon, kind) cell.
std::uint64_t search_seed(std::uint64_t master_seed, double epsilon, AttackKind kind);
/// Master seed for grand averages. Shared by every cell of a sweep (common
/// random numbers) and disjoint from every search seed block.
std::uint64_t evaluation_seed(std::uint64_t master_seed);

DEConfig de_config_for(const ExperimentConfig& config, const ToyWalkerSpec& robot, double epsilon,
                       AttackKind kind);

/// Fitness = M-episode average reward of the perturbed robot.
FitnessFn attack_fitness(const ToyWalkerSpec& robot, const EvalSettings& eval, double epsilon,
                         AttackKind kind, std::uint64_t seed);

SearchResult run_search(const ExperimentConfig& config, const ToyWalkerSpec& robot, double epsilon,
                        AttackKind kind);

GrandAverage evaluate_perturbation(const ExperimentConfig& config, const ToyWalkerSpec& robot,
                                   double epsilon, AttackKind kind, const VectorXd& delta);

GrandAverage evaluate_clean(const ExperimentConfig& config, const ToyWalkerSpec& robot);

/// Failures are recorded in the cell; the remaining cells still run.
SweepReport run_sweep(const ExperimentConfig& config);

}  // namespace advmorph
