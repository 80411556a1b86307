#include "advmorph/sweep.hpp"

#include <spdlog/spdlog.h>

#include <bit>
#include <future>

namespace advmorph {
namespace {

constexpr std::uint64_t kSearchPurpose = 0x5ea4c8ULL;
constexpr std::uint64_t kEvalPurpose = 0xe7a1ULL;

std::uint64_t kind_index(AttackKind kind) { return static_cast<std::uint64_t>(kind) + 1; }

CellResult run_cell(const ExperimentConfig& config, const ToyWalkerSpec& robot, double epsilon,
                    std::optional<AttackKind> kind) {
  CellResult cell;
  cell.epsilon = epsilon;
  cell.kind = kind ? to_string(*kind) : kCleanKind;
  try {
    if (!kind) {
      cell.grand = evaluate_clean(config, robot);
    } else {
      cell.search = run_search(config, robot, epsilon, *kind);
      cell.grand = evaluate_perturbation(config, robot, epsilon, *kind, cell.search->delta_best);
    }
    cell.ok = true;
    spdlog::info("cell eps={} kind={}: grand_mean={}", epsilon, cell.kind, cell.grand->mean);
  } catch (const SearchAborted& e) {
    cell.search = e.partial();
    cell.error = e.what();
  } catch (const Error& e) {
    cell.error = e.what();
  }
  if (!cell.ok) spdlog::error("cell eps={} kind={} failed: {}", epsilon, cell.kind, cell.error);
  return cell;
}

}  // namespace

bool SweepReport::all_ok() const {
  for (const auto& c : cells)
    if (!c.ok) return false;
  return true;
}

std::uint64_t search_seed(std::uint64_t master_seed, double epsilon, AttackKind kind) {
  return mix64(mix64(mix64(master_seed) ^ kSearchPurpose) ^
               mix64(std::bit_cast<std::uint64_t>(epsilon) + kind_index(kind)));
}

std::uint64_t evaluation_seed(std::uint64_t master_seed) {
  return mix64(mix64(master_seed) ^ kEvalPurpose);
}

DEConfig de_config_for(const ExperimentConfig& config, const ToyWalkerSpec& robot, double epsilon,
                       AttackKind kind) {
  DEConfig de;
  de.population_size = config.de.population_size.value_or(robot.population_size);
  de.F = config.de.F;
  de.CR = config.de.CR;
  de.generations = config.de.generations;
  de.epsilon = epsilon;
  de.dim = attack_dimension(robot.lengths, robot.thicknesses, kind);
  de.master_seed = search_seed(config.master_seed, epsilon, kind);
  de.threads = config.threads;
  return de;
}

FitnessFn attack_fitness(const ToyWalkerSpec& robot, const EvalSettings& eval, double epsilon,
                         AttackKind kind, std::uint64_t seed) {
  auto env = std::make_shared<const ToyWalkerEnv>(robot);
  auto policy = std::make_shared<const OpenLoopPolicy>();
  return [env, policy, eval, epsilon, kind, seed](const VectorXd& delta, std::uint64_t id) {
    const auto& spec = env->spec();
    const Morphology morph = make_morphology(spec.lengths, spec.thicknesses, kind, delta, epsilon);
    return average_cumulative_reward(*env, *policy, morph, eval.episodes, eval.horizon, {seed, id})
        .mean;
  };
}

SearchResult run_search(const ExperimentConfig& config, const ToyWalkerSpec& robot, double epsilon,
                        AttackKind kind) {
  const DEConfig de = de_config_for(config, robot, epsilon, kind);
  spdlog::info("search {} eps={} NP={} generations={}", to_string(kind), epsilon,
               de.population_size, de.generations);
  return search(attack_fitness(robot, config.eval, epsilon, kind, de.master_seed), de,
                attack_mask(robot.lengths, robot.thicknesses, kind));
}

GrandAverage evaluate_perturbation(const ExperimentConfig& config, const ToyWalkerSpec& robot,
                                   double epsilon, AttackKind kind, const VectorXd& delta) {
  const ToyWalkerEnv env(robot);
  const OpenLoopPolicy policy;
  const Morphology morph = make_morphology(robot.lengths, robot.thicknesses, kind, delta, epsilon);
  return grand_average(env, policy, morph, config.eval.runs, config.eval.episodes,
                       config.eval.horizon, evaluation_seed(config.master_seed), config.threads);
}

GrandAverage evaluate_clean(const ExperimentConfig& config, const ToyWalkerSpec& robot) {
  const ToyWalkerEnv env(robot);
  const OpenLoopPolicy policy;
  return grand_average(env, policy, clean_morphology(robot.lengths, robot.thicknesses),
                       config.eval.runs, config.eval.episodes, config.eval.horizon,
                       evaluation_seed(config.master_seed), config.threads);
}

SweepReport run_sweep(const ExperimentConfig& config) {
  config.validate();
  SweepReport report{config, resolve_robot(config), {}};

  struct Pending {
    double epsilon;
    std::optional<AttackKind> kind;
  };
  std::vector<Pending> plan;
  for (double eps : config.epsilons) {
    if (eps == 0.0) {
      plan.push_back({eps, std::nullopt});
    } else {
      for (auto kind : config.kinds) plan.push_back({eps, kind});
    }
  }

  if (config.parallel) {
    std::vector<std::future<CellResult>> futures;
    for (const auto& p : plan)
      futures.push_back(std::async(std::launch::async, run_cell, std::cref(config),
                                   std::cref(report.robot), p.epsilon, p.kind));
    for (auto& f : futures) report.cells.push_back(f.get());
  } else {
    for (const auto& p : plan) report.cells.push_back(run_cell(config, report.robot, p.epsilon, p.kind));
  }
  return report;
}

}  // namespace advmorph
