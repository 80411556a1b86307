// advmorph: adversarial body-shape search for legged walkers.

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <iostream>
#include <sstream>

#include "advmorph/logging.hpp"
#include "advmorph/report.hpp"
#include "advmorph/validate_de.hpp"

using namespace advmorph;
namespace fs = std::filesystem;

namespace {

struct CommonFlags {
  std::string config_path;
  std::vector<double> epsilons;
  std::vector<std::string> kinds;
  std::optional<std::uint64_t> seed;
  std::optional<int> runs, episodes, horizon, generations, population, threads;
  std::optional<std::string> out;
  std::optional<std::string> robot, robot_file;
  bool parallel = false;

  void add_to(CLI::App* app, bool multi_epsilon) {
    app->add_option("--config", config_path, "JSON experiment configuration")->check(CLI::ExistingFile);
    if (multi_epsilon)
      app->add_option("--epsilon", epsilons, "Attack strengths (repeatable or comma separated)")
          ->delimiter(',');
    else
      app->add_option("--epsilon", epsilons, "Attack strength")->expected(1);
    app->add_option("--kind", kinds, "length|thickness|both")->delimiter(',');
    app->add_option("--seed", seed, "Master seed");
    app->add_option("--runs", runs, "Grand-average runs");
    app->add_option("--episodes", episodes, "Episodes per fitness estimate (M)");
    app->add_option("--horizon", horizon, "Episode horizon (T)");
    app->add_option("--generations", generations, "DE generations");
    app->add_option("--population", population, "DE population size (NP)");
    app->add_option("--threads", threads, "Worker threads for fitness evaluation (0 = all cores)");
    app->add_option("--robot", robot, "toy_biped|toy_quadruped|custom");
    app->add_option("--robot-file", robot_file, "Robot morphology JSON (implies --robot custom)");
    app->add_option("--out", out, "Output directory");
    app->add_flag("--parallel", parallel, "Run sweep cells concurrently");
  }

  ExperimentConfig resolve() const {
    ExperimentConfig c = config_path.empty() ? ExperimentConfig{} : load_config(config_path);
    if (!epsilons.empty()) c.epsilons = epsilons;
    if (!kinds.empty()) {
      c.kinds.clear();
      for (const auto& k : kinds) c.kinds.push_back(attack_kind_from_string(k));
    }
    if (seed) c.master_seed = *seed;
    if (runs) c.eval.runs = *runs;
    if (episodes) c.eval.episodes = *episodes;
    if (horizon) c.eval.horizon = *horizon;
    if (generations) c.de.generations = *generations;
    if (population) c.de.population_size = *population;
    if (threads) c.threads = *threads;
    if (robot) c.robot = robot_choice_from_string(*robot);
    if (robot_file) {
      c.robot = RobotChoice::Custom;
      c.robot_file = *robot_file;
    }
    if (out) c.output_dir = *out;
    c.parallel = c.parallel || parallel;
    c.validate();
    return c;
  }
};

int cmd_search(const CommonFlags& flags) {
  const ExperimentConfig config = flags.resolve();
  if (config.epsilons.size() != 1 || config.epsilons.front() <= 0.0)
    throw ConfigError("search needs exactly one epsilon > 0 (use --epsilon)");
  if (config.kinds.size() != 1) throw ConfigError("search needs exactly one --kind");
  const double eps = config.epsilons.front();
  const AttackKind kind = config.kinds.front();
  const ToyWalkerSpec robot = resolve_robot(config);
  const fs::path dir = config.output_dir;

  const SearchResult result = run_search(config, robot, eps, kind);
  nlohmann::json j{{"epsilon", eps},
                   {"kind", to_string(kind)},
                   {"robot", robot.name},
                   {"config", to_json(config)},
                   {"search", to_json(result)}};
  write_json_file(dir / "search.json", j);
  write_atomic(dir / "best_trace.csv", best_trace_csv(result.best_trace));
  const auto n = robot.lengths.size();
  std::optional<VectorXd> length, thickness;
  if (kind == AttackKind::Length) length = result.delta_best;
  if (kind == AttackKind::Thickness) thickness = result.delta_best;
  if (kind == AttackKind::Both) {
    length = result.delta_best.head(n);
    thickness = result.delta_best.tail(n);
  }
  const std::string table = perturbations_csv(robot, length, thickness);
  write_atomic(dir / "perturbations.csv", table);
  std::cout << fmt::format("G_min = {}\n", format_number(result.g_min)) << table;
  return 0;
}

int cmd_sweep(const CommonFlags& flags) {
  const ExperimentConfig config = flags.resolve();
  const SweepReport report = run_sweep(config);
  emit_reports(report, config.output_dir);
  std::cout << rewards_csv(report);
  for (const auto& c : report.cells)
    if (!c.ok) std::cerr << fmt::format("cell eps={} kind={} failed: {}\n", c.epsilon, c.kind, c.error);
  return report.all_ok() ? 0 : 1;
}

int cmd_evaluate(const CommonFlags& flags, const std::string& delta_path, const std::string& trace_path) {
  ExperimentConfig config = flags.resolve();
  const ToyWalkerSpec robot = resolve_robot(config);
  const fs::path dir = config.output_dir;
  const nlohmann::json j = read_json_file(delta_path);

  double eps = 0.0;
  std::string kind_label = kCleanKind;
  std::optional<AttackKind> kind;
  VectorXd delta;
  try {
    if (j.contains("search")) {
      delta = search_result_from_json(j["search"]).delta_best;
    } else if (j.contains("deltas")) {
      const auto d = j["deltas"].get<std::vector<double>>();
      delta = Eigen::Map<const VectorXd>(d.data(), static_cast<Eigen::Index>(d.size()));
    }
    eps = j.value("epsilon", 0.0);
    if (j.contains("kind")) {
      kind_label = j["kind"].get<std::string>();
      if (kind_label != kCleanKind) kind = attack_kind_from_string(kind_label);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(delta_path + ": " + e.what());
  }
  if (kind && delta.size() == 0) throw ConfigError(delta_path + ": no perturbation found");

  const GrandAverage grand = kind ? evaluate_perturbation(config, robot, eps, *kind, delta)
                                  : evaluate_clean(config, robot);
  const CellResult cell{eps, kind_label, true, {}, std::nullopt, grand};
  const std::string stem = cell_stem(cell);
  const std::string means = "run_means_" + stem + ".csv";
  write_atomic(dir / means, run_means_csv(grand.run_means));
  const auto out = grand_average_json(eps, kind_label, grand, means);
  write_json_file(dir / ("grand_" + stem + ".json"), out);
  std::cout << out.dump(2) << "\n";

  if (!trace_path.empty()) {
    ToyWalkerEnv env(robot);
    const Morphology morph = kind ? make_morphology(robot.lengths, robot.thicknesses, *kind, delta, eps)
                                  : clean_morphology(robot.lengths, robot.thicknesses);
    std::string csv = "t,v_fwd,theta,reward\n";
    run_episode(env, OpenLoopPolicy{}, morph, config.eval.horizon,
                derive_seed(evaluation_seed(config.master_seed), 0, 0),
                [&](int t, const StepResult& r) {
                  csv += fmt::format("{},{},{},{}\n", t, format_number(r.forward_velocity),
                                     format_number(r.state[0]), format_number(r.reward));
                });
    write_atomic(trace_path, csv);
  }
  return 0;
}

int cmd_report(const std::string& from, const std::string& out) {
  const SweepReport report = sweep_report_from_json(read_json_file(from));
  const fs::path dir = out.empty() ? fs::path(from).parent_path() : fs::path(out);
  emit_reports(report, dir);
  std::cout << rewards_csv(report);
  return report.all_ok() ? 0 : 1;
}

int cmd_validate_de(int seeds, bool quiet) {
  bool ok = true;
  for (auto c : default_validation_suite()) {
    if (seeds > 0) {
      c.required_passes = static_cast<int>(std::ceil(c.required_passes * seeds / double(c.seeds)));
      c.seeds = seeds;
    }
    const auto outcome = run_validation_case(c, quiet ? nullptr : &std::cout);
    std::cout << fmt::format("{}: {}/{} seeds passed (need {}) in {:.2f}s -> {}\n", c.name,
                             outcome.passes, c.seeds, c.required_passes, outcome.seconds,
                             outcome.ok() ? "PASS" : "FAIL");
    ok = ok && outcome.ok();
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  init_logging();
  CLI::App app{"Adversarial body-shape search for legged walkers"};
  app.require_subcommand(1);

  CommonFlags search_flags, sweep_flags, eval_flags;
  auto* search_cmd = app.add_subcommand("search", "Single-epsilon differential-evolution attack");
  search_flags.add_to(search_cmd, false);

  auto* sweep_cmd = app.add_subcommand("sweep", "Full epsilon sweep with clean baseline and reports");
  sweep_flags.add_to(sweep_cmd, true);

  auto* eval_cmd = app.add_subcommand("evaluate", "Grand average of a given perturbation file");
  eval_flags.add_to(eval_cmd, false);
  std::string delta_path, trace_path;
  eval_cmd->add_option("--delta", delta_path, "search.json or {kind, epsilon, deltas} file")
      ->required()
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--trace", trace_path, "Dump one episode as CSV t,v_fwd,theta,reward");

  auto* report_cmd = app.add_subcommand("report", "Re-emit report files from result.json");
  std::string report_from, report_out;
  report_cmd->add_option("--from", report_from, "result.json")->required()->check(CLI::ExistingFile);
  report_cmd->add_option("--out", report_out, "Output directory (default: next to result.json)");

  auto* validate_cmd = app.add_subcommand("validate-de", "DE convergence suite on sphere/rastrigin");
  int seeds = 0;
  bool quiet = false;
  validate_cmd->add_option("--seeds", seeds, "Seeds per case (default 100)");
  validate_cmd->add_flag("--quiet", quiet, "Only print per-case summaries");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*search_cmd) return cmd_search(search_flags);
    if (*sweep_cmd) return cmd_sweep(sweep_flags);
    if (*eval_cmd) return cmd_evaluate(eval_flags, delta_path, trace_path);
    if (*report_cmd) return cmd_report(report_from, report_out);
    if (*validate_cmd) return cmd_validate_de(seeds, quiet);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
