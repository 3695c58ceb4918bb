#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bmmg/allocation.hpp"
#include "bmmg/harness.hpp"

namespace {

using namespace bmmg;

std::vector<double> parse_value_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(parse_si_value(item));
  if (out.empty()) throw std::invalid_argument("--values: empty list");
  return out;
}

int cmd_phi(const std::string& config_path) {
  const ScenarioConfig cfg = parse_config_file(config_path);
  const Scenario sc = build_scenario(cfg, run_seed(cfg.seed, 0));
  std::cout << "phi = " << compute_phi(sc) << "\n";
  return 0;
}

int cmd_pmne(const std::string& config_path) {
  const ScenarioConfig cfg = parse_config_file(config_path);
  const Scenario sc = build_scenario(cfg, run_seed(cfg.seed, 0));
  const GameSpec game = build_game(sc);
  const double p_star = solve_fair_pmne(game);
  std::cout << std::setprecision(10) << "p* = " << p_star << "\n";
  for (int n = 0; n < sc.sbs_count(); ++n) {
    const int files = static_cast<int>(sc.demands.per_sbs[n].predicted.size());
    std::cout << "sbs " << n << " request-count pmf:";
    for (double q : bmmg_mixed_strategy(files, p_star))
      std::cout << ' ' << std::setprecision(6) << q;
    std::cout << "\n";
  }
  return 0;
}

int cmd_bge(const std::string& config_path, double kappa) {
  const ScenarioConfig cfg = parse_config_file(config_path);
  const Scenario sc = build_scenario(cfg, run_seed(cfg.seed, 0));
  const GameSpec game = build_game(sc);
  const BgeResult fp = bge_fixed_point(game, kappa);
  std::cout << std::setprecision(10) << "iterations = " << fp.iterations
            << "\nresidual = " << fp.residual
            << "\ncontraction_ok = " << (fp.contraction_ok ? "yes" : "no") << "\np =";
  for (double p : fp.p) std::cout << ' ' << std::setprecision(6) << p;
  std::cout << "\nepsilon_bound = " << epsilon_bound(kappa) << "\n";
  return 0;
}

int cmd_learn(const std::string& config_path, std::uint64_t seed, bool seed_given,
              const std::string& trace_path) {
  const ScenarioConfig cfg = parse_config_file(config_path);
  if (!seed_given) seed = run_seed(cfg.seed, 0);
  const Scenario sc = build_scenario(cfg, seed);
  const GameSpec game = build_game(sc);
  StepSchedule schedule{cfg.alpha_exponent, cfg.lambda_exponent, cfg.kappa, cfg.kappa_inverse_t};
  NoiseModel noise;
  if (game.g > 0) noise.sigma_eps = cfg.noise_rel * std::abs(game.uc(1));
  LearnOptions options;
  options.tol = cfg.learn_tol;
  options.window = cfg.learn_window;
  options.max_iters = cfg.learn_max_iters;
  options.record_trace = !trace_path.empty();
  const LearnOutcome out = run_learning(game, schedule, noise, seed, options);
  std::cout << "iterations = " << out.iterations
            << "\nconverged = " << (out.converged ? "yes" : "no") << "\np =";
  for (double p : out.p) std::cout << ' ' << std::setprecision(6) << p;
  std::cout << "\n";
  if (!trace_path.empty()) {
    std::ofstream tf(trace_path);
    if (!tf) throw std::runtime_error("cannot open trace file " + trace_path);
    tf << format_trace(out.trace);
  }
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& axis_name,
              const std::string& values, const std::string& out_path,
              bool deterministic_output) {
  const ScenarioConfig cfg = parse_config_file(config_path);
  const SweepResult result = sweep(cfg, parse_axis(axis_name), parse_value_list(values));
  const std::string csv = sweep_csv(result, deterministic_output);
  if (out_path.empty() || out_path == "-") {
    std::cout << csv;
  } else {
    std::ofstream of(out_path);
    if (!of) throw std::runtime_error("cannot open output file " + out_path);
    of << csv;
  }
  return 0;
}

int cmd_compare(const std::string& config_path) {
  const ScenarioConfig cfg = parse_config_file(config_path);
  const CompareReport report = compare(cfg);
  std::cout << std::setprecision(6) << "runs = " << report.runs
            << "\noca_match_fraction = " << report.oca_match_fraction
            << "\nmean_requested_bits bmrl = " << report.mean_bits_bmrl
            << "\nmean_requested_bits oca  = " << report.mean_bits_oca
            << "\nmean_requested_bits cga  = " << report.mean_bits_cga
            << "\nmean_requested_bits rfa  = " << report.mean_bits_rfa
            << "\nbmrl_over_cga = " << report.improvement_over_cga
            << "\nbmrl_over_rfa = " << report.improvement_over_rfa
            << "\nmean_iterations_bmrl = " << report.mean_iterations_bmrl << "\n";
  return 0;
}

int cmd_verify(const std::string& config_path) {
  const ScenarioConfig cfg = parse_config_file(config_path);
  const Scenario sc = build_scenario(cfg, run_seed(cfg.seed, 0));
  int failures = 0;
  const auto check = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "PASS" : "FAIL") << "  " << name << "\n";
    if (!ok) ++failures;
  };

  const int phi = compute_phi(sc);
  check("phi in [0, total predicted]",
        phi >= 0 && phi <= sc.demands.total_predicted());
  check("demands met at phi", phi == 0 || demands_met(sc, round_robin_counts(sc.demands, phi)));
  check("demands unmet past phi",
        phi >= sc.demands.total_predicted() ||
            !demands_met(sc, round_robin_counts(sc.demands, phi + 1)));

  const GameSpec game = build_game(sc, phi);
  bool sign_ok = true;
  try {
    game.validate_sign_structure();
  } catch (const std::exception&) {
    sign_ok = false;
  }
  check("utility table sign structure", sign_ok);
  bool antisym_ok = true;
  for (int f = 1; f <= game.g; ++f)
    if (std::abs(game.ud(f) + game.uc(game.g - f + 1)) > 1e-9 * (1.0 + std::abs(game.uc(1))))
      antisym_ok = false;
  check("request/defer antisymmetry", antisym_ok);

  if (game.g > 0 && game.uc(1) > 0.0 && game.uc(game.g) < 0.0) {
    const double p_star = solve_fair_pmne(game);
    const double residual = expected_utility(GameAction::Request, p_star, game);
    check("fair PMNE indifference |u_bar| < 1e-6", std::abs(residual) < 1e-6);
  } else {
    check("fair PMNE skipped (no interior crossing)", true);
  }

  bool bge_ok = true;
  double bge_residual = 0.0;
  try {
    const BgeResult fp = bge_fixed_point(game, cfg.kappa, 1e-9, 200'000);
    bge_residual = fp.residual;
  } catch (const std::exception&) {
    bge_ok = false;
  }
  check("BGE fixed point residual < 1e-9", bge_ok && bge_residual < 1e-9);

  StepSchedule schedule{cfg.alpha_exponent, cfg.lambda_exponent, cfg.kappa, cfg.kappa_inverse_t};
  check("step-size schedule", validate_schedule(schedule).pass());

  std::cout << (failures == 0 ? "verify: all checks passed\n"
                              : "verify: " + std::to_string(failures) + " check(s) failed\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Backhaul minority-game simulator"};
  app.require_subcommand(1);

  std::string config_path, axis_name, values, out_path, trace_path;
  double kappa = 1.0;
  std::uint64_t seed = 0;
  bool deterministic_output = false;
  app.add_flag("--deterministic-output", deterministic_output,
               "suppress timestamps in generated files");

  auto* phi_cmd = app.add_subcommand("phi", "print the capacity threshold");
  phi_cmd->add_option("config", config_path, "config file")->required();

  auto* pmne_cmd = app.add_subcommand("pmne", "fair mixed equilibrium");
  pmne_cmd->add_option("config", config_path, "config file")->required();

  auto* bge_cmd = app.add_subcommand("bge", "Boltzmann-Gibbs fixed point");
  bge_cmd->add_option("config", config_path, "config file")->required();
  auto* kappa_opt = bge_cmd->add_option("--kappa", kappa, "exploitation sharpness");

  auto* learn_cmd = app.add_subcommand("learn", "run the decentralized learner");
  learn_cmd->add_option("config", config_path, "config file")->required();
  auto* seed_opt = learn_cmd->add_option("--seed", seed, "run seed");
  learn_cmd->add_option("--trace", trace_path, "write a (t, player, action, u, p) trace");

  auto* sweep_cmd = app.add_subcommand("sweep", "axis sweep, CSV output");
  sweep_cmd->add_option("config", config_path, "config file")->required();
  sweep_cmd->add_option("--axis", axis_name, "file_count|capacity|kappa")->required();
  sweep_cmd->add_option("--values", values, "comma-separated axis values")->required();
  sweep_cmd->add_option("--out", out_path, "output CSV path ('-' for stdout)");

  auto* compare_cmd = app.add_subcommand("compare", "all four algorithms + summary");
  compare_cmd->add_option("config", config_path, "config file")->required();

  auto* verify_cmd = app.add_subcommand("verify", "run instance-level invariant checks");
  verify_cmd->add_option("config", config_path, "config file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (phi_cmd->parsed()) return cmd_phi(config_path);
    if (pmne_cmd->parsed()) return cmd_pmne(config_path);
    if (bge_cmd->parsed()) {
      if (kappa_opt->count() == 0) kappa = parse_config_file(config_path).kappa;
      return cmd_bge(config_path, kappa);
    }
    if (learn_cmd->parsed())
      return cmd_learn(config_path, seed, seed_opt->count() > 0, trace_path);
    if (sweep_cmd->parsed())
      return cmd_sweep(config_path, axis_name, values, out_path, deterministic_output);
    if (compare_cmd->parsed()) return cmd_compare(config_path);
    if (verify_cmd->parsed()) return cmd_verify(config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
