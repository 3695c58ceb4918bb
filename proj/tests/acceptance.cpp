// End-to-end acceptance checks. Each numbered check prints one PASS/FAIL line;
// the process exits non-zero if any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "bmmg/allocation.hpp"
#include "bmmg/harness.hpp"
#include "toy.hpp"

using namespace bmmg;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail = "") {
  std::printf("%s  %2d  %s%s%s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++g_failures;
}

GameSpec random_game(std::mt19937_64& rng, int g) {
  std::uniform_int_distribution<int> phi_dist(1, g - 1);
  std::uniform_real_distribution<double> mag(0.1, 5.0);
  const int phi = phi_dist(rng);
  std::vector<double> table(g);
  double level = 0.0;
  for (int f = phi; f >= 1; --f) table[f - 1] = (f == phi) ? 0.0 : (level += mag(rng));
  level = 0.0;
  for (int f = phi + 1; f <= g; ++f) table[f - 1] = (level -= mag(rng));
  return game_from_table(phi, std::move(table));
}

// ---- 1. binomial expected-utility vs exhaustive opponent enumeration -------

void check_expected_utility_oracle() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (int g = 2; g <= 12; ++g) {
    for (int trial = 0; trial < 50; ++trial) {
      const GameSpec game = random_game(rng, g);
      game.validate_sign_structure();
      for (int i = 0; i < 20; ++i) {
        const double p = (i + 0.5) / 20.0;
        for (GameAction a : {GameAction::Request, GameAction::Defer}) {
          double brute = 0.0;
          for (int mask = 0; mask < (1 << (g - 1)); ++mask) {
            const int k = __builtin_popcount(static_cast<unsigned>(mask));
            double prob = 1.0;
            for (int j = 0; j < g - 1; ++j) prob *= (mask >> j & 1) ? p : 1.0 - p;
            brute += prob * (a == GameAction::Request ? game.uc(k + 1) : game.ud(g - k));
          }
          worst = std::max(worst, std::abs(expected_utility(a, p, game) - brute));
        }
      }
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(1, "expected_utility matches exhaustive enumeration (G <= 12)",
         worst < 1e-10 && secs < 30.0,
         "max error " + std::to_string(worst) + ", " + std::to_string(secs) + " s");
}

// ---- 2. PNE set is exactly the profiles summing to phi ----------------------

void check_pne_enumeration() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  struct Case {
    int n_sbs, files, phi;
  };
  for (const Case& c : {Case{2, 3, 1}, Case{2, 3, 4}, Case{3, 2, 3}, Case{3, 3, 4},
                        Case{3, 3, 0}, Case{2, 2, 2}}) {
    const Scenario sc = testutil::unit_toy(c.n_sbs, c.files, c.n_sbs + c.phi);
    if (compute_phi(sc) != c.phi) {
      ok = false;
      continue;
    }
    std::vector<int> s(c.n_sbs, 0);
    while (true) {
      int total = 0;
      for (int v : s) total += v;
      if (is_pure_ne(s, sc, c.phi).is_ne != (total == c.phi)) ok = false;
      int i = 0;
      while (i < c.n_sbs && s[i] == c.files) s[i++] = 0;
      if (i == c.n_sbs) break;
      ++s[i];
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(2, "exhaustive PNE set equals {sum s = phi}", ok && secs < 10.0,
         std::to_string(secs) + " s");
}

// ---- 3. unique fair mixed equilibrium ---------------------------------------

void check_fair_pmne() {
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> offset(1e-6, 1e-3);
  bool ok = true;
  for (int trial = 0; trial < 100; ++trial) {
    GameSpec game = random_game(rng, 3 + trial % 12);
    if (!(game.uc(1) > 0.0 && game.uc(game.g) < 0.0)) {
      --trial;  // regenerate degenerate draws (phi = 1 pins u(c,1) = 0)
      continue;
    }
    const double p_star = solve_fair_pmne(game);
    if (std::abs(expected_utility(GameAction::Request, p_star, game)) >= 1e-9) ok = false;
    for (int restart = 0; restart < 10; ++restart) {
      int sign_changes = 0;
      double prev = expected_utility(GameAction::Request, 1e-9, game);
      for (double p = offset(rng); p < 1.0 - 1e-9; p += 1e-3) {
        const double cur = expected_utility(GameAction::Request, p, game);
        if ((prev > 0.0) != (cur > 0.0)) ++sign_changes;
        prev = cur;
      }
      if (sign_changes != 1) ok = false;
    }
  }
  report(3, "fair PMNE root and single sign change over 100 games", ok);
}

// ---- 4. request/defer antisymmetry ------------------------------------------

void check_antisymmetry() {
  std::mt19937_64 rng(104);
  bool ok = true;
  for (int trial = 0; trial < 50; ++trial) {
    const GameSpec game = random_game(rng, 2 + trial % 11);
    for (int f_c = 0; f_c < game.g; ++f_c)
      if (game.ud(game.g - f_c) != -game.uc(f_c + 1)) ok = false;
  }
  const Scenario sc = testutil::unit_toy(3, 4, 8.0);
  const GameSpec built = build_game(sc, compute_phi(sc));
  for (int f_c = 0; f_c < built.g; ++f_c)
    if (built.ud(built.g - f_c) != -built.uc(f_c + 1)) ok = false;
  report(4, "u(d, f_d) = -u(c, f_c + 1) exactly for all tabulated f_c", ok);
}

// ---- 5. unique Boltzmann-Gibbs fixed point; learner reaches it --------------

// Exploitation level that makes the smoothed-best-response map a sup-norm
// contraction: each off-diagonal Jacobian entry is at most kappa/4 times twice
// the largest adjacent utility step, so a row sum below 1 needs
// kappa < 2 / (max_step * (G - 1)). At stronger exploitation the fixed point
// is not unique (asymmetric equilibria appear), so uniqueness is only claimed
// and tested in this regime.
double contraction_kappa(const GameSpec& game) {
  double step = 0.0;
  for (int f = 1; f < game.g; ++f)
    step = std::max(step, std::abs(game.uc(f + 1) - game.uc(f)));
  return 1.8 / (step * (game.g - 1));
}

void check_bge_uniqueness_and_learning() {
  std::mt19937_64 rng(105);
  std::uniform_real_distribution<double> unif(0.01, 0.99);
  const double tol = 1e-9;
  bool unique_ok = true;
  for (int trial = 0; trial < 100; ++trial) {
    const GameSpec game = random_game(rng, 3 + trial % 8);
    double sum = 0.0;
    for (int f = 1; f <= game.g; ++f) sum += game.uc(f);
    const double kappa = std::min(contraction_kappa(game), 0.5 * std::abs(sum));
    if (kappa <= 0.0) {
      --trial;
      continue;
    }
    const BgeResult base = bge_fixed_point(game, kappa, tol);
    if (!base.contraction_ok) unique_ok = false;
    for (int restart = 0; restart < 10; ++restart) {
      std::vector<double> init(game.g);
      for (double& v : init) v = unif(rng);
      const BgeResult r = bge_fixed_point(game, kappa, tol, 1'000'000, &init);
      for (int n = 0; n < game.g; ++n)
        if (std::abs(r.p[n] - base.p[n]) >= 10.0 * tol) unique_ok = false;
    }
  }

  bool learn_ok = true;
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const GameSpec game = random_game(rng, 2 + trial % 4);
    double sum = 0.0;
    for (int f = 1; f <= game.g; ++f) sum += game.uc(f);
    // weak exploitation keeps both actions sampled so the estimates stay fresh
    const double kappa = std::min({0.2, contraction_kappa(game), 0.5 * std::abs(sum)});
    if (kappa <= 0.0) {
      --trial;
      continue;
    }
    const BgeResult fp = bge_fixed_point(game, kappa, tol);
    StepSchedule sched;
    sched.alpha_exponent = 0.6;
    sched.lambda_exponent = 0.9;
    sched.kappa = kappa;
    LearnOptions options;
    options.max_iters = 100'000;
    options.tol = 0.0;  // run the full horizon
    const LearnOutcome out = run_learning(game, sched, {0.0}, 500 + trial, options);
    for (int n = 0; n < game.g; ++n) worst = std::max(worst, std::abs(out.p[n] - fp.p[n]));
  }
  learn_ok = worst < 1e-2;
  report(5, "BGE unique from random starts; zero-noise learner lands within 1e-2",
         unique_ok && learn_ok, "worst learner gap " + std::to_string(worst));
}

// ---- 6. epsilon bound at the BGE --------------------------------------------

void check_epsilon_bound() {
  std::mt19937_64 rng(106);
  bool ok = true;
  for (int trial = 0; trial < 50; ++trial) {
    const GameSpec game = random_game(rng, 3 + trial % 9);
    for (double kappa : {0.01, 0.1, 1.0}) {
      const BgeResult fp = bge_fixed_point(game, kappa);
      for (int n = 0; n < game.g; ++n) {
        const double uc = expected_utility_general(n, GameAction::Request, fp.p, game);
        const double ud = expected_utility_general(n, GameAction::Defer, fp.p, game);
        const double mixed = fp.p[n] * uc + (1.0 - fp.p[n]) * ud;
        if (std::max(uc, ud) - mixed > epsilon_bound(kappa) + 1e-12) ok = false;
      }
    }
  }
  report(6, "max unilateral deviation gain at BGE <= log(2)/kappa", ok);
}

// ---- 7. named-case behavior -------------------------------------------------

struct CaseRun {
  int phi = 0;
  double min_p = 1.0, max_p = 0.0, sum_p = 0.0;
  long iterations = 0;
  bool converged = false;
};

CaseRun run_case(const ScenarioConfig& cfg, std::uint64_t seed) {
  const Scenario sc = build_scenario(cfg, seed);
  CaseRun out;
  out.phi = compute_phi(sc);
  const GameSpec game = build_game(sc, out.phi);
  StepSchedule sched{cfg.alpha_exponent, cfg.lambda_exponent, cfg.kappa, cfg.kappa_inverse_t};
  NoiseModel noise;
  if (game.g > 0) noise.sigma_eps = cfg.noise_rel * std::abs(game.uc(1));
  LearnOptions options;
  options.tol = cfg.learn_tol;
  options.window = cfg.learn_window;
  options.max_iters = cfg.learn_max_iters;
  const LearnOutcome learned = run_learning(game, sched, noise, seed, options);
  out.iterations = learned.iterations;
  out.converged = learned.converged;
  for (double p : learned.p) {
    out.min_p = std::min(out.min_p, p);
    out.max_p = std::max(out.max_p, p);
    out.sum_p += p;
  }
  return out;
}

void check_case_presets() {
  const std::string dir = CONFIG_DIR;
  const ScenarioConfig case1 = parse_config_file(dir + "/case1.cfg");
  const ScenarioConfig case2 = parse_config_file(dir + "/case2.cfg");
  const ScenarioConfig case3 = parse_config_file(dir + "/case3.cfg");
  bool ok2 = true, ok3 = true, ok_iters = true;
  std::string detail;
  for (int i = 0; i < 10; ++i) {
    const CaseRun r2 = run_case(case2, run_seed(case2.seed, i));
    if (r2.phi != 0 || r2.max_p >= 0.05 || r2.iterations > 10 || !r2.converged) ok2 = false;

    const CaseRun r3 = run_case(case3, run_seed(case3.seed, i));
    if (r3.phi != 150 || r3.min_p <= 0.95 || !r3.converged) ok3 = false;
    if (std::lround(r3.sum_p) != 150) ok3 = false;
    if (r3.iterations < 50 || r3.iterations > 5000) ok_iters = false;

    const CaseRun r1 = run_case(case1, run_seed(case1.seed, i));
    if (r1.iterations < 50 || r1.iterations > 5000 || !r1.converged) ok_iters = false;
  }
  report(7, "case presets: starved pins p at 0 fast; ample requests all files",
         ok2 && ok3 && ok_iters);
}

// ---- 8. sweep shape and match fraction --------------------------------------

void check_sweep_shape() {
  const auto start = std::chrono::steady_clock::now();
  const ScenarioConfig cfg = parse_config_file(std::string(CONFIG_DIR) + "/sweep.cfg");
  const SweepResult result = sweep(cfg, SweepAxis::FileCount, {30, 60, 90, 120, 150});

  bool cap_ok = true, cga_ok = true;
  for (std::size_t i = 0; i + 3 < result.cells.size(); i += 4) {
    const SweepCell& bmrl = result.cells[i];
    const SweepCell& oca_cell = result.cells[i + 1];
    const SweepCell& cga_cell = result.cells[i + 2];
    if (bmrl.mean_requested_bits > 1.05 * oca_cell.mean_requested_bits) cap_ok = false;
    // overhead binds once the backhaul is the limiting factor (>= 60 files)
    if (bmrl.axis_value >= 60.0 && cga_cell.mean_requested_bits >= oca_cell.mean_requested_bits)
      cga_ok = false;
  }

  const CompareReport cmp = compare(cfg);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(8, "sweep: bmrl within 5% of the feasible prefix; cga below oca; match >= 0.8",
         cap_ok && cga_ok && cmp.oca_match_fraction >= 0.8 && secs < 600.0,
         "match " + std::to_string(cmp.oca_match_fraction) + ", " + std::to_string(secs) + " s");
}

// ---- 9. step-size schedule validation ---------------------------------------

void check_schedule_validation() {
  StepSchedule reference;
  reference.alpha_exponent = 1.0;
  reference.lambda_exponent = 2.0;
  StepSchedule equal;
  equal.alpha_exponent = 1.0;
  equal.lambda_exponent = 1.0;
  const ScheduleReport good = validate_schedule(reference);
  const ScheduleReport bad = validate_schedule(equal);
  const bool ok = good.pass() && !bad.pass() && bad.alpha_diverges && bad.lambda_diverges &&
                  bad.alpha_square_converges && bad.lambda_square_converges &&
                  !bad.ratio_vanishes;
  report(9, "schedule validation: (1/t, 1/t^2) passes, (1/t, 1/t) fails on the ratio", ok);
}

}  // namespace

int main() {
  check_expected_utility_oracle();
  check_pne_enumeration();
  check_fair_pmne();
  check_antisymmetry();
  check_bge_uniqueness_and_learning();
  check_epsilon_bound();
  check_case_presets();
  check_sweep_shape();
  check_schedule_validation();
  if (g_failures > 0) {
    std::printf("%d acceptance check(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance checks passed\n");
  return 0;
}
