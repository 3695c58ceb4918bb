#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "bmmg/game.hpp"

namespace bmmg {

struct UtilityPair {
  double c = 0.0;
  double d = 0.0;
};

struct ProbPair {
  double c = 0.0;
  double d = 0.0;
};

// Boltzmann-Gibbs distribution over {c, d}; shifted by the max before
// exponentiation so large kappa*u cannot overflow.
ProbPair smoothed_best_response(const UtilityPair& u, double kappa);

struct LearnerState {
  UtilityPair u_hat;
  double p = 0.5;  // probability of Request
  long t = 0;
};

// Two-timescale step sizes alpha(t) = t^-a, lambda(t) = t^-l, with the
// exploitation sharpness kappa either constant or decaying as kappa/t.
struct StepSchedule {
  double alpha_exponent = 1.0;
  double lambda_exponent = 2.0;
  double kappa = 1.0;
  bool kappa_inverse_t = false;

  double alpha(long t) const { return std::pow(static_cast<double>(t), -alpha_exponent); }
  double lambda(long t) const { return std::pow(static_cast<double>(t), -lambda_exponent); }
  double kappa_at(long t) const { return kappa_inverse_t ? kappa / static_cast<double>(t) : kappa; }
};

struct NoiseModel {
  double sigma_eps = 0.0;  // stddev of the zero-mean Gaussian observation error
};

// One learner update: the taken action's utility estimate moves by alpha(t)
// toward the observation, the other estimate is frozen; the strategy moves by
// lambda(t) toward the smoothed best response of the new estimates.
LearnerState rl_step(const LearnerState& state, GameAction taken, double observed_utility,
                     const StepSchedule& schedule);

struct BgeResult {
  std::vector<double> p;
  long iterations = 0;
  bool contraction_ok = true;  // kappa <= |sum_k u(c, k+1)|
  double residual = 0.0;
};

// Fixed point of p <- beta^kappa(u_bar(p)) under exact expected utilities,
// iterated (with adaptive damping) until the sup-norm residual drops below
// tol. Throws on hitting the iteration cap.
BgeResult bge_fixed_point(const GameSpec& game, double kappa, double tol = 1e-9,
                          long max_iters = 1'000'000,
                          const std::vector<double>* init = nullptr);

struct TraceRow {
  long t = 0;
  int player = 0;
  GameAction action = GameAction::Request;
  double observed_u = 0.0;
  double p = 0.0;
};

struct LearnOptions {
  double tol = 1e-3;
  int window = 50;
  long max_iters = 200'000;
  bool record_trace = false;
};

struct LearnOutcome {
  std::vector<double> p;
  long iterations = 0;
  bool converged = false;
  std::vector<TraceRow> trace;
};

// Decentralized simulation: every sub-slot each player samples its action,
// the joint count fixes the realized utilities, and each player sees only its
// own noisy observation. Stops when the strategy profile is exactly pinned or
// when it stays within tol over a trailing window.
LearnOutcome run_learning(const GameSpec& game, const StepSchedule& schedule,
                          const NoiseModel& noise, std::uint64_t seed,
                          const LearnOptions& options = {});

// Worst-case unilateral deviation gain at the BGE: log(2)/kappa.
double epsilon_bound(double kappa);

struct ScheduleReport {
  bool alpha_diverges = false;
  bool alpha_square_converges = false;
  bool lambda_diverges = false;
  bool lambda_square_converges = false;
  bool ratio_vanishes = false;

  bool pass() const {
    return alpha_diverges && alpha_square_converges && lambda_diverges &&
           lambda_square_converges && ratio_vanishes;
  }
};

// Numeric proxy for the step-size conditions over a finite horizon: partial
// sums must clear a growth threshold, squared sums must have a vanishing tail,
// and lambda/alpha must shrink toward zero.
ScheduleReport validate_schedule(const StepSchedule& schedule, long horizon = 10'000);

}  // namespace bmmg
