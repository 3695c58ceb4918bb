#include "bmmg/learning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace bmmg {

ProbPair smoothed_best_response(const UtilityPair& u, double kappa) {
  if (kappa <= 0.0) throw std::domain_error("smoothed_best_response: kappa must be > 0");
  if (!std::isfinite(u.c) || !std::isfinite(u.d))
    throw std::domain_error("smoothed_best_response: utilities must be finite");
  const double shift = std::max(kappa * u.c, kappa * u.d);
  const double ec = std::exp(kappa * u.c - shift);
  const double ed = std::exp(kappa * u.d - shift);
  return {ec / (ec + ed), ed / (ec + ed)};
}

LearnerState rl_step(const LearnerState& state, GameAction taken, double observed_utility,
                     const StepSchedule& schedule) {
  LearnerState next = state;
  next.t = state.t + 1;
  const double a = schedule.alpha(next.t);
  if (taken == GameAction::Request)
    next.u_hat.c += a * (observed_utility - next.u_hat.c);
  else
    next.u_hat.d += a * (observed_utility - next.u_hat.d);
  const double beta = smoothed_best_response(next.u_hat, schedule.kappa_at(next.t)).c;
  next.p += schedule.lambda(next.t) * (beta - next.p);
  next.p = std::clamp(next.p, 0.0, 1.0);
  return next;
}

namespace {

// Prefix/suffix Poisson-binomial convolutions so every player's opponent
// count distribution comes out of one O(G^2) pass.
std::vector<std::vector<double>> prefix_dists(const std::vector<double>& p) {
  const int g = static_cast<int>(p.size());
  std::vector<std::vector<double>> pre(g + 1);
  pre[0] = {1.0};
  for (int j = 0; j < g; ++j) {
    std::vector<double> next(pre[j].size() + 1, 0.0);
    for (std::size_t k = 0; k < pre[j].size(); ++k) {
      next[k] += pre[j][k] * (1.0 - p[j]);
      next[k + 1] += pre[j][k] * p[j];
    }
    pre[j + 1] = std::move(next);
  }
  return pre;
}

std::vector<std::vector<double>> suffix_dists(const std::vector<double>& p) {
  const int g = static_cast<int>(p.size());
  std::vector<std::vector<double>> suf(g + 1);
  suf[g] = {1.0};
  for (int j = g - 1; j >= 0; --j) {
    std::vector<double> next(suf[j + 1].size() + 1, 0.0);
    for (std::size_t k = 0; k < suf[j + 1].size(); ++k) {
      next[k] += suf[j + 1][k] * (1.0 - p[j]);
      next[k + 1] += suf[j + 1][k] * p[j];
    }
    suf[j] = std::move(next);
  }
  return suf;
}

std::vector<double> best_response_profile(const GameSpec& game, const std::vector<double>& p,
                                          double kappa) {
  const int g = game.g;
  const auto pre = prefix_dists(p);
  const auto suf = suffix_dists(p);
  std::vector<double> target(g);
  std::vector<double> dist(g, 0.0);
  for (int n = 0; n < g; ++n) {
    std::fill(dist.begin(), dist.end(), 0.0);
    for (std::size_t i = 0; i < pre[n].size(); ++i)
      for (std::size_t j = 0; j < suf[n + 1].size(); ++j)
        dist[i + j] += pre[n][i] * suf[n + 1][j];
    double uc = 0.0, ud = 0.0;
    for (int k = 0; k < g; ++k) {
      uc += dist[k] * game.uc(k + 1);
      ud += dist[k] * game.ud(g - k);
    }
    target[n] = smoothed_best_response({uc, ud}, kappa).c;
  }
  return target;
}

double sup_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// Solve A x = b in place by Gaussian elimination with partial pivoting.
// Returns false if A is numerically singular.
bool solve_dense(std::vector<double>& a, std::vector<double>& b, int n) {
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
    if (std::abs(a[pivot * n + col]) < 1e-14) return false;
    if (pivot != col) {
      for (int c = col; c < n; ++c) std::swap(a[pivot * n + c], a[col * n + c]);
      std::swap(b[pivot], b[col]);
    }
    for (int r = col + 1; r < n; ++r) {
      const double factor = a[r * n + col] / a[col * n + col];
      for (int c = col; c < n; ++c) a[r * n + c] -= factor * a[col * n + c];
      b[r] -= factor * b[col];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    double acc = b[r];
    for (int c = r + 1; c < n; ++c) acc -= a[r * n + c] * b[c];
    b[r] = acc / a[r * n + r];
  }
  return true;
}

// One Newton step on F(p) = beta(p) - p using a forward-difference Jacobian.
// Returns false if the linearization is singular.
bool newton_step(const GameSpec& game, double kappa, std::vector<double>& p,
                 const std::vector<double>& target) {
  const int g = game.g;
  const double h = 1e-7;
  std::vector<double> jac(static_cast<std::size_t>(g) * g);
  std::vector<double> bumped = p;
  for (int j = 0; j < g; ++j) {
    const double step = bumped[j] + h <= 1.0 ? h : -h;
    bumped[j] = p[j] + step;
    const std::vector<double> t = best_response_profile(game, bumped, kappa);
    bumped[j] = p[j];
    for (int i = 0; i < g; ++i) {
      jac[i * g + j] = (t[i] - target[i]) / step;
      if (i == j) jac[i * g + j] -= 1.0;
    }
  }
  std::vector<double> rhs(g);
  for (int i = 0; i < g; ++i) rhs[i] = p[i] - target[i];
  if (!solve_dense(jac, rhs, g)) return false;
  for (int i = 0; i < g; ++i) p[i] = std::clamp(p[i] + rhs[i], 0.0, 1.0);
  return true;
}

}  // namespace

BgeResult bge_fixed_point(const GameSpec& game, double kappa, double tol, long max_iters,
                          const std::vector<double>* init) {
  if (game.g <= 0) throw std::domain_error("bge_fixed_point: empty game");
  BgeResult result;
  double table_sum = 0.0;
  for (int k = 0; k < game.g; ++k) table_sum += game.uc(k + 1);
  result.contraction_ok = kappa <= std::abs(table_sum);

  std::vector<double> p = init ? *init : std::vector<double>(game.g, 0.5);
  long evals = 0;

  // Adaptive damped iteration with a Newton polish once progress stalls.
  // Under strong saturation the fixed point can be dynamically unstable
  // (asymmetric modes with multiplier > 1 under simultaneous updates), so no
  // damping converges on its own; Newton reaches such points anyway.
  const auto solve_at = [&](double k_level, std::vector<double>& x, long budget) {
    std::vector<double> best_x = x;
    double best_residual = std::numeric_limits<double>::infinity();
    double damping = 1.0;
    double prev_residual = std::numeric_limits<double>::infinity();
    long since_best = 0;
    const long stop = std::min(max_iters, evals + budget);
    while (evals < stop) {
      const std::vector<double> target = best_response_profile(game, x, k_level);
      ++evals;
      const double residual = sup_dist(target, x);
      result.iterations = evals;
      result.residual = residual;
      if (residual < tol) return true;
      if (residual < best_residual) {
        best_residual = residual;
        best_x = x;
        since_best = 0;
      } else {
        ++since_best;
      }
      if (since_best >= 200) {
        x = best_x;
        bool progressed = false;
        for (int k = 0; k < 100 && evals < stop; ++k) {
          const std::vector<double> t = best_response_profile(game, x, k_level);
          ++evals;
          const double r = sup_dist(t, x);
          result.iterations = evals;
          result.residual = r;
          if (r < tol) return true;
          if (r < best_residual) {
            best_residual = r;
            best_x = x;
            progressed = true;
          }
          if (!newton_step(game, k_level, x, t)) break;
          evals += game.g;  // forward-difference Jacobian cost, in map evaluations
        }
        x = best_x;
        if (!progressed) return false;  // neither scheme improves
        since_best = 0;
        damping = std::max(damping * 0.5, 1e-4);
        prev_residual = std::numeric_limits<double>::infinity();
        continue;
      }
      // A steep response map oscillates at full step; shrink the step whenever
      // the residual fails to improve (covers exact two-cycles, where the
      // residual is constant) and creep back up while it shrinks.
      if (residual >= prev_residual)
        damping = std::max(damping * 0.5, 1e-4);
      else
        damping = std::min(damping * 1.05, 1.0);
      prev_residual = residual;
      for (int n = 0; n < game.g; ++n) x[n] += damping * (target[n] - x[n]);
    }
    return false;
  };

  // Once inside tolerance, a few extra Newton steps drive the residual toward
  // machine precision; ill-conditioned modes otherwise amplify a residual of
  // tol into a much larger error in p, making independent solves disagree.
  const auto polish = [&](std::vector<double>& x) {
    std::vector<double> best = x;
    double best_r = result.residual;
    for (int k = 0; k < 3; ++k) {
      std::vector<double> t = best_response_profile(game, x, kappa);
      const double r = sup_dist(t, x);
      if (r < best_r) {
        best_r = r;
        best = x;
      }
      if (!newton_step(game, kappa, x, t)) break;
    }
    const std::vector<double> t = best_response_profile(game, x, kappa);
    const double r = sup_dist(t, x);
    if (r < best_r) {
      best_r = r;
      best = x;
    }
    x = std::move(best);
    result.residual = best_r;
  };

  if (solve_at(kappa, p, max_iters)) {
    polish(p);
    result.p = std::move(p);
    return result;
  }

  // Direct solve failed: continuation in the exploitation parameter. Start in
  // the smooth, contractive regime and re-solve at geometrically increasing
  // levels, warm-starting each stage from the previous solution.
  if (kappa > 1e-3 && evals < max_iters) {
    std::vector<double> levels;
    for (double k_level = kappa; k_level > 1e-3; k_level *= 0.5) levels.push_back(k_level);
    std::reverse(levels.begin(), levels.end());
    const long budget = std::max<long>(1000, (max_iters - evals) / static_cast<long>(levels.size()));
    bool ok = true;
    for (double k_level : levels) {
      ok = solve_at(k_level, p, budget);
      if (!ok && evals >= max_iters) break;
    }
    if (ok) {  // final level is the requested kappa
      polish(p);
      result.p = std::move(p);
      return result;
    }
  }
  std::ostringstream msg;
  msg << "bge_fixed_point: no convergence after " << result.iterations
      << " map evaluations, residual " << result.residual;
  throw std::runtime_error(msg.str());
}

LearnOutcome run_learning(const GameSpec& game, const StepSchedule& schedule,
                          const NoiseModel& noise, std::uint64_t seed,
                          const LearnOptions& options) {
  const int g = game.g;
  LearnOutcome out;
  if (g == 0) {
    out.converged = true;
    return out;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<LearnerState> states(g);
  std::vector<GameAction> actions(g);
  std::vector<double> prev_p(g, 0.5);

  const int window = options.window;
  std::vector<std::vector<double>> history;  // ring of the last window+1 profiles
  history.assign(window + 1, std::vector<double>(g, 0.5));

  int pinned = 0;
  for (long t = 1; t <= options.max_iters; ++t) {
    int f_c = 0;
    for (int n = 0; n < g; ++n) {
      actions[n] = unif(rng) < states[n].p ? GameAction::Request : GameAction::Defer;
      if (actions[n] == GameAction::Request) ++f_c;
    }
    const int f_d = g - f_c;
    for (int n = 0; n < g; ++n) {
      double u = actions[n] == GameAction::Request ? game.uc(f_c) : game.ud(f_d);
      if (noise.sigma_eps > 0.0) u += noise.sigma_eps * gauss(rng);
      prev_p[n] = states[n].p;
      states[n] = rl_step(states[n], actions[n], u, schedule);
      if (options.record_trace)
        out.trace.push_back({t, n, actions[n], u, states[n].p});
    }

    double delta = 0.0;
    for (int n = 0; n < g; ++n) delta = std::max(delta, std::abs(states[n].p - prev_p[n]));
    if (delta < 1e-15) {
      if (++pinned >= 3) {
        out.converged = true;
        out.iterations = t;
        break;
      }
    } else {
      pinned = 0;
    }

    auto& slot = history[t % (window + 1)];
    for (int n = 0; n < g; ++n) slot[n] = states[n].p;
    if (t > window) {
      double spread = 0.0;
      for (int i = 0; i <= window && spread < options.tol; ++i)
        spread = std::max(spread, sup_dist(history[i], slot));
      if (spread < options.tol) {
        out.converged = true;
        out.iterations = t;
        break;
      }
    }
    out.iterations = t;
  }
  out.p.resize(g);
  for (int n = 0; n < g; ++n) out.p[n] = states[n].p;
  return out;
}

double epsilon_bound(double kappa) {
  if (kappa <= 0.0) throw std::domain_error("epsilon_bound: kappa must be > 0");
  return std::log(2.0) / kappa;
}

ScheduleReport validate_schedule(const StepSchedule& schedule, long horizon) {
  ScheduleReport report;
  const long half = horizon / 2;
  double sum_a = 0.0, sum_a2 = 0.0, sum_l = 0.0, sum_l2 = 0.0;
  double head_a2 = 0.0, head_l2 = 0.0;
  for (long t = 1; t <= horizon; ++t) {
    const double a = schedule.alpha(t);
    const double l = schedule.lambda(t);
    sum_a += a;
    sum_a2 += a * a;
    sum_l += l;
    sum_l2 += l * l;
    if (t == half) {
      head_a2 = sum_a2;
      head_l2 = sum_l2;
    }
  }
  // Divergence as threshold growth over the horizon; the fast timescale must
  // accumulate visibly more than the slow one.
  report.alpha_diverges = sum_a >= 2.0;
  report.lambda_diverges = sum_l >= 1.0;
  // Convergence as a Cauchy tail: the second half adds almost nothing.
  report.alpha_square_converges = sum_a2 - head_a2 <= 0.01 * (1.0 + head_a2);
  report.lambda_square_converges = sum_l2 - head_l2 <= 0.01 * (1.0 + head_l2);
  const double ratio_end = schedule.lambda(horizon) / schedule.alpha(horizon);
  const double ratio_mid = schedule.lambda(half) / schedule.alpha(half);
  report.ratio_vanishes = ratio_end <= 0.01 && ratio_end <= ratio_mid;
  return report;
}

}  // namespace bmmg
