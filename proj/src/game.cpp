#include "bmmg/game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bmmg/allocation.hpp"

namespace bmmg {

double GameSpec::uc(int f_c) const {
  if (f_c < 1 || f_c > g) throw std::domain_error("GameSpec::uc: f_c out of range");
  return table[f_c - 1];
}

double GameSpec::ud(int f_d) const {
  if (f_d < 1 || f_d > g) throw std::domain_error("GameSpec::ud: f_d out of range");
  return -uc(g - f_d + 1);
}

void GameSpec::validate_sign_structure() const {
  for (int f = 1; f <= g; ++f) {
    if (f <= phi && table[f - 1] < 0.0)
      throw std::logic_error("GameSpec: u(c,f) < 0 below phi");
    if (f > phi && table[f - 1] > 0.0)
      throw std::logic_error("GameSpec: u(c,f) > 0 above phi");
    if (f > std::max(phi, 1) && table[f - 1] > table[f - 2] + 1e-12)
      throw std::logic_error("GameSpec: u(c,f) increasing above phi");
  }
}

GameSpec game_from_table(int phi, std::vector<double> u_c) {
  GameSpec game;
  game.g = static_cast<int>(u_c.size());
  game.phi = phi;
  game.table = std::move(u_c);
  game.owner.resize(game.g);
  return game;
}

GameSpec build_game(const Scenario& sc, int phi) {
  GameSpec game;
  const int n_sbs = sc.sbs_count();
  for (int n = 0; n < n_sbs; ++n) {
    const int files = static_cast<int>(sc.demands.per_sbs[n].predicted.size());
    for (int j = 0; j < files; ++j)
      game.owner.push_back({n, j, j > 0});
  }
  game.g = static_cast<int>(game.owner.size());
  game.phi = phi;
  if (game.g == 0) return game;

  std::vector<double> raw(game.g, 0.0);
  double asym = 0.0;
  for (int f = 1; f <= game.g; ++f) {
    const std::vector<int> s = round_robin_counts(sc.demands, f);
    const BackhaulAssignment a = allocate(sc, s);
    const RequiredRates req = required_rates(sc.demands, s);
    double mean = 0.0, mean_sq = 0.0;
    for (int n = 0; n < n_sbs; ++n) {
      const double u = total_rate(n, a, sc) - req.current[n] - req.predicted[n];
      mean += u;
      mean_sq += u * u;
    }
    mean /= n_sbs;
    mean_sq /= n_sbs;
    raw[f - 1] = mean;
    asym += std::sqrt(std::max(0.0, mean_sq - mean * mean));
  }
  game.asymmetry = asym / game.g;

  // phi < G is a genuine crossing: pin the shared table to 0 there. A phi
  // capped by the file count keeps its raw (all non-negative) values.
  const double shift = (phi >= 1 && phi < game.g) ? raw[phi - 1] : 0.0;
  game.table.resize(game.g);
  for (int f = 1; f <= game.g; ++f) {
    double u = raw[f - 1] - shift;
    if (phi < game.g) u = f <= phi ? std::max(u, 0.0) : std::min(u, 0.0);
    game.table[f - 1] = u;
  }
  // keep the congested side non-increasing
  for (int f = std::max(phi, 1) + 1; f <= game.g; ++f)
    game.table[f - 1] = std::min(game.table[f - 1], game.table[f - 2]);
  return game;
}

GameSpec build_game(const Scenario& sc) { return build_game(sc, compute_phi(sc)); }

double utility_bmmg(int n, const std::vector<int>& s, const Scenario& sc, int phi) {
  int f_c = 0;
  for (int v : s) f_c += v;
  const BackhaulAssignment a = allocate(sc, s);
  const RequiredRates req = required_rates(sc.demands, s);
  const double need = req.current[n] + req.predicted[n];
  const double rate = total_rate(n, a, sc);
  if (f_c > phi) return rate - need;
  if (f_c < phi) return need - rate;
  return 0.0;
}

PureNeResult is_pure_ne(const std::vector<int>& s, const Scenario& sc, int phi) {
  PureNeResult result;
  std::vector<int> trial = s;
  for (int n = 0; n < sc.sbs_count(); ++n) {
    const double base = utility_bmmg(n, s, sc, phi);
    const int files = static_cast<int>(sc.demands.per_sbs[n].predicted.size());
    for (int alt = 0; alt <= files; ++alt) {
      if (alt == s[n]) continue;
      trial[n] = alt;
      const double gain = utility_bmmg(n, trial, sc, phi) - base;
      if (gain > 1e-9) {
        result.is_ne = false;
        result.witness = {n, alt, gain};
        trial[n] = s[n];
        return result;
      }
    }
    trial[n] = s[n];
  }
  return result;
}

std::vector<double> binomial_pmf(int n, double p) {
  std::vector<double> pmf(n + 1, 0.0);
  if (p <= 0.0) {
    pmf[0] = 1.0;
    return pmf;
  }
  if (p >= 1.0) {
    pmf[n] = 1.0;
    return pmf;
  }
  const double lp = std::log(p), lq = std::log1p(-p);
  for (int k = 0; k <= n; ++k) {
    const double lc = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    pmf[k] = std::exp(lc + k * lp + (n - k) * lq);
  }
  return pmf;
}

double expected_utility(GameAction a, double p, const GameSpec& game) {
  if (p < 0.0 || p > 1.0) throw std::domain_error("expected_utility: p outside [0,1]");
  const std::vector<double> pmf = binomial_pmf(game.g - 1, p);
  double value = 0.0;
  for (int k = 0; k < game.g; ++k) {
    const double u = a == GameAction::Request ? game.uc(k + 1) : game.ud(game.g - k);
    value += pmf[k] * u;
  }
  return value;
}

std::vector<double> opponent_count_distribution(int n, const std::vector<double>& p) {
  std::vector<double> dist{1.0};
  for (int j = 0; j < static_cast<int>(p.size()); ++j) {
    if (j == n) continue;
    std::vector<double> next(dist.size() + 1, 0.0);
    for (std::size_t k = 0; k < dist.size(); ++k) {
      next[k] += dist[k] * (1.0 - p[j]);
      next[k + 1] += dist[k] * p[j];
    }
    dist.swap(next);
  }
  return dist;
}

double expected_utility_general(int n, GameAction a, const std::vector<double>& p,
                                const GameSpec& game) {
  const std::vector<double> dist = opponent_count_distribution(n, p);
  double value = 0.0;
  for (int k = 0; k < game.g; ++k) {
    const double u = a == GameAction::Request ? game.uc(k + 1) : game.ud(game.g - k);
    value += dist[k] * u;
  }
  return value;
}

double solve_fair_pmne(const GameSpec& game, double tol) {
  if (tol <= 0.0) throw std::domain_error("solve_fair_pmne: tol must be > 0");
  if (!(game.uc(1) > 0.0) || !(game.uc(game.g) < 0.0))
    throw std::domain_error(
        "solve_fair_pmne: no interior equilibrium (requires u(c,1) > 0 and u(c,G) < 0)");
  double lo = 0.0, hi = 1.0, mid = 0.5;
  for (int it = 0; it < 2000; ++it) {
    mid = 0.5 * (lo + hi);
    const double value = expected_utility(GameAction::Request, mid, game);
    if (std::abs(value) < tol || hi - lo < 1e-17) return mid;
    // u(c, p) decreases in p
    if (value > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return mid;
}

std::vector<double> bmmg_mixed_strategy(int files, double p_star) {
  if (p_star <= 0.0 || p_star >= 1.0)
    throw std::domain_error("bmmg_mixed_strategy: p* must lie in (0,1)");
  return binomial_pmf(files, p_star);
}

}  // namespace bmmg
