#pragma once

#include <vector>

#include "bmmg/scenario.hpp"

namespace bmmg {

enum class GameAction { Request, Defer };  // c, d

struct PlayerId {
  int sbs = 0;         // owning real SBS
  int file_index = 0;  // index into that SBS's predicted list
  bool is_virtual = false;
};

// Simplified (binary-action) minority game over G = N + V players. Only the
// request-side table is stored; the defer side follows from the antisymmetry
// u(d, f_d) = -u(c, f_c + 1) with f_d = G - f_c.
struct GameSpec {
  int g = 0;
  int phi = 0;
  std::vector<double> table;     // table[f-1] = u(c, f), f = 1..g, bits/s
  std::vector<PlayerId> owner;   // size g; real players come first per SBS
  double asymmetry = 0.0;        // mean across-f std of the per-SBS tables

  double uc(int f_c) const;
  double ud(int f_d) const;
  double utility(GameAction a, int count) const {
    return a == GameAction::Request ? uc(count) : ud(count);
  }
  void validate_sign_structure() const;
};

// Builds a GameSpec from a raw request-utility table (tests, synthetic games).
GameSpec game_from_table(int phi, std::vector<double> u_c);

// Tabulates u(c, f_c) by allocating the first f_c files in global priority
// order and averaging the per-SBS rate slack; the table is pinned to 0 at phi
// when phi is a genuine capacity crossing (phi < G).
GameSpec build_game(const Scenario& sc, int phi);
GameSpec build_game(const Scenario& sc);  // runs compute_phi itself

// Multi-strategy (per-SBS request count) utility: slack-valued above the
// threshold, shortfall-valued below it, zero at the threshold.
double utility_bmmg(int n, const std::vector<int>& s, const Scenario& sc, int phi);

struct DeviationWitness {
  int player = -1;
  int strategy = -1;
  double gain = 0.0;
};

struct PureNeResult {
  bool is_ne = true;
  DeviationWitness witness;
};

// Checks every unilateral deviation; returns a strictly improving witness if
// the profile is not a pure Nash equilibrium.
PureNeResult is_pure_ne(const std::vector<int>& s, const Scenario& sc, int phi);

// Expected request/defer utility when all opponents request with common
// probability p (binomial weighting over opponent counts).
double expected_utility(GameAction a, double p, const GameSpec& game);

// Exact expectation over the Poisson-binomial opponent-count distribution.
double expected_utility_general(int n, GameAction a, const std::vector<double>& p,
                                const GameSpec& game);

// Distribution of the number of requesting opponents of player n.
std::vector<double> opponent_count_distribution(int n, const std::vector<double>& p);

// Unique fair proper-mixed equilibrium probability: the root of
// expected_utility(Request, p) = 0 in (0,1), found by bisection.
// Requires u(c,1) > 0 and u(c,G) < 0.
double solve_fair_pmne(const GameSpec& game, double tol = 1e-9);

// Binomial(files, p_star) pmf over request counts 0..files.
std::vector<double> bmmg_mixed_strategy(int files, double p_star);

std::vector<double> binomial_pmf(int n, double p);

}  // namespace bmmg
