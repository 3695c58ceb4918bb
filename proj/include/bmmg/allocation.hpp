#pragma once

#include <vector>

#include "bmmg/netmodel.hpp"
#include "bmmg/scenario.hpp"

namespace bmmg {

struct RequiredRates {
  std::vector<double> current;    // R_n, bits/s
  std::vector<double> predicted;  // D_n(s_n), bits/s
};

// R_n = sum L_f/x_f over current files, D_n = prefix sum over the first s_n
// predicted files. Throws if s_n is out of range.
RequiredRates required_rates(const DemandModel& demands, const std::vector<int>& s);

// Global priority order: round-robin interleave of the per-SBS priority lists.
// Returns the per-SBS request counts when the first `total_files` files of
// that order are requested.
std::vector<int> round_robin_counts(const DemandModel& demands, int total_files);

// Deterministic greedy block assignment (stand-in for a matching allocator):
// serve the SBS with the largest unmet rate, give it the unassigned block with
// the highest achievable rate, keep going until the per-SBS fairness floor of
// floor(K/N) blocks is reached and demands are met or blocks run out. Wired
// capacity is split by wired_shares. Ties break toward the lowest id.
BackhaulAssignment allocate(const Scenario& sc, const std::vector<int>& s);

// True when every SBS gets total_rate >= R_n + D_n(s_n) under allocate(s).
bool demands_met(const Scenario& sc, const std::vector<int>& s);

// Sum over SBSs of (total_rate - R - D), bits/s; negative when over-demanded.
double total_slack(const Scenario& sc, const std::vector<int>& s);

// Largest f such that requesting the first f files in global priority order
// still leaves every current demand met; 0 when even f = 0 is infeasible.
int compute_phi(const Scenario& sc);

}  // namespace bmmg
