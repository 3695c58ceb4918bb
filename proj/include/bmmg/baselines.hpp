#pragma once

#include <cstdint>
#include <vector>

#include "bmmg/scenario.hpp"

namespace bmmg {

struct BaselineResult {
  std::vector<int> downloaded;   // per-SBS predicted-file counts
  int requested_files = 0;
  double requested_bits = 0.0;
  double slack_bps = 0.0;        // signed: capacity minus demand under the pick
  double overhead_bps = 0.0;     // CGA signaling charge
  int rounds = 0;
};

// Ideal centralized allocator: full knowledge, zero overhead. Downloads
// exactly min(phi, total predicted) files, spread round-robin in ascending
// cumulative-download order.
BaselineResult oca(const Scenario& sc, int phi);

// Centralized greedy with coordination cost: every round the signaling charge
// N * overhead_per_sbs accumulates against the wired capacity, the feasible
// file budget is recomputed, and the lowest-count SBSs admit `batch` files
// each. overhead_per_sbs = 0 reproduces oca exactly.
BaselineResult cga(const Scenario& sc, double overhead_per_sbs, int batch = 1);

// Capacity-blind random fair baseline: each predicted file is requested
// independently with probability 0.5.
BaselineResult rfa(const Scenario& sc, std::uint64_t seed);

}  // namespace bmmg
