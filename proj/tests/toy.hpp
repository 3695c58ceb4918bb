#pragma once

#include <string>
#include <vector>

#include "bmmg/config.hpp"
#include "bmmg/scenario.hpp"

namespace bmmg::testutil {

inline FileSpec file(double rate_bps, double deadline_s = 1.0) {
  FileSpec f;
  f.deadline_s = deadline_s;
  f.size_bits = rate_bps * deadline_s;
  f.rate_bps = rate_bps;
  return f;
}

// Wired-only scenario (one MBS, no resource blocks): every SBS's rate is just
// its proportional wired share, so feasibility reduces to C >= total load.
inline Scenario wired_toy(const std::vector<double>& current_rates,
                          const std::vector<std::vector<double>>& predicted_rates,
                          double capacity) {
  Scenario sc;
  const int n_sbs = static_cast<int>(current_rates.size());
  sc.topology.mbs_positions = {{1000.0, 1000.0}};
  for (int n = 0; n < n_sbs; ++n)
    sc.topology.sbs_positions.push_back({100.0 * (n + 1), 100.0});
  sc.wired.c_max = capacity;
  sc.wired.per_mbs_capacity = {capacity};
  sc.demands.per_sbs.resize(n_sbs);
  for (int n = 0; n < n_sbs; ++n) {
    if (current_rates[n] > 0.0) sc.demands.per_sbs[n].current.push_back(file(current_rates[n]));
    for (double r : predicted_rates[n]) sc.demands.per_sbs[n].predicted.push_back(file(r));
  }
  sc.channel.mmw_deviation_db.assign(n_sbs, 0.0);
  sc.validate();
  return sc;
}

// N SBSs with unit-rate files everywhere: phi = capacity - N (integer slack).
inline Scenario unit_toy(int n_sbs, int files_per_sbs, double capacity) {
  std::vector<double> current(n_sbs, 1.0);
  std::vector<std::vector<double>> predicted(n_sbs, std::vector<double>(files_per_sbs, 1.0));
  return wired_toy(current, predicted, capacity);
}

// Small full-stack scenario (mmW + sub-6 + wired) from the config parser.
inline Scenario wireless_toy(std::uint64_t seed) {
  const std::string text = R"(
topology.area_side = 500m
topology.mbs_count = 2
topology.sbs_count = 3
mmw.alpha = 2
mmw.beta = 10
mmw.zeta2 = 5.8
mmw.noise_n1 = 1
sub6.noise_n2 = 1e-10
blocks.mmw_count = 2
blocks.mmw_bandwidth = 1MHz
blocks.sub6_count = 3
blocks.sub6_bandwidth = 1MHz
backhaul.wired.c_max = 100Mbps
demand.predicted_files = 9
demand.current_files_per_sbs = 2
demand.size_min = 4Mbit
demand.size_max = 12Mbit
demand.deadline_min = 1s
demand.deadline_max = 2s
runs = 1
)";
  return build_scenario(parse_config_string(text), seed);
}

}  // namespace bmmg::testutil
