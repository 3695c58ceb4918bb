#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bmmg/scenario.hpp"

namespace bmmg {

// Flat-key configuration for one experiment. Values accept SI suffixes
// (e.g. "backhaul.wired.c_max = 1Gbps"); unknown keys are errors.
struct ScenarioConfig {
  double area_side = 2000.0;
  int mbs_count = 2;
  int sbs_count = 5;
  std::vector<Vec2> mbs_positions;  // drawn uniformly when empty
  std::vector<Vec2> sbs_positions;

  double mmw_alpha = 2.0;
  double mmw_beta = 10.0;
  double mmw_zeta2 = 5.8;
  double mmw_noise_n1 = 1.0;
  double sub6_noise_n2 = 1e-10;

  int mmw_block_count = 5;
  double mmw_block_bandwidth = 1e6;
  double mmw_tx_power = 1e7;  // mW
  int sub6_block_count = 5;
  double sub6_block_bandwidth = 1e6;
  double sub6_tx_power = 1.0;  // W

  double wired_c_max = 1e9;

  int predicted_files = 150;
  int current_files_per_sbs = 3;
  double file_size_min = 4e6;   // bits
  double file_size_max = 40e6;
  double deadline_min = 1.0;    // s
  double deadline_max = 2.0;

  double kappa = 0.001;
  bool kappa_inverse_t = false;
  double alpha_exponent = 1.0;
  double lambda_exponent = 2.0;
  double noise_rel = 0.01;  // observation noise as a fraction of |u(c,1)|
  long learn_max_iters = 200'000;
  int learn_window = 50;
  double learn_tol = 1e-3;

  double cga_overhead_frac = 0.005;  // of c_max, per SBS per round
  int cga_batch = 1;

  int runs = 100;
  std::uint64_t seed = 1;

  void validate() const;
};

ScenarioConfig parse_config_file(const std::string& path);
ScenarioConfig parse_config_string(const std::string& text);

// Parses "12.5Mbps"-style values into base SI units.
double parse_si_value(const std::string& text);

// Deterministic per-run scenario realization: positions (when not given),
// demand draws, and the static channel state all come from `seed`.
Scenario build_scenario(const ScenarioConfig& cfg, std::uint64_t seed);

// Derives the per-run seed from the master seed (splitmix64 mixing).
std::uint64_t run_seed(std::uint64_t master, std::uint64_t index);

}  // namespace bmmg
