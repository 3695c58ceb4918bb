#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bmmg/baselines.hpp"
#include "bmmg/config.hpp"
#include "bmmg/game.hpp"
#include "bmmg/learning.hpp"

namespace bmmg {

enum class Algorithm { Bmrl, Oca, Cga, Rfa };

std::string algorithm_name(Algorithm a);

struct RunMetrics {
  Algorithm algorithm = Algorithm::Bmrl;
  std::uint64_t seed = 0;
  int phi = 0;
  double requested_files = 0.0;  // expected count for BMRL, realized otherwise
  double requested_bits = 0.0;
  double slack_bps = 0.0;
  long iterations = 0;
  bool converged = true;
  double final_p_mean = 0.0;     // BMRL only
};

// One scenario realization, one algorithm, end to end.
RunMetrics run_scenario(const ScenarioConfig& cfg, Algorithm algo, std::uint64_t seed);

enum class SweepAxis { FileCount, Capacity, Kappa };

SweepAxis parse_axis(const std::string& name);

struct SweepCell {
  double axis_value = 0.0;
  Algorithm algorithm = Algorithm::Bmrl;
  double mean_requested_bits = 0.0;
  double std_requested_bits = 0.0;
  double mean_slack_bps = 0.0;
  double iterations_mean = 0.0;
  double oca_match_fraction = 0.0;  // BMRL only; 0 for the others
};

struct SweepResult {
  SweepAxis axis = SweepAxis::FileCount;
  std::vector<SweepCell> cells;  // axis-major, algorithm order Bmrl,Oca,Cga,Rfa
};

// Runs cfg.runs seed-aligned realizations of every algorithm at each axis
// value. Honors BMMG_THREADS for run-level parallelism.
SweepResult sweep(const ScenarioConfig& cfg, SweepAxis axis,
                  const std::vector<double>& values);

// axis_value,algorithm,mean_requested_bits,std_requested_bits,mean_slack_bps,
// iterations_mean,oca_match_fraction — with an optional "# generated ..."
// comment line suppressed by deterministic_output.
std::string sweep_csv(const SweepResult& result, bool deterministic_output);

struct CompareReport {
  double oca_match_fraction = 0.0;      // runs where |BMRL - OCA| <= 1 file
  double mean_bits_bmrl = 0.0;
  double mean_bits_oca = 0.0;
  double mean_bits_cga = 0.0;
  double mean_bits_rfa = 0.0;
  double improvement_over_cga = 0.0;    // relative requested-bits gain
  double improvement_over_rfa = 0.0;
  double mean_iterations_bmrl = 0.0;
  int runs = 0;
};

CompareReport compare(const ScenarioConfig& cfg);

std::string format_trace(const std::vector<TraceRow>& trace);

}  // namespace bmmg
