#include "bmmg/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "bmmg/allocation.hpp"

namespace bmmg {

namespace {

int thread_budget() {
  if (const char* env = std::getenv("BMMG_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

struct RunBundle {
  RunMetrics bmrl, oca, cga, rfa;
};

double owned_bits(const Scenario& sc, const PlayerId& id) {
  return sc.demands.per_sbs[id.sbs].predicted[id.file_index].size_bits;
}

RunBundle run_all(const ScenarioConfig& cfg, std::uint64_t seed) {
  const Scenario sc = build_scenario(cfg, seed);
  const int phi = compute_phi(sc);
  RunBundle out;

  {
    const GameSpec game = build_game(sc, phi);
    StepSchedule schedule;
    schedule.alpha_exponent = cfg.alpha_exponent;
    schedule.lambda_exponent = cfg.lambda_exponent;
    schedule.kappa = cfg.kappa;
    schedule.kappa_inverse_t = cfg.kappa_inverse_t;
    NoiseModel noise;
    if (game.g > 0) noise.sigma_eps = cfg.noise_rel * std::abs(game.uc(1));
    LearnOptions options;
    options.tol = cfg.learn_tol;
    options.window = cfg.learn_window;
    options.max_iters = cfg.learn_max_iters;
    const LearnOutcome learned = run_learning(game, schedule, noise, seed, options);

    RunMetrics& m = out.bmrl;
    m.algorithm = Algorithm::Bmrl;
    m.seed = seed;
    m.phi = phi;
    m.iterations = learned.iterations;
    m.converged = learned.converged;
    std::vector<int> counts(sc.sbs_count(), 0);
    for (int i = 0; i < game.g; ++i) {
      m.requested_files += learned.p[i];
      m.requested_bits += learned.p[i] * owned_bits(sc, game.owner[i]);
      if (learned.p[i] > 0.5) ++counts[game.owner[i].sbs];
      m.final_p_mean += learned.p[i];
    }
    if (game.g > 0) m.final_p_mean /= game.g;
    m.slack_bps = total_slack(sc, counts);
  }

  const auto fill = [&](RunMetrics& m, Algorithm a, const BaselineResult& r, long iters) {
    m.algorithm = a;
    m.seed = seed;
    m.phi = phi;
    m.requested_files = r.requested_files;
    m.requested_bits = r.requested_bits;
    m.slack_bps = r.slack_bps;
    m.iterations = iters;
  };
  const BaselineResult r_oca = oca(sc, phi);
  fill(out.oca, Algorithm::Oca, r_oca, 1);
  const BaselineResult r_cga =
      cga(sc, cfg.cga_overhead_frac * cfg.wired_c_max, cfg.cga_batch);
  fill(out.cga, Algorithm::Cga, r_cga, r_cga.rounds);
  const BaselineResult r_rfa = rfa(sc, seed);
  fill(out.rfa, Algorithm::Rfa, r_rfa, 1);
  return out;
}

std::vector<RunBundle> run_batch(const ScenarioConfig& cfg) {
  std::vector<RunBundle> bundles(cfg.runs);
  const int threads = std::min(thread_budget(), cfg.runs);
  if (threads <= 1) {
    for (int i = 0; i < cfg.runs; ++i) bundles[i] = run_all(cfg, run_seed(cfg.seed, i));
    return bundles;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < cfg.runs; i = next.fetch_add(1))
        bundles[i] = run_all(cfg, run_seed(cfg.seed, i));
    });
  }
  for (auto& t : pool) t.join();
  return bundles;
}

struct Moments {
  double mean = 0.0;
  double stdev = 0.0;
};

Moments moments(const std::vector<double>& xs) {
  Moments m;
  if (xs.empty()) return m;
  m.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  double var = 0.0;
  for (double x : xs) var += (x - m.mean) * (x - m.mean);
  m.stdev = std::sqrt(var / xs.size());
  return m;
}

SweepCell aggregate(double axis_value, Algorithm algo, const std::vector<RunBundle>& bundles) {
  SweepCell cell;
  cell.axis_value = axis_value;
  cell.algorithm = algo;
  std::vector<double> bits, slack, iters;
  int matched = 0;
  for (const RunBundle& b : bundles) {
    const RunMetrics& m = algo == Algorithm::Bmrl   ? b.bmrl
                          : algo == Algorithm::Oca  ? b.oca
                          : algo == Algorithm::Cga  ? b.cga
                                                    : b.rfa;
    bits.push_back(m.requested_bits);
    slack.push_back(m.slack_bps);
    iters.push_back(static_cast<double>(m.iterations));
    if (algo == Algorithm::Bmrl &&
        std::abs(std::round(b.bmrl.requested_files) - b.oca.requested_files) <= 1.0)
      ++matched;
  }
  const Moments mb = moments(bits);
  cell.mean_requested_bits = mb.mean;
  cell.std_requested_bits = mb.stdev;
  cell.mean_slack_bps = moments(slack).mean;
  cell.iterations_mean = moments(iters).mean;
  if (algo == Algorithm::Bmrl && !bundles.empty())
    cell.oca_match_fraction = static_cast<double>(matched) / bundles.size();
  return cell;
}

}  // namespace

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Bmrl: return "bmrl";
    case Algorithm::Oca: return "oca";
    case Algorithm::Cga: return "cga";
    case Algorithm::Rfa: return "rfa";
  }
  throw std::logic_error("algorithm_name: bad enum");
}

SweepAxis parse_axis(const std::string& name) {
  if (name == "file_count") return SweepAxis::FileCount;
  if (name == "capacity") return SweepAxis::Capacity;
  if (name == "kappa") return SweepAxis::Kappa;
  throw std::invalid_argument("axis must be file_count|capacity|kappa, got '" + name + "'");
}

RunMetrics run_scenario(const ScenarioConfig& cfg, Algorithm algo, std::uint64_t seed) {
  const RunBundle b = run_all(cfg, seed);
  switch (algo) {
    case Algorithm::Bmrl: return b.bmrl;
    case Algorithm::Oca: return b.oca;
    case Algorithm::Cga: return b.cga;
    case Algorithm::Rfa: return b.rfa;
  }
  throw std::logic_error("run_scenario: bad enum");
}

SweepResult sweep(const ScenarioConfig& cfg, SweepAxis axis,
                  const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("sweep: no axis values");
  SweepResult result;
  result.axis = axis;
  for (double v : values) {
    ScenarioConfig point = cfg;
    switch (axis) {
      case SweepAxis::FileCount:
        point.predicted_files = static_cast<int>(std::lround(v));
        break;
      case SweepAxis::Capacity:
        point.wired_c_max = v;
        break;
      case SweepAxis::Kappa:
        point.kappa = v;
        break;
    }
    const std::vector<RunBundle> bundles = run_batch(point);
    for (Algorithm a : {Algorithm::Bmrl, Algorithm::Oca, Algorithm::Cga, Algorithm::Rfa})
      result.cells.push_back(aggregate(v, a, bundles));
  }
  return result;
}

std::string sweep_csv(const SweepResult& result, bool deterministic_output) {
  std::ostringstream os;
  os << std::setprecision(12);
  if (!deterministic_output) {
    const std::time_t now = std::time(nullptr);
    char stamp[64];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    os << "# generated " << stamp << "\n";
  }
  os << "axis_value,algorithm,mean_requested_bits,std_requested_bits,"
        "mean_slack_bps,iterations_mean,oca_match_fraction\n";
  for (const SweepCell& c : result.cells) {
    os << c.axis_value << ',' << algorithm_name(c.algorithm) << ','
       << c.mean_requested_bits << ',' << c.std_requested_bits << ','
       << c.mean_slack_bps << ',' << c.iterations_mean << ','
       << c.oca_match_fraction << '\n';
  }
  return os.str();
}

CompareReport compare(const ScenarioConfig& cfg) {
  const std::vector<RunBundle> bundles = run_batch(cfg);
  CompareReport report;
  report.runs = static_cast<int>(bundles.size());
  int matched = 0;
  for (const RunBundle& b : bundles) {
    if (std::abs(std::round(b.bmrl.requested_files) - b.oca.requested_files) <= 1.0)
      ++matched;
    report.mean_bits_bmrl += b.bmrl.requested_bits;
    report.mean_bits_oca += b.oca.requested_bits;
    report.mean_bits_cga += b.cga.requested_bits;
    report.mean_bits_rfa += b.rfa.requested_bits;
    report.mean_iterations_bmrl += static_cast<double>(b.bmrl.iterations);
  }
  if (report.runs > 0) {
    report.oca_match_fraction = static_cast<double>(matched) / report.runs;
    report.mean_bits_bmrl /= report.runs;
    report.mean_bits_oca /= report.runs;
    report.mean_bits_cga /= report.runs;
    report.mean_bits_rfa /= report.runs;
    report.mean_iterations_bmrl /= report.runs;
  }
  if (report.mean_bits_cga > 0.0)
    report.improvement_over_cga =
        (report.mean_bits_bmrl - report.mean_bits_cga) / report.mean_bits_cga;
  if (report.mean_bits_rfa > 0.0)
    report.improvement_over_rfa =
        (report.mean_bits_bmrl - report.mean_bits_rfa) / report.mean_bits_rfa;
  return report;
}

std::string format_trace(const std::vector<TraceRow>& trace) {
  std::ostringstream os;
  os << std::setprecision(12);
  for (const TraceRow& row : trace) {
    os << '(' << row.t << ", " << row.player << ", "
       << (row.action == GameAction::Request ? 'c' : 'd') << ", " << row.observed_u
       << ", " << row.p << ")\n";
  }
  return os.str();
}

}  // namespace bmmg
