#include "bmmg/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace bmmg {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  auto e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

const std::map<std::string, double>& suffix_table() {
  static const std::map<std::string, double> table = {
      {"bps", 1.0},      {"kbps", 1e3},     {"Mbps", 1e6},    {"Gbps", 1e9},
      {"bit", 1.0},      {"kbit", 1e3},     {"Mbit", 1e6},    {"Gbit", 1e9},
      {"Hz", 1.0},       {"kHz", 1e3},      {"MHz", 1e6},     {"GHz", 1e9},
      {"s", 1.0},        {"ms", 1e-3},      {"us", 1e-6},
      {"m", 1.0},        {"km", 1e3},
      {"W", 1.0},        {"mW", 1e-3},      {"kW", 1e3},
      {"dB", 1.0},       {"dBm", 1.0},
  };
  return table;
}

std::vector<Vec2> parse_positions(const std::string& text) {
  // "x1,y1; x2,y2; ..."
  std::vector<Vec2> out;
  std::stringstream ss(text);
  std::string pair;
  while (std::getline(ss, pair, ';')) {
    pair = trim(pair);
    if (pair.empty()) continue;
    const auto comma = pair.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("config: position needs 'x,y': " + pair);
    out.push_back({parse_si_value(trim(pair.substr(0, comma))),
                   parse_si_value(trim(pair.substr(comma + 1)))});
  }
  return out;
}

}  // namespace

double parse_si_value(const std::string& text) {
  const std::string value = trim(text);
  std::size_t pos = 0;
  double number;
  try {
    number = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: not a number: '" + value + "'");
  }
  std::string suffix = trim(value.substr(pos));
  if (suffix.empty()) return number;
  const auto& table = suffix_table();
  const auto it = table.find(suffix);
  if (it == table.end())
    throw std::invalid_argument("config: unknown unit suffix '" + suffix + "'");
  return number * it->second;
}

void ScenarioConfig::validate() const {
  if (mbs_count < 1 || sbs_count < 1)
    throw std::invalid_argument("config: mbs_count and sbs_count must be >= 1");
  if (runs < 1) throw std::invalid_argument("config: runs must be >= 1");
  if (predicted_files < 0) throw std::invalid_argument("config: predicted_files must be >= 0");
  if (file_size_min <= 0 || file_size_max < file_size_min)
    throw std::invalid_argument("config: bad file size range");
  if (deadline_min <= 0 || deadline_max < deadline_min)
    throw std::invalid_argument("config: bad deadline range");
  if (kappa <= 0) throw std::invalid_argument("config: kappa must be > 0");
  if (!mbs_positions.empty() && static_cast<int>(mbs_positions.size()) != mbs_count)
    throw std::invalid_argument("config: topology.mbs_positions count mismatch");
  if (!sbs_positions.empty() && static_cast<int>(sbs_positions.size()) != sbs_count)
    throw std::invalid_argument("config: topology.sbs_positions count mismatch");
}

ScenarioConfig parse_config_string(const std::string& text) {
  ScenarioConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(line_no) +
                                  " is not 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "topology.area_side") cfg.area_side = parse_si_value(value);
    else if (key == "topology.mbs_count") cfg.mbs_count = static_cast<int>(parse_si_value(value));
    else if (key == "topology.sbs_count") cfg.sbs_count = static_cast<int>(parse_si_value(value));
    else if (key == "topology.mbs_positions") cfg.mbs_positions = parse_positions(value);
    else if (key == "topology.sbs_positions") cfg.sbs_positions = parse_positions(value);
    else if (key == "mmw.alpha") cfg.mmw_alpha = parse_si_value(value);
    else if (key == "mmw.beta") cfg.mmw_beta = parse_si_value(value);
    else if (key == "mmw.zeta2") cfg.mmw_zeta2 = parse_si_value(value);
    else if (key == "mmw.noise_n1") cfg.mmw_noise_n1 = parse_si_value(value);
    else if (key == "sub6.noise_n2") cfg.sub6_noise_n2 = parse_si_value(value);
    else if (key == "blocks.mmw_count") cfg.mmw_block_count = static_cast<int>(parse_si_value(value));
    else if (key == "blocks.mmw_bandwidth") cfg.mmw_block_bandwidth = parse_si_value(value);
    else if (key == "blocks.mmw_tx_power") cfg.mmw_tx_power = parse_si_value(value);
    else if (key == "blocks.sub6_count") cfg.sub6_block_count = static_cast<int>(parse_si_value(value));
    else if (key == "blocks.sub6_bandwidth") cfg.sub6_block_bandwidth = parse_si_value(value);
    else if (key == "blocks.sub6_tx_power") cfg.sub6_tx_power = parse_si_value(value);
    else if (key == "backhaul.wired.c_max") cfg.wired_c_max = parse_si_value(value);
    else if (key == "demand.predicted_files") cfg.predicted_files = static_cast<int>(parse_si_value(value));
    else if (key == "demand.current_files_per_sbs") cfg.current_files_per_sbs = static_cast<int>(parse_si_value(value));
    else if (key == "demand.size_min") cfg.file_size_min = parse_si_value(value);
    else if (key == "demand.size_max") cfg.file_size_max = parse_si_value(value);
    else if (key == "demand.deadline_min") cfg.deadline_min = parse_si_value(value);
    else if (key == "demand.deadline_max") cfg.deadline_max = parse_si_value(value);
    else if (key == "game.kappa") cfg.kappa = parse_si_value(value);
    else if (key == "game.kappa_schedule") {
      if (value == "constant") cfg.kappa_inverse_t = false;
      else if (value == "inverse_t") cfg.kappa_inverse_t = true;
      else throw std::invalid_argument("config: game.kappa_schedule must be constant|inverse_t");
    }
    else if (key == "learn.alpha_exponent") cfg.alpha_exponent = parse_si_value(value);
    else if (key == "learn.lambda_exponent") cfg.lambda_exponent = parse_si_value(value);
    else if (key == "learn.noise_rel") cfg.noise_rel = parse_si_value(value);
    else if (key == "learn.max_iters") cfg.learn_max_iters = static_cast<long>(parse_si_value(value));
    else if (key == "learn.window") cfg.learn_window = static_cast<int>(parse_si_value(value));
    else if (key == "learn.tol") cfg.learn_tol = parse_si_value(value);
    else if (key == "cga.overhead_frac") cfg.cga_overhead_frac = parse_si_value(value);
    else if (key == "cga.batch") cfg.cga_batch = static_cast<int>(parse_si_value(value));
    else if (key == "runs") cfg.runs = static_cast<int>(parse_si_value(value));
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_si_value(value));
    else throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_string(buffer.str());
}

std::uint64_t run_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Scenario build_scenario(const ScenarioConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  Scenario sc;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> in_area(0.0, cfg.area_side);

  sc.topology.area_side = cfg.area_side;
  if (!cfg.mbs_positions.empty()) {
    sc.topology.mbs_positions = cfg.mbs_positions;
  } else {
    for (int m = 0; m < cfg.mbs_count; ++m)
      sc.topology.mbs_positions.push_back({in_area(rng), in_area(rng)});
  }
  if (!cfg.sbs_positions.empty()) {
    sc.topology.sbs_positions = cfg.sbs_positions;
  } else {
    for (int n = 0; n < cfg.sbs_count; ++n)
      sc.topology.sbs_positions.push_back({in_area(rng), in_area(rng)});
  }

  sc.mmw = {cfg.mmw_alpha, cfg.mmw_beta, cfg.mmw_zeta2, cfg.mmw_noise_n1};
  sc.sub6 = {cfg.sub6_noise_n2};

  int id = 0;
  for (int k = 0; k < cfg.mmw_block_count; ++k)
    sc.blocks.push_back({id++, Band::Mmw, cfg.mmw_block_bandwidth});
  for (int k = 0; k < cfg.sub6_block_count; ++k)
    sc.blocks.push_back({id++, Band::Sub6, cfg.sub6_block_bandwidth});

  sc.wired.c_max = cfg.wired_c_max;
  sc.wired.per_mbs_capacity.assign(cfg.mbs_count, cfg.wired_c_max / cfg.mbs_count);

  // demand draws
  std::uniform_real_distribution<double> size_dist(cfg.file_size_min, cfg.file_size_max);
  std::uniform_real_distribution<double> deadline_dist(cfg.deadline_min, cfg.deadline_max);
  std::uniform_int_distribution<int> sbs_dist(0, cfg.sbs_count - 1);
  sc.demands.per_sbs.resize(cfg.sbs_count);
  for (int n = 0; n < cfg.sbs_count; ++n) {
    for (int j = 0; j < cfg.current_files_per_sbs; ++j) {
      FileSpec f;
      f.size_bits = size_dist(rng);
      f.deadline_s = deadline_dist(rng);
      f.rate_bps = f.size_bits / f.deadline_s;
      sc.demands.per_sbs[n].current.push_back(f);
    }
  }
  // predicted files scattered uniformly over the SBSs
  for (int j = 0; j < cfg.predicted_files; ++j) {
    FileSpec f;
    f.size_bits = size_dist(rng);
    f.deadline_s = deadline_dist(rng);
    f.rate_bps = f.size_bits / f.deadline_s;
    sc.demands.per_sbs[sbs_dist(rng)].predicted.push_back(f);
  }

  // static channel realization
  const std::size_t links =
      static_cast<std::size_t>(cfg.mbs_count) * sc.blocks.size() * cfg.sbs_count;
  sc.tx_power.resize(links);
  sc.channel.sub6_gain.assign(links, 0.0);
  std::normal_distribution<double> deviation(0.0, std::sqrt(cfg.mmw_zeta2));
  std::exponential_distribution<double> rayleigh_power(1.0);  // |h|^2 for Rayleigh h
  sc.channel.mmw_deviation_db.resize(static_cast<std::size_t>(cfg.mbs_count) * cfg.sbs_count);
  for (double& x : sc.channel.mmw_deviation_db) x = deviation(rng);
  for (int m = 0; m < cfg.mbs_count; ++m) {
    for (int k = 0; k < static_cast<int>(sc.blocks.size()); ++k) {
      const bool mmw = sc.blocks[k].band == Band::Mmw;
      for (int n = 0; n < cfg.sbs_count; ++n) {
        const std::size_t i = sc.link_index(m, k, n);
        sc.tx_power[i] = mmw ? cfg.mmw_tx_power : cfg.sub6_tx_power;
        sc.channel.sub6_gain[i] = mmw ? 0.0 : rayleigh_power(rng);
      }
    }
  }

  sc.validate();
  return sc;
}

}  // namespace bmmg
