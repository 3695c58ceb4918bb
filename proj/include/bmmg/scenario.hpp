#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace bmmg {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(const Vec2& a, const Vec2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

struct Topology {
  std::vector<Vec2> mbs_positions;
  std::vector<Vec2> sbs_positions;
  double area_side = 2000.0;  // m

  void validate() const;
};

// mmW path loss fit: L = beta + alpha*10*log10(d) + X, X ~ N(0, zeta2).
struct MmwParams {
  double alpha = 2.0;   // fit slope
  double beta = 10.0;   // dB at 1 m
  double zeta2 = 5.8;   // dB^2
  double noise_n1 = 1.0;

  void validate() const;
};

struct Sub6Params {
  double noise_n2 = 1e-10;  // W

  void validate() const;
};

enum class Band { Mmw, Sub6 };

struct ResourceBlock {
  int id = 0;
  Band band = Band::Mmw;
  double bandwidth_hz = 1e6;  // omega_k
};

struct WiredBackhaul {
  std::vector<double> per_mbs_capacity;  // c'_m, bits/s
  double c_max = 1e9;                    // bits/s

  void validate() const;
};

struct FileSpec {
  double size_bits = 0.0;   // L_f
  double deadline_s = 1.0;  // x_f
  double rate_bps = 0.0;    // q_f
};

struct SbsDemand {
  std::vector<FileSpec> current;    // served immediately, rate L_f/x_f
  std::vector<FileSpec> predicted;  // strict priority order
};

struct DemandModel {
  std::vector<SbsDemand> per_sbs;

  int total_predicted() const;
  void validate() const;
};

// One realization per run, static across sub-slots.
struct ChannelState {
  std::vector<double> mmw_deviation_db;  // [m * N + n]
  std::vector<double> sub6_gain;         // [(m * K + k) * N + n], |h|^2
};

struct Scenario {
  Topology topology;
  MmwParams mmw;
  Sub6Params sub6;
  std::vector<ResourceBlock> blocks;
  std::vector<double> tx_power;  // [(m * K + k) * N + n]; mW on mmW blocks, W on sub-6
  WiredBackhaul wired;
  DemandModel demands;
  ChannelState channel;

  int mbs_count() const { return static_cast<int>(topology.mbs_positions.size()); }
  int sbs_count() const { return static_cast<int>(topology.sbs_positions.size()); }
  int block_count() const { return static_cast<int>(blocks.size()); }

  std::size_t link_index(int m, int k, int n) const {
    return (static_cast<std::size_t>(m) * blocks.size() + k) * topology.sbs_positions.size() + n;
  }
  double power(int m, int k, int n) const { return tx_power[link_index(m, k, n)]; }
  double gain(int m, int k, int n) const { return channel.sub6_gain[link_index(m, k, n)]; }
  double deviation(int m, int n) const {
    return channel.mmw_deviation_db[static_cast<std::size_t>(m) * topology.sbs_positions.size() + n];
  }
  double dist(int m, int n) const {
    return distance(topology.mbs_positions[m], topology.sbs_positions[n]);
  }

  void validate() const;
};

}  // namespace bmmg
