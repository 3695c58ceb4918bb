#include "bmmg/netmodel.hpp"

#include <cmath>
#include <stdexcept>

namespace bmmg {

int BackhaulAssignment::blocks_held(int n) const {
  int count = 0;
  for (const auto& row : served)
    for (int s : row)
      if (s == n) ++count;
  return count;
}

double mmw_path_loss(double distance_m, const MmwParams& params, double deviation_db) {
  if (distance_m < 1.0) throw std::domain_error("mmw_path_loss: model fitted from 1 m");
  return params.beta + params.alpha * 10.0 * std::log10(distance_m) + deviation_db;
}

double mmw_snr(double power, double path_loss_db, double noise_n1) {
  if (power <= 0) throw std::domain_error("mmw_snr: power must be > 0");
  if (noise_n1 <= 0) throw std::domain_error("mmw_snr: noise_n1 must be > 0");
  return (10.0 * std::log10(power) - path_loss_db) / noise_n1;
}

double sub6_sinr(int m, int k, int n, const BackhaulAssignment& a, const Scenario& sc) {
  double interference = 0.0;
  for (int i = 0; i < sc.mbs_count(); ++i) {
    if (i == m) continue;
    if (a.transmits(i, k)) interference += sc.power(i, k, n) * sc.gain(i, k, n);
  }
  return sc.power(m, k, n) * sc.gain(m, k, n) / (sc.sub6.noise_n2 + interference);
}

double link_gamma(int m, int k, int n, const BackhaulAssignment& a, const Scenario& sc) {
  if (sc.blocks[k].band == Band::Mmw) {
    const double loss = mmw_path_loss(sc.dist(m, n), sc.mmw, sc.deviation(m, n));
    return db_to_linear(mmw_snr(sc.power(m, k, n), loss, sc.mmw.noise_n1));
  }
  return sub6_sinr(m, k, n, a, sc);
}

std::vector<double> wired_shares(const Scenario& sc, const std::vector<int>& s) {
  const int n_sbs = sc.sbs_count();
  std::vector<double> load(n_sbs, 0.0);
  double total = 0.0;
  for (int n = 0; n < n_sbs; ++n) {
    const auto& d = sc.demands.per_sbs[n];
    for (const auto& f : d.current) load[n] += f.size_bits / f.deadline_s;
    const int count = n < static_cast<int>(s.size()) ? s[n] : 0;
    for (int j = 0; j < count; ++j) load[n] += d.predicted[j].rate_bps;
    total += load[n];
  }
  if (total <= 0.0) throw std::domain_error("wired_shares: all traffic loads are zero");
  for (double& l : load) l /= total;
  return load;
}

double total_rate(int n, const BackhaulAssignment& a, const Scenario& sc) {
  double rate = 0.0;
  for (int m = 0; m < sc.mbs_count(); ++m) {
    rate += a.wired[m][n];
    for (int k = 0; k < sc.block_count(); ++k) {
      if (a.served[k][m] != n) continue;
      rate += sc.blocks[k].bandwidth_hz * std::log2(1.0 + link_gamma(m, k, n, a, sc));
    }
  }
  return rate;
}

}  // namespace bmmg
