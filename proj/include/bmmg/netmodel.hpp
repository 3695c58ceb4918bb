#pragma once

#include <vector>

#include "bmmg/scenario.hpp"

namespace bmmg {

// Resource-block assignment eta plus the wired split c_mn.
struct BackhaulAssignment {
  // served[k][m] = SBS id served by MBS m on block k, or -1.
  std::vector<std::vector<int>> served;
  // wired[m][n] = c_mn in bits/s.
  std::vector<std::vector<double>> wired;

  bool transmits(int m, int k) const { return served[k][m] >= 0; }
  int blocks_held(int n) const;
};

// L = beta + alpha*10*log10(d) + X. Fit is only valid from 1 m.
double mmw_path_loss(double distance_m, const MmwParams& params, double deviation_db);

// dB-domain SNR ratio: (10*log10(P) - L) / N1.
double mmw_snr(double power, double path_loss_db, double noise_n1);

inline double db_to_linear(double v_db) { return std::pow(10.0, v_db / 10.0); }

// Interference counts only MBSs actively transmitting on block k under `a`.
double sub6_sinr(int m, int k, int n, const BackhaulAssignment& a, const Scenario& sc);

// Linear SINR/SNR of link (m,k,n) for the rate formula, by block family.
double link_gamma(int m, int k, int n, const BackhaulAssignment& a, const Scenario& sc);

// sigma_n: traffic load of SBS n over total load, given request counts s.
// Throws if every SBS has zero load.
std::vector<double> wired_shares(const Scenario& sc, const std::vector<int>& s);

// Total achievable backhaul rate of SBS n (wired share + Shannon terms, log2).
double total_rate(int n, const BackhaulAssignment& a, const Scenario& sc);

}  // namespace bmmg
