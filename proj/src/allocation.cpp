#include "bmmg/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bmmg {

RequiredRates required_rates(const DemandModel& demands, const std::vector<int>& s) {
  const int n_sbs = static_cast<int>(demands.per_sbs.size());
  RequiredRates out;
  out.current.assign(n_sbs, 0.0);
  out.predicted.assign(n_sbs, 0.0);
  for (int n = 0; n < n_sbs; ++n) {
    const auto& d = demands.per_sbs[n];
    for (const auto& f : d.current) out.current[n] += f.size_bits / f.deadline_s;
    const int count = n < static_cast<int>(s.size()) ? s[n] : 0;
    if (count < 0 || count > static_cast<int>(d.predicted.size()))
      throw std::domain_error("required_rates: s_n out of range");
    for (int j = 0; j < count; ++j)
      out.predicted[n] += d.predicted[j].size_bits / d.predicted[j].deadline_s;
  }
  return out;
}

std::vector<int> round_robin_counts(const DemandModel& demands, int total_files) {
  const int n_sbs = static_cast<int>(demands.per_sbs.size());
  std::vector<int> s(n_sbs, 0);
  int assigned = 0;
  while (assigned < total_files) {
    bool progressed = false;
    for (int n = 0; n < n_sbs && assigned < total_files; ++n) {
      if (s[n] < static_cast<int>(demands.per_sbs[n].predicted.size())) {
        ++s[n];
        ++assigned;
        progressed = true;
      }
    }
    if (!progressed) throw std::domain_error("round_robin_counts: more files than predicted");
  }
  return s;
}

namespace {

double candidate_rate(const Scenario& sc, const BackhaulAssignment& a, int m, int k, int n) {
  return sc.blocks[k].bandwidth_hz * std::log2(1.0 + link_gamma(m, k, n, a, sc));
}

std::vector<double> rates_under(const Scenario& sc, const BackhaulAssignment& a) {
  std::vector<double> r(sc.sbs_count());
  for (int n = 0; n < sc.sbs_count(); ++n) r[n] = total_rate(n, a, sc);
  return r;
}

}  // namespace

BackhaulAssignment allocate(const Scenario& sc, const std::vector<int>& s) {
  const int n_sbs = sc.sbs_count();
  const int n_mbs = sc.mbs_count();
  const int n_blk = sc.block_count();

  BackhaulAssignment a;
  a.served.assign(n_blk, std::vector<int>(n_mbs, -1));
  a.wired.assign(n_mbs, std::vector<double>(n_sbs, 0.0));

  RequiredRates req = required_rates(sc.demands, s);
  std::vector<double> need(n_sbs);
  double total_load = 0.0;
  for (int n = 0; n < n_sbs; ++n) {
    need[n] = req.current[n] + req.predicted[n];
    total_load += need[n];
  }
  if (total_load > 0.0) {
    std::vector<double> sigma = wired_shares(sc, s);
    for (int m = 0; m < n_mbs; ++m)
      for (int n = 0; n < n_sbs; ++n)
        a.wired[m][n] = sigma[n] * sc.wired.per_mbs_capacity[m];
  }

  const int fairness_floor = n_blk / n_sbs;
  std::vector<int> held(n_sbs, 0);
  std::vector<double> rate = rates_under(sc, a);

  while (true) {
    // Pick the SBS to serve: below-floor SBSs first, then any with unmet rate.
    int target = -1;
    double worst = 0.0;
    for (int n = 0; n < n_sbs; ++n) {
      if (held[n] >= fairness_floor) continue;
      const double unmet = need[n] - rate[n];
      if (target < 0 || unmet > worst) {
        target = n;
        worst = unmet;
      }
    }
    if (target < 0) {
      for (int n = 0; n < n_sbs; ++n) {
        const double unmet = need[n] - rate[n];
        if (unmet <= 0.0) continue;
        if (target < 0 || unmet > worst) {
          target = n;
          worst = unmet;
        }
      }
    }
    if (target < 0) break;

    // Best free (m, k) for the target. A mmW block is directional and used by
    // at most one MBS; a sub-6 (m, k) pair only needs to be individually free.
    int best_m = -1, best_k = -1;
    double best = -1.0;
    for (int k = 0; k < n_blk; ++k) {
      if (sc.blocks[k].band == Band::Mmw) {
        bool used = false;
        for (int m = 0; m < n_mbs; ++m) used = used || a.served[k][m] >= 0;
        if (used) continue;
      }
      for (int m = 0; m < n_mbs; ++m) {
        if (a.served[k][m] >= 0) continue;
        const double r = candidate_rate(sc, a, m, k, target);
        if (r > best) {
          best = r;
          best_m = m;
          best_k = k;
        }
      }
    }
    if (best_k < 0) break;  // blocks exhausted

    a.served[best_k][best_m] = target;
    ++held[target];
    rate = rates_under(sc, a);  // sub-6 interference shifts with each assignment
  }
  return a;
}

bool demands_met(const Scenario& sc, const std::vector<int>& s) {
  BackhaulAssignment a = allocate(sc, s);
  RequiredRates req = required_rates(sc.demands, s);
  for (int n = 0; n < sc.sbs_count(); ++n) {
    const double need = req.current[n] + req.predicted[n];
    if (total_rate(n, a, sc) + 1e-9 * (1.0 + need) < need) return false;
  }
  return true;
}

double total_slack(const Scenario& sc, const std::vector<int>& s) {
  BackhaulAssignment a = allocate(sc, s);
  RequiredRates req = required_rates(sc.demands, s);
  double slack = 0.0;
  for (int n = 0; n < sc.sbs_count(); ++n)
    slack += total_rate(n, a, sc) - req.current[n] - req.predicted[n];
  return slack;
}

int compute_phi(const Scenario& sc) {
  const int total = sc.demands.total_predicted();
  if (!demands_met(sc, std::vector<int>(sc.sbs_count(), 0))) return 0;
  for (int f = 1; f <= total; ++f)
    if (!demands_met(sc, round_robin_counts(sc.demands, f))) return f - 1;
  return total;
}

}  // namespace bmmg
