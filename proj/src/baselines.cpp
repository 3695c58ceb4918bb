#include "bmmg/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "bmmg/allocation.hpp"

namespace bmmg {

namespace {

double prefix_bits(const Scenario& sc, const std::vector<int>& counts) {
  double bits = 0.0;
  for (int n = 0; n < sc.sbs_count(); ++n)
    for (int j = 0; j < counts[n]; ++j)
      bits += sc.demands.per_sbs[n].predicted[j].size_bits;
  return bits;
}

// Next SBS in ascending (downloads, id) order that still has files left.
int next_fair_sbs(const Scenario& sc, const std::vector<int>& counts) {
  int pick = -1;
  for (int n = 0; n < sc.sbs_count(); ++n) {
    if (counts[n] >= static_cast<int>(sc.demands.per_sbs[n].predicted.size())) continue;
    if (pick < 0 || counts[n] < counts[pick]) pick = n;
  }
  return pick;
}

Scenario reduced_capacity(const Scenario& sc, double overhead_total) {
  Scenario cut = sc;
  const double keep = sc.wired.c_max > 0.0
                          ? std::max(0.0, sc.wired.c_max - overhead_total) / sc.wired.c_max
                          : 0.0;
  cut.wired.c_max *= keep;
  for (double& c : cut.wired.per_mbs_capacity) c *= keep;
  return cut;
}

}  // namespace

BaselineResult oca(const Scenario& sc, int phi) {
  BaselineResult result;
  result.downloaded.assign(sc.sbs_count(), 0);
  const int target = std::min(phi, sc.demands.total_predicted());
  for (int picked = 0; picked < target; ++picked) {
    const int n = next_fair_sbs(sc, result.downloaded);
    if (n < 0) break;
    ++result.downloaded[n];
  }
  result.requested_files = std::accumulate(result.downloaded.begin(), result.downloaded.end(), 0);
  result.requested_bits = prefix_bits(sc, result.downloaded);
  result.slack_bps = total_slack(sc, result.downloaded);
  return result;
}

BaselineResult cga(const Scenario& sc, double overhead_per_sbs, int batch) {
  BaselineResult result;
  result.downloaded.assign(sc.sbs_count(), 0);
  double overhead_total = 0.0;
  Scenario effective = sc;
  while (true) {
    ++result.rounds;
    overhead_total += sc.sbs_count() * overhead_per_sbs;
    effective = reduced_capacity(sc, overhead_total);
    const int budget = compute_phi(effective);
    int admitted = std::accumulate(result.downloaded.begin(), result.downloaded.end(), 0);
    if (admitted >= budget) break;
    bool progressed = false;
    // ascending-count fairness, `batch` files per selected SBS
    std::vector<int> order(sc.sbs_count());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return result.downloaded[a] < result.downloaded[b];
    });
    for (int n : order) {
      for (int b = 0; b < batch && admitted < budget; ++b) {
        if (result.downloaded[n] >=
            static_cast<int>(sc.demands.per_sbs[n].predicted.size()))
          break;
        ++result.downloaded[n];
        ++admitted;
        progressed = true;
      }
      if (admitted >= budget) break;
    }
    if (!progressed) break;
  }
  result.overhead_bps = overhead_total;
  result.requested_files = std::accumulate(result.downloaded.begin(), result.downloaded.end(), 0);
  result.requested_bits = prefix_bits(sc, result.downloaded);
  result.slack_bps = total_slack(effective, result.downloaded);
  return result;
}

BaselineResult rfa(const Scenario& sc, std::uint64_t seed) {
  BaselineResult result;
  result.downloaded.assign(sc.sbs_count(), 0);
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  for (int n = 0; n < sc.sbs_count(); ++n) {
    for (const auto& f : sc.demands.per_sbs[n].predicted) {
      if (coin(rng)) {
        ++result.downloaded[n];
        result.requested_bits += f.size_bits;
      }
    }
  }
  result.requested_files = std::accumulate(result.downloaded.begin(), result.downloaded.end(), 0);
  result.slack_bps = total_slack(sc, result.downloaded);
  return result;
}

}  // namespace bmmg
