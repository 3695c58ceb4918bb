#include "bmmg/scenario.hpp"

#include <numeric>

namespace bmmg {

void Topology::validate() const {
  if (mbs_positions.empty() || sbs_positions.empty())
    throw std::invalid_argument("topology: need at least one MBS and one SBS");
  for (const auto& p : mbs_positions)
    if (p.x < 0 || p.y < 0 || p.x > area_side || p.y > area_side)
      throw std::invalid_argument("topology: MBS position outside area");
  for (const auto& p : sbs_positions)
    if (p.x < 0 || p.y < 0 || p.x > area_side || p.y > area_side)
      throw std::invalid_argument("topology: SBS position outside area");
}

void MmwParams::validate() const {
  if (zeta2 < 0) throw std::invalid_argument("mmw: zeta2 must be >= 0");
  if (noise_n1 <= 0) throw std::invalid_argument("mmw: noise_n1 must be > 0");
}

void Sub6Params::validate() const {
  if (noise_n2 <= 0) throw std::invalid_argument("sub6: noise_n2 must be > 0");
}

void WiredBackhaul::validate() const {
  double sum = std::accumulate(per_mbs_capacity.begin(), per_mbs_capacity.end(), 0.0);
  if (sum > c_max * (1.0 + 1e-12))
    throw std::invalid_argument("wired: per-MBS capacities exceed c_max");
  for (double c : per_mbs_capacity)
    if (c < 0) throw std::invalid_argument("wired: negative capacity");
}

int DemandModel::total_predicted() const {
  int total = 0;
  for (const auto& d : per_sbs) total += static_cast<int>(d.predicted.size());
  return total;
}

void DemandModel::validate() const {
  for (const auto& d : per_sbs) {
    for (const auto& f : d.current)
      if (f.size_bits <= 0 || f.deadline_s <= 0 || f.rate_bps < 0)
        throw std::invalid_argument("demand: invalid current file");
    for (const auto& f : d.predicted)
      if (f.size_bits <= 0 || f.deadline_s <= 0 || f.rate_bps < 0)
        throw std::invalid_argument("demand: invalid predicted file");
  }
}

void Scenario::validate() const {
  topology.validate();
  mmw.validate();
  sub6.validate();
  wired.validate();
  demands.validate();
  if (static_cast<int>(demands.per_sbs.size()) != sbs_count())
    throw std::invalid_argument("scenario: demand entries != SBS count");
  if (static_cast<int>(wired.per_mbs_capacity.size()) != mbs_count())
    throw std::invalid_argument("scenario: wired capacities != MBS count");
  const std::size_t links = static_cast<std::size_t>(mbs_count()) * block_count() * sbs_count();
  if (tx_power.size() != links) throw std::invalid_argument("scenario: tx_power size mismatch");
  if (!blocks.empty() && channel.sub6_gain.size() != links)
    throw std::invalid_argument("scenario: sub6 gain size mismatch");
  if (channel.mmw_deviation_db.size() != static_cast<std::size_t>(mbs_count()) * sbs_count())
    throw std::invalid_argument("scenario: mmW deviation size mismatch");
  for (double p : tx_power)
    if (p <= 0) throw std::invalid_argument("scenario: tx power must be > 0");
  for (const auto& b : blocks)
    if (b.bandwidth_hz <= 0) throw std::invalid_argument("scenario: bandwidth must be > 0");
}

}  // namespace bmmg
