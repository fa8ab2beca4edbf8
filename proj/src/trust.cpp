#include "mapsel/trust.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mapsel {

TrustRecord update_trust(const TrustRecord& record, const RoundObservation& obs,
                         const SimConfig& cfg, std::int64_t round) {
  if (obs.handover_count < 0) throw std::invalid_argument("update_trust: negative handover count");
  double delta = -cfg.handover_penalty * obs.handover_count;
  if (obs.low_sinr) delta -= cfg.low_sinr_penalty;
  if (obs.handover_count == 0 && !obs.low_sinr && obs.connected) delta += cfg.stable_reward;

  TrustRecord out = record;
  out.score = std::clamp(record.score + delta, kTrustMin, kTrustMax);
  out.flagged_sybil = classify_sybil(out.score, cfg.trust_threshold);
  out.last_update_round = round;
  return out;
}

FleetState inject_sybils(FleetState fleet, const SimConfig& cfg, Rng& rng) {
  if (!(cfg.sybil_fraction >= 0 && cfg.sybil_fraction < 1)) {
    throw std::invalid_argument("inject_sybils: sybil_fraction must lie in [0, 1)");
  }
  const std::size_t n = fleet.vehicles.size();
  const auto attackers = static_cast<std::size_t>(std::floor(cfg.sybil_fraction * n));
  if (attackers == 0 || cfg.sybil_clones == 0) return fleet;

  // Partial Fisher-Yates: the first `attackers` slots become the chosen set.
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < attackers; ++i) {
    const std::size_t j = i + rng.uniform_index(n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(attackers);
  std::sort(pool.begin(), pool.end());

  fleet.vehicles.reserve(n + attackers * cfg.sybil_clones);
  for (std::size_t a : pool) {
    const Vehicle host = fleet.vehicles[a];
    for (int c = 0; c < cfg.sybil_clones; ++c) {
      Vehicle fake;
      fake.id = static_cast<VehicleId>(fleet.vehicles.size());
      fake.position = host.position;
      fake.speed = host.speed;
      fake.load = cfg.load_max;
      fake.is_sybil_truth = true;
      fake.attacker = host.id;
      fleet.vehicles.push_back(std::move(fake));
    }
  }
  for (auto& v : fleet.vehicles) {
    if (v.id >= fleet.trust.size()) {
      fleet.trust.push_back(TrustRecord{v.id, cfg.initial_trust,
                                        classify_sybil(cfg.initial_trust, cfg.trust_threshold), -1});
    }
  }
  return fleet;
}

RoundObservation sybil_observation(RoundObservation actual, const SimConfig& cfg, Rng& rng) {
  const bool spurious_handover = rng.bernoulli(cfg.sybil_handover_prob);
  const bool spurious_low_sinr = rng.bernoulli(cfg.sybil_low_sinr_prob);
  if (spurious_handover) actual.handover_count += 1;
  actual.low_sinr = actual.low_sinr || spurious_low_sinr;
  return actual;
}

DetectionRates detection_rate(std::span<const TrustRecord> records, const std::vector<bool>& is_sybil) {
  if (records.size() != is_sybil.size()) {
    throw std::invalid_argument("detection_rate: label count mismatch");
  }
  std::size_t sybils = 0, honest = 0, tp = 0, fp = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (is_sybil[i]) {
      ++sybils;
      tp += records[i].flagged_sybil ? 1 : 0;
    } else {
      ++honest;
      fp += records[i].flagged_sybil ? 1 : 0;
    }
  }
  DetectionRates out;
  if (sybils > 0) out.true_positive_rate = static_cast<double>(tp) / static_cast<double>(sybils);
  if (honest > 0) out.false_positive_rate = static_cast<double>(fp) / static_cast<double>(honest);
  return out;
}

}  // namespace mapsel
