#pragma once

#include <optional>
#include <span>

#include "mapsel/config.hpp"
#include "mapsel/rng.hpp"
#include "mapsel/types.hpp"

namespace mapsel {

inline constexpr double kTrustMin = 0.0;
inline constexpr double kTrustMax = 100.0;

struct RoundObservation {
  VehicleId id = 0;
  int handover_count = 0;
  bool low_sinr = false;  // any attached link below the SINR threshold
  bool connected = false;
};

// Trust score <= threshold marks an identity as Sybil. The boundary is inclusive.
inline bool classify_sybil(double score, double trust_threshold) { return score <= trust_threshold; }
inline bool classify_sybil(const TrustRecord& r, double trust_threshold) {
  return classify_sybil(r.score, trust_threshold);
}

TrustRecord update_trust(const TrustRecord& record, const RoundObservation& obs,
                         const SimConfig& cfg, std::int64_t round = -1);

// Picks floor(sybil_fraction * N) attackers among the current vehicles and appends
// `sybil_clones` co-located fake identities per attacker. Fakes advertise load_max.
FleetState inject_sybils(FleetState fleet, const SimConfig& cfg, Rng& rng);

// A fake identity's per-round misbehaviour layered on top of what it actually did.
// Consumes exactly two uniforms: handover first, then low SINR.
RoundObservation sybil_observation(RoundObservation actual, const SimConfig& cfg, Rng& rng);

struct DetectionRates {
  std::optional<double> true_positive_rate;   // absent when no Sybil identity exists
  std::optional<double> false_positive_rate;  // absent when no honest identity exists
};

// records[i] is scored against is_sybil[i].
DetectionRates detection_rate(std::span<const TrustRecord> records, const std::vector<bool>& is_sybil);

}  // namespace mapsel
