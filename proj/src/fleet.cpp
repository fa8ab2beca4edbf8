#include "mapsel/fleet.hpp"

#include <cmath>

#include "mapsel/trust.hpp"

namespace mapsel {

double ring_distance(double a, double b, double road_length) {
  const double d = std::abs(a - b);
  return std::min(d, road_length - d);
}

FleetState generate_fleet(const SimConfig& cfg, Rng& rng) {
  FleetState fleet;
  fleet.road_length = cfg.road_length;

  const auto n = rng.poisson(cfg.vehicle_density * cfg.road_length);
  fleet.vehicles.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    Vehicle v;
    v.id = static_cast<VehicleId>(i);
    v.position = rng.uniform_real(0.0, cfg.road_length);
    v.speed = kmh_to_ms(rng.uniform_real(cfg.speed_min, cfg.speed_max));
    v.load = rng.uniform_int(1, cfg.load_max);
    fleet.vehicles.push_back(std::move(v));
  }

  fleet = inject_sybils(std::move(fleet), cfg, rng);

  fleet.trust.clear();
  fleet.trust.reserve(fleet.vehicles.size());
  for (const auto& v : fleet.vehicles) {
    fleet.trust.push_back(TrustRecord{v.id, cfg.initial_trust,
                                      classify_sybil(cfg.initial_trust, cfg.trust_threshold), -1});
  }
  return fleet;
}

void advance_positions(FleetState& fleet, double dt) {
  const double length = fleet.road_length;
  for (auto& v : fleet.vehicles) {
    double p = std::fmod(v.position + v.speed * dt, length);
    if (p < 0) p += length;
    if (p >= length) p = 0.0;
    v.position = p;
  }
}

FleetState step_positions(FleetState fleet, double dt) {
  advance_positions(fleet, dt);
  return fleet;
}

}  // namespace mapsel
