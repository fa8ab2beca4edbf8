#pragma once

#include "mapsel/config.hpp"
#include "mapsel/rng.hpp"
#include "mapsel/types.hpp"

namespace mapsel {

constexpr double kmh_to_ms(double kmh) { return kmh * 1000.0 / 3600.0; }

// Shorter arc between two points on the ring road.
double ring_distance(double a, double b, double road_length);

// Poisson-sized honest fleet, then Sybil injection, then trust initialization.
// RNG order: count, then (position, speed, load) per vehicle, then injection.
FleetState generate_fleet(const SimConfig& cfg, Rng& rng);

FleetState step_positions(FleetState fleet, double dt);

// In-place variant used by the engine.
void advance_positions(FleetState& fleet, double dt);

}  // namespace mapsel
