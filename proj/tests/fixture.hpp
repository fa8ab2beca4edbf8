#pragma once

#include <cstdio>
#include <sstream>
#include <string>

#include "mapsel/engine.hpp"

namespace mapsel::testing {

// Five identities on the default ring; identity 4 is a fake spawned by 3.
// Mirrors tests/oracles/round_trace.py.
inline SimConfig fixture_config() {
  SimConfig cfg;
  cfg.map_fraction = 0.4;
  return cfg;
}

inline FleetState fixture_fleet() {
  struct Row {
    double pos, speed;
    int load;
    bool sybil;
    double trust;
  };
  const Row rows[] = {{9700.0, 30.0, 2, false, 100.0},
                      {30.0, 22.0, 1, false, 100.0},
                      {250.0, 15.0, 3, false, 100.0},
                      {700.0, 20.0, 1, false, 100.0},
                      {700.0, 20.0, 4, true, 56.0}};
  FleetState f;
  f.road_length = 10000.0;
  VehicleId id = 0;
  for (const auto& r : rows) {
    Vehicle v;
    v.id = id;
    v.position = r.pos;
    v.speed = r.speed;
    v.load = r.load;
    v.is_sybil_truth = r.sybil;
    if (r.sybil) v.attacker = 3;
    f.vehicles.push_back(v);
    f.trust.push_back(TrustRecord{id, r.trust, r.trust <= 50.0, -1});
    ++id;
  }
  return f;
}

inline Rng fixture_rng() { return Rng::scripted({0.5, 0.9, 0.3, 0.2, 0.8, 0.7, 0.9, 0.1, 0.95}); }

inline std::string g9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

inline std::string fixture_trace(Execution ex, int rounds = 3) {
  Simulation sim(fixture_config(), fixture_fleet(), fixture_rng(), ex);
  std::ostringstream out;
  auto ids = [](const std::vector<VehicleId>& v) {
    if (v.empty()) return std::string("-");
    std::string s;
    for (auto id : v) s += (s.empty() ? "" : " ") + std::to_string(id);
    return s;
  };
  static const char* kStatus[] = {"map", "attached", "disconnected", "excluded"};
  for (int r = 0; r < rounds; ++r) {
    const auto res = sim.run_round();
    const auto& m = res.metrics;
    const auto& fleet = sim.fleet();
    out << "round " << m.round << "\n"
        << "elected " << ids(res.event.elected_maps) << "\n"
        << "excluded " << ids(res.event.excluded_sybils) << "\n"
        << "digest " << to_hex(res.event.input_digest) << "\n"
        << "counts maps=" << m.elected_maps << " flagged=" << m.flagged_count
        << " attached=" << m.attached << " disconnected=" << m.disconnected << "\n";
    for (const auto& vr : m.vehicles) {
      out << "vehicle " << vr.id << " pos=" << g9(fleet.vehicles[vr.id].position)
          << " trust=" << g9(fleet.trust[vr.id].score)
          << " status=" << kStatus[static_cast<int>(vr.status)] << " handovers=" << vr.handovers;
      for (const auto& a : res.assignments) {
        if (a.vehicle != vr.id) continue;
        for (const auto& p : a.paths) {
          out << " path=" << p.map << ":d=" << g9(p.stats.distance) << ",sinr=" << g9(p.stats.sinr)
              << ",bw=" << g9(p.stats.bandwidth) << ",delay=" << g9(p.stats.total_delay);
        }
      }
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace mapsel::testing
