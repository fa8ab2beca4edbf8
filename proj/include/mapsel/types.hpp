#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace mapsel {

using VehicleId = std::uint32_t;

enum class Role { Candidate, Map };

struct Vehicle {
  VehicleId id = 0;
  double position = 0.0;  // meters on [0, road_length)
  double speed = 0.0;     // m/s
  int load = 1;
  bool is_sybil_truth = false;
  // Set on fake identities: the physical vehicle that spawned them.
  std::optional<VehicleId> attacker;
  Role role = Role::Candidate;
  std::vector<VehicleId> attached_paths;
};

struct TrustRecord {
  VehicleId id = 0;
  double score = 100.0;
  bool flagged_sybil = false;
  std::int64_t last_update_round = -1;
};

// Identities are stored in id order: vehicles[i].id == trust[i].id == i.
struct FleetState {
  double road_length = 0.0;
  std::vector<Vehicle> vehicles;
  std::vector<TrustRecord> trust;

  std::size_t size() const { return vehicles.size(); }
};

}  // namespace mapsel
