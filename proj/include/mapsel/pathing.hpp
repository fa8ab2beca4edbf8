#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mapsel/config.hpp"
#include "mapsel/radio.hpp"
#include "mapsel/types.hpp"

namespace mapsel {

struct MapSite {
  VehicleId id = 0;
  double position = 0.0;
};

struct PathChoice {
  VehicleId map = 0;
  LinkStats stats;
};

struct PathAssignment {
  VehicleId vehicle = 0;
  std::uint64_t round = 0;
  std::vector<PathChoice> paths;
  bool disconnected = true;

  bool contains(VehicleId map) const;
};

// Radio environment of one round: the elected MAPs and how many vehicles each
// MAP is currently serving (its attachments carried over from the previous
// round). A link's bandwidth is shared among those members plus the requester
// when it is not already one of them.
class LinkModel {
 public:
  LinkModel(const SimConfig& cfg, double road_length, std::vector<MapSite> maps);

  const SimConfig& config() const { return *cfg_; }
  double road_length() const { return road_length_; }
  const std::vector<MapSite>& maps() const { return maps_; }
  bool empty() const { return maps_.empty(); }

  std::optional<std::size_t> index_of(VehicleId map) const;
  // i-th MAP index when MAPs are ordered by id.
  std::size_t index_in_id_order(std::size_t i) const { return by_id_[i]; }

  // Map indexes ordered by ascending ring distance, ties to the lower id.
  std::vector<std::size_t> rank(double position) const;
  std::size_t nearest(double position) const;

  void set_members(std::vector<int> members);
  const std::vector<int>& members() const { return members_; }
  int attached_count(std::size_t map_index, bool requester_is_member) const;

  // Full link evaluation; every other elected MAP interferes.
  LinkStats link(VehicleId vehicle, double position, std::size_t map_index,
                 bool requester_is_member) const;

 private:
  const SimConfig* cfg_;
  double road_length_;
  std::vector<MapSite> maps_;
  std::vector<std::size_t> by_id_;  // map indexes sorted by id
  std::vector<int> members_;
};

// Per-MAP member counts (indexed like model.maps()) from the previous round's
// assignments, indexed by vehicle id.
std::vector<int> count_members(const LinkModel& model, std::span<const PathAssignment> prev);

// Ranked multi-path selection under the delay/bandwidth thresholds. Previous
// paths whose MAP is still elected and still qualifies are kept first.
PathAssignment select_paths(const Vehicle& vehicle, const PathAssignment& prev,
                            const LinkModel& model, std::uint64_t round);

// Qualifying MAPs for a vehicle in ranked order, without any cap (test oracle aid
// and the reachable set of the sequence-based baseline).
std::vector<PathChoice> qualifying_links(const Vehicle& vehicle, const PathAssignment& prev,
                                         const LinkModel& model);

// Single-path baselines. `uniform_draw` in [0, 1) is consumed only by
// independent-random. Sequence-based cycles through the reachable MAPs in id
// order; distance-based takes the nearest MAP unconditionally.
PathAssignment baseline_paths(Strategy strategy, const Vehicle& vehicle, const PathAssignment& prev,
                              std::uint64_t ordinal, std::uint64_t round, const LinkModel& model,
                              double uniform_draw);

// Newly joined MAPs; leaving a MAP is free.
int count_handovers(const PathAssignment& prev, const PathAssignment& next);

}  // namespace mapsel
