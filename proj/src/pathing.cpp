#include "mapsel/pathing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "mapsel/fleet.hpp"

namespace mapsel {

bool PathAssignment::contains(VehicleId map) const {
  return std::any_of(paths.begin(), paths.end(), [map](const PathChoice& p) { return p.map == map; });
}

LinkModel::LinkModel(const SimConfig& cfg, double road_length, std::vector<MapSite> maps)
    : cfg_(&cfg), road_length_(road_length), maps_(std::move(maps)), by_id_(maps_.size()) {
  std::iota(by_id_.begin(), by_id_.end(), std::size_t{0});
  std::sort(by_id_.begin(), by_id_.end(),
            [this](std::size_t a, std::size_t b) { return maps_[a].id < maps_[b].id; });
}

std::optional<std::size_t> LinkModel::index_of(VehicleId map) const {
  auto it = std::lower_bound(by_id_.begin(), by_id_.end(), map,
                             [this](std::size_t i, VehicleId id) { return maps_[i].id < id; });
  if (it == by_id_.end() || maps_[*it].id != map) return std::nullopt;
  return *it;
}

std::vector<std::size_t> LinkModel::rank(double position) const {
  std::vector<double> dist(maps_.size());
  for (std::size_t j = 0; j < maps_.size(); ++j) {
    dist[j] = ring_distance(position, maps_[j].position, road_length_);
  }
  std::vector<std::size_t> order(maps_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (dist[a] != dist[b]) return dist[a] < dist[b];
    return maps_[a].id < maps_[b].id;
  });
  return order;
}

std::size_t LinkModel::nearest(double position) const {
  if (maps_.empty()) throw std::logic_error("nearest: no MAPs elected");
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < maps_.size(); ++j) {
    const double d = ring_distance(position, maps_[j].position, road_length_);
    if (d < best_d || (d == best_d && maps_[j].id < maps_[best].id)) {
      best = j;
      best_d = d;
    }
  }
  return best;
}

void LinkModel::set_members(std::vector<int> members) {
  if (members.size() != maps_.size()) {
    throw std::invalid_argument("set_members: one count per MAP required");
  }
  members_ = std::move(members);
}

int LinkModel::attached_count(std::size_t map_index, bool requester_is_member) const {
  const int members = members_.empty() ? 0 : members_[map_index];
  return std::max(1, members + (requester_is_member ? 0 : 1));
}

std::vector<int> count_members(const LinkModel& model, std::span<const PathAssignment> prev) {
  std::vector<int> counts(model.maps().size(), 0);
  for (const auto& a : prev) {
    for (const auto& p : a.paths) {
      if (auto idx = model.index_of(p.map)) ++counts[*idx];
    }
  }
  return counts;
}

LinkStats LinkModel::link(VehicleId vehicle, double position, std::size_t map_index,
                          bool requester_is_member) const {
  const SimConfig& cfg = *cfg_;
  LinkStats s;
  s.vehicle = vehicle;
  s.map = maps_[map_index].id;
  s.distance = ring_distance(position, maps_[map_index].position, road_length_);

  // Same summation order as compute_sinr over the other MAPs in map order.
  double interference = 0.0;
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    if (i == map_index) continue;
    interference += received_power(cfg.tx_power,
                                   ring_distance(position, maps_[i].position, road_length_),
                                   cfg.path_loss_exp);
  }
  s.sinr = received_power(cfg.tx_power, s.distance, cfg.path_loss_exp) /
           (cfg.noise_power + interference);
  s.bandwidth = link_bandwidth(s.sinr, attached_count(map_index, requester_is_member), cfg);
  if (s.sinr > 0) {
    const auto d = path_delay(s.distance, s.sinr, cfg);
    s.alpha_trans = d.alpha_trans;
    s.alpha_sinr = d.alpha_sinr;
    s.trans_delay = d.trans_delay;
    s.total_delay = d.total_delay;
  } else {
    s.alpha_trans = cfg.a0 * (1.0 + s.distance / cfg.d_c);
    s.trans_delay = s.alpha_trans * s.distance;
    s.alpha_sinr = std::numeric_limits<double>::infinity();
    s.total_delay = std::numeric_limits<double>::infinity();
  }
  return s;
}

namespace {

bool qualifies(const LinkStats& s, const SimConfig& cfg) { return s.sinr > 0 && meets_thresholds(s, cfg); }

}  // namespace

PathAssignment select_paths(const Vehicle& vehicle, const PathAssignment& prev,
                            const LinkModel& model, std::uint64_t round) {
  const SimConfig& cfg = model.config();
  const auto cap = static_cast<std::size_t>(cfg.max_paths);
  PathAssignment out;
  out.vehicle = vehicle.id;
  out.round = round;
  if (model.empty()) return out;

  for (const auto& p : prev.paths) {
    if (out.paths.size() >= cap) break;
    const auto idx = model.index_of(p.map);
    if (!idx) continue;
    auto stats = model.link(vehicle.id, vehicle.position, *idx, true);
    if (qualifies(stats, cfg)) out.paths.push_back({p.map, stats});
  }

  for (std::size_t idx : model.rank(vehicle.position)) {
    if (out.paths.size() >= cap) break;
    const auto& site = model.maps()[idx];
    // Candidates are distance ordered and the distance term alone bounds the delay.
    if (transmission_delay(ring_distance(vehicle.position, site.position, model.road_length()), cfg) >=
        cfg.delay_threshold) {
      break;
    }
    if (out.contains(site.id)) continue;
    auto stats = model.link(vehicle.id, vehicle.position, idx, prev.contains(site.id));
    if (qualifies(stats, cfg)) out.paths.push_back({site.id, stats});
  }

  out.disconnected = out.paths.empty();
  return out;
}

std::vector<PathChoice> qualifying_links(const Vehicle& vehicle, const PathAssignment& prev,
                                         const LinkModel& model) {
  std::vector<PathChoice> out;
  if (model.empty()) return out;
  const SimConfig& cfg = model.config();
  for (std::size_t idx : model.rank(vehicle.position)) {
    const auto& site = model.maps()[idx];
    if (transmission_delay(ring_distance(vehicle.position, site.position, model.road_length()), cfg) >=
        cfg.delay_threshold) {
      break;
    }
    auto stats = model.link(vehicle.id, vehicle.position, idx, prev.contains(site.id));
    if (qualifies(stats, cfg)) out.push_back({site.id, stats});
  }
  return out;
}

PathAssignment baseline_paths(Strategy strategy, const Vehicle& vehicle, const PathAssignment& prev,
                              std::uint64_t ordinal, std::uint64_t round, const LinkModel& model,
                              double uniform_draw) {
  PathAssignment out;
  out.vehicle = vehicle.id;
  out.round = round;
  if (strategy == Strategy::BlockchainMultipath) {
    throw std::invalid_argument("baseline_paths: not a baseline strategy");
  }
  if (model.empty()) return out;

  std::optional<std::size_t> pick;
  switch (strategy) {
    case Strategy::IndependentRandom: {
      const std::size_t n = model.maps().size();
      const auto slot = std::min(n - 1, static_cast<std::size_t>(uniform_draw * static_cast<double>(n)));
      pick = model.index_in_id_order(slot);
      break;
    }
    case Strategy::SequenceBased: {
      auto reachable = qualifying_links(vehicle, prev, model);
      if (reachable.empty()) break;
      std::sort(reachable.begin(), reachable.end(),
                [](const PathChoice& a, const PathChoice& b) { return a.map < b.map; });
      const auto& chosen = reachable[(ordinal + round) % reachable.size()];
      out.paths.push_back(chosen);
      break;
    }
    case Strategy::DistanceBased:
      pick = model.nearest(vehicle.position);
      break;
    case Strategy::BlockchainMultipath:
      break;
  }
  if (pick) {
    const VehicleId id = model.maps()[*pick].id;
    out.paths.push_back({id, model.link(vehicle.id, vehicle.position, *pick, prev.contains(id))});
  }
  out.disconnected = out.paths.empty();
  return out;
}

int count_handovers(const PathAssignment& prev, const PathAssignment& next) {
  int joined = 0;
  for (const auto& p : next.paths) {
    if (!prev.contains(p.map)) ++joined;
  }
  return joined;
}

}  // namespace mapsel
