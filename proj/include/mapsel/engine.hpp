#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mapsel/config.hpp"
#include "mapsel/kernels.hpp"
#include "mapsel/ledger.hpp"
#include "mapsel/pathing.hpp"
#include "mapsel/rng.hpp"
#include "mapsel/selection.hpp"
#include "mapsel/trust.hpp"
#include "mapsel/types.hpp"

namespace mapsel {

using kernels::Execution;

enum class VehicleStatus { Map, Attached, Disconnected, Excluded };

struct VehicleRound {
  VehicleId id = 0;
  VehicleStatus status = VehicleStatus::Disconnected;
  bool honest = true;
  int handovers = 0;
  int path_count = 0;
  std::optional<double> mean_delay;  // present iff attached
};

struct RoundMetrics {
  std::uint64_t round = 0;
  std::size_t vehicle_count = 0;
  std::size_t elected_maps = 0;
  std::size_t flagged_count = 0;  // identities excluded as Sybil at election time
  std::size_t attached = 0;
  std::size_t disconnected = 0;
  std::vector<VehicleRound> vehicles;  // one per identity, id order
};

struct RoundResult {
  RoundMetrics metrics;
  SelectionEvent event;
  std::vector<PathAssignment> assignments;  // path seekers, id order
};

// State of one run: the fleet, its trust records and everything carried from
// one interval to the next. Rounds run in a fixed order: move, evaluate
// trust, elect, assign paths, account, observe.
class Simulation {
 public:
  explicit Simulation(const SimConfig& cfg, Execution ex = Execution::Parallel);
  // Starts from a prepared fleet and random stream (fixtures, benchmarks).
  Simulation(const SimConfig& cfg, FleetState fleet, Rng rng, Execution ex = Execution::Parallel);

  RoundResult run_round();

  std::uint64_t next_round() const { return round_; }
  const SimConfig& config() const { return cfg_; }
  const FleetState& fleet() const { return fleet_; }
  std::vector<bool> sybil_truth() const;

 private:
  SimConfig cfg_;
  Execution execution_;
  Rng rng_;
  FleetState fleet_;
  std::uint64_t round_ = 0;
  std::vector<VehicleId> incumbents_;
  std::vector<PathAssignment> prev_;  // by id
  std::vector<std::optional<RoundObservation>> pending_;  // by id
};

struct Aggregates {
  std::optional<double> avg_handover;
  std::optional<double> max_handover;
  std::optional<double> min_handover;
  std::optional<double> avg_delay;
  std::optional<double> disconnection_rate;
  std::optional<double> sybil_tpr;
  std::optional<double> sybil_fpr;
};

// Running statistics over a run. Handover figures are over per-vehicle totals
// of honest identities that have sought paths at least once; delay is the mean
// over attached vehicle-rounds of each vehicle's mean path delay.
class RunAccumulator {
 public:
  void add(const RoundMetrics& m);

  std::optional<double> avg_handover() const;
  std::optional<double> max_handover() const;
  std::optional<double> min_handover() const;
  std::optional<double> avg_delay() const;
  std::optional<double> disconnection_rate() const;

 private:
  std::vector<std::int64_t> totals_;  // by id; -1 outside the population
  std::size_t population_ = 0;
  std::int64_t handover_sum_ = 0;
  double delay_sum_ = 0.0;
  std::size_t delay_samples_ = 0;
  std::size_t disconnected_ = 0;
  std::size_t seeker_rounds_ = 0;
};

struct HandoverSummary {
  double avg = 0.0;
  double max = 0.0;
  double min = 0.0;
};
std::optional<HandoverSummary> summarize_handovers(std::span<const std::int64_t> totals);

Aggregates compute_metrics(std::span<const RoundMetrics> rounds);

struct SimulationReport {
  SimConfig config;
  std::vector<RoundMetrics> rounds;
  Aggregates aggregates;
  Ledger ledger;
  std::vector<TrustRecord> final_trust;
  std::vector<bool> sybil_truth;
  std::size_t identity_count = 0;
  double wall_seconds = 0.0;  // not part of any serialized output
};

// Validates the config, runs every round and appends one ledger block per round.
SimulationReport run_simulation(const SimConfig& cfg, Execution ex = Execution::Parallel);

}  // namespace mapsel
