#include "mapsel/engine.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include "mapsel/fleet.hpp"

namespace mapsel {

namespace {

Rng seeded_rng(const SimConfig& cfg) {
  cfg.validate();
  return Rng(cfg.rng_seed);
}

}  // namespace

Simulation::Simulation(const SimConfig& cfg, Execution ex)
    : cfg_(cfg), execution_(ex), rng_(seeded_rng(cfg)) {
  fleet_ = generate_fleet(cfg_, rng_);
  prev_.resize(fleet_.size());
  pending_.resize(fleet_.size());
}

Simulation::Simulation(const SimConfig& cfg, FleetState fleet, Rng rng, Execution ex)
    : cfg_(cfg), execution_(ex), rng_(std::move(rng)), fleet_(std::move(fleet)) {
  cfg_.validate();
  if (fleet_.trust.size() != fleet_.vehicles.size()) {
    throw std::invalid_argument("Simulation: one trust record per identity required");
  }
  for (std::size_t i = 0; i < fleet_.size(); ++i) {
    if (fleet_.vehicles[i].id != i || fleet_.trust[i].id != i) {
      throw std::invalid_argument("Simulation: identities must be numbered 0..n-1 in order");
    }
  }
  prev_.resize(fleet_.size());
  pending_.resize(fleet_.size());
}

std::vector<bool> Simulation::sybil_truth() const {
  std::vector<bool> truth;
  truth.reserve(fleet_.size());
  for (const auto& v : fleet_.vehicles) truth.push_back(v.is_sybil_truth);
  return truth;
}

RoundResult Simulation::run_round() {
  const std::uint64_t round = round_++;
  const std::size_t n = fleet_.size();
  const bool proposed = cfg_.strategy == Strategy::BlockchainMultipath;
  RoundResult result;
  result.event.round = round;

  // (1) mobility
  advance_positions(fleet_, cfg_.dt);

  // (2) trust evaluation and Sybil exclusion; baselines run no detection
  std::vector<bool> excluded(n, false);
  if (proposed) {
    for (std::size_t i = 0; i < n; ++i) {
      if (pending_[i]) {
        fleet_.trust[i] = update_trust(fleet_.trust[i], *pending_[i], cfg_,
                                       static_cast<std::int64_t>(round));
      }
      excluded[i] = fleet_.trust[i].flagged_sybil;
      if (excluded[i]) result.event.excluded_sybils.push_back(static_cast<VehicleId>(i));
    }
  }

  // (3) election
  std::vector<CandidateInput> inputs;
  inputs.reserve(n);
  CandidateTable table;
  if (proposed) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!excluded[i]) {
        inputs.push_back({static_cast<VehicleId>(i), fleet_.vehicles[i].load, fleet_.trust[i].score});
      }
    }
    table = selection_probabilities(inputs, cfg_.trust_threshold);
  } else {
    // No trust gate: every identity is an equally likely MAP.
    table.entries.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      table.entries.push_back({static_cast<VehicleId>(i), fleet_.vehicles[i].load,
                               fleet_.trust[i].score, 1.0, 1.0 / static_cast<double>(n)});
    }
  }
  const std::size_t k = map_count(table.size(), cfg_.map_fraction);
  result.event.elected_maps = proposed && cfg_.incumbency
                                  ? elect_with_incumbency(table, k, incumbents_, rng_)
                                  : select_maps(table, k, rng_);
  result.event.input_digest = table_digest(table);
  incumbents_ = result.event.elected_maps;

  std::vector<bool> is_map(n, false);
  std::vector<MapSite> sites;
  sites.reserve(k);
  for (VehicleId id : result.event.elected_maps) {
    is_map[id] = true;
    sites.push_back({id, fleet_.vehicles[id].position});
  }
  for (std::size_t i = 0; i < n; ++i) {
    fleet_.vehicles[i].role = is_map[i] ? Role::Map : Role::Candidate;
  }

  // (4) path selection for every non-MAP, non-excluded identity
  std::vector<const Vehicle*> seekers;
  seekers.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_map[i] && !excluded[i]) seekers.push_back(&fleet_.vehicles[i]);
  }
  LinkModel model(cfg_, fleet_.road_length, std::move(sites));
  model.set_members(count_members(model, prev_));

  std::vector<double> draws;
  if (cfg_.strategy == Strategy::IndependentRandom && !model.empty()) {
    draws.reserve(seekers.size());
    for (std::size_t i = 0; i < seekers.size(); ++i) draws.push_back(rng_.uniform01());
  }
  result.assignments =
      kernels::assign_paths(execution_, cfg_.strategy, seekers, prev_, draws, model, round);

  // (5) accounting
  RoundMetrics& m = result.metrics;
  m.round = round;
  m.vehicle_count = n;
  m.elected_maps = result.event.elected_maps.size();
  m.flagged_count = result.event.excluded_sybils.size();
  m.vehicles.resize(n);
  std::vector<RoundObservation> obs(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& vr = m.vehicles[i];
    vr.id = static_cast<VehicleId>(i);
    vr.honest = !fleet_.vehicles[i].is_sybil_truth;
    obs[i].id = vr.id;
    if (is_map[i]) {
      vr.status = VehicleStatus::Map;
      obs[i].connected = true;
    } else if (excluded[i]) {
      vr.status = VehicleStatus::Excluded;
    }
  }
  std::vector<PathAssignment> next(n);
  for (const auto& a : result.assignments) {
    auto& vr = m.vehicles[a.vehicle];
    vr.handovers = round == 0 ? 0 : count_handovers(prev_[a.vehicle], a);
    vr.path_count = static_cast<int>(a.paths.size());
    if (a.disconnected) {
      vr.status = VehicleStatus::Disconnected;
      ++m.disconnected;
    } else {
      vr.status = VehicleStatus::Attached;
      ++m.attached;
      double sum = 0.0;
      for (const auto& p : a.paths) sum += p.stats.total_delay;
      vr.mean_delay = sum / static_cast<double>(a.paths.size());
    }
    auto& o = obs[a.vehicle];
    o.handover_count = vr.handovers;
    o.connected = !a.disconnected;
    o.low_sinr = std::any_of(a.paths.begin(), a.paths.end(), [this](const PathChoice& p) {
      return p.stats.sinr < cfg_.sinr_threshold;
    });
    next[a.vehicle] = a;
  }
  prev_ = std::move(next);
  for (std::size_t i = 0; i < n; ++i) {
    auto& paths = fleet_.vehicles[i].attached_paths;
    paths.clear();
    for (const auto& p : prev_[i].paths) paths.push_back(p.map);
  }

  // (6) observations feed the next round's trust evaluation
  if (proposed) {
    for (std::size_t i = 0; i < n; ++i) {
      pending_[i] = fleet_.vehicles[i].is_sybil_truth ? sybil_observation(obs[i], cfg_, rng_) : obs[i];
    }
  }
  return result;
}

void RunAccumulator::add(const RoundMetrics& m) {
  if (totals_.size() < m.vehicles.size()) totals_.resize(m.vehicles.size(), -1);
  for (const auto& vr : m.vehicles) {
    const bool seeker = vr.status == VehicleStatus::Attached || vr.status == VehicleStatus::Disconnected;
    if (!seeker) continue;
    ++seeker_rounds_;
    if (vr.status == VehicleStatus::Disconnected) ++disconnected_;
    if (vr.mean_delay) {
      delay_sum_ += *vr.mean_delay;
      ++delay_samples_;
    }
    if (!vr.honest) continue;
    auto& total = totals_[vr.id];
    if (total < 0) {
      total = 0;
      ++population_;
    }
    total += vr.handovers;
    handover_sum_ += vr.handovers;
  }
}

std::optional<double> RunAccumulator::avg_handover() const {
  if (population_ == 0) return std::nullopt;
  return static_cast<double>(handover_sum_) / static_cast<double>(population_);
}

std::optional<double> RunAccumulator::max_handover() const {
  if (population_ == 0) return std::nullopt;
  return static_cast<double>(*std::max_element(totals_.begin(), totals_.end()));
}

std::optional<double> RunAccumulator::min_handover() const {
  if (population_ == 0) return std::nullopt;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (auto t : totals_) {
    if (t >= 0) best = std::min(best, t);
  }
  return static_cast<double>(best);
}

std::optional<double> RunAccumulator::avg_delay() const {
  if (delay_samples_ == 0) return std::nullopt;
  return delay_sum_ / static_cast<double>(delay_samples_);
}

std::optional<double> RunAccumulator::disconnection_rate() const {
  if (seeker_rounds_ == 0) return std::nullopt;
  return static_cast<double>(disconnected_) / static_cast<double>(seeker_rounds_);
}

std::optional<HandoverSummary> summarize_handovers(std::span<const std::int64_t> totals) {
  if (totals.empty()) return std::nullopt;
  std::int64_t sum = 0;
  for (auto t : totals) sum += t;
  const auto [lo, hi] = std::minmax_element(totals.begin(), totals.end());
  return HandoverSummary{static_cast<double>(sum) / static_cast<double>(totals.size()),
                         static_cast<double>(*hi), static_cast<double>(*lo)};
}

Aggregates compute_metrics(std::span<const RoundMetrics> rounds) {
  RunAccumulator acc;
  for (const auto& m : rounds) acc.add(m);
  Aggregates a;
  a.avg_handover = acc.avg_handover();
  a.max_handover = acc.max_handover();
  a.min_handover = acc.min_handover();
  a.avg_delay = acc.avg_delay();
  a.disconnection_rate = acc.disconnection_rate();
  return a;
}

SimulationReport run_simulation(const SimConfig& cfg, Execution ex) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();

  SimulationReport report;
  report.config = cfg;
  Simulation sim(cfg, ex);
  const std::size_t rounds = cfg.round_count();
  report.rounds.reserve(rounds);
  for (std::size_t r = 0; r < rounds; ++r) {
    auto out = sim.run_round();
    report.ledger.append(out.event);
    report.rounds.push_back(std::move(out.metrics));
  }

  report.aggregates = compute_metrics(report.rounds);
  report.final_trust = sim.fleet().trust;
  report.sybil_truth = sim.sybil_truth();
  report.identity_count = sim.fleet().size();
  const auto rates = detection_rate(report.final_trust, report.sybil_truth);
  report.aggregates.sybil_tpr = rates.true_positive_rate;
  report.aggregates.sybil_fpr = rates.false_positive_rate;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace mapsel
