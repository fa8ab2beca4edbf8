// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "enumeration.hpp"
#include "fixture.hpp"
#include "mapsel/engine.hpp"
#include "mapsel/fleet.hpp"
#include "mapsel/report.hpp"
#include "mapsel/selection.hpp"
#include "tamper.hpp"

using namespace mapsel;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeeds = 10;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const Outcome& o) {
  std::printf("%s criterion %2d %-28s %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Default-config run with per-round checks that need the path assignments.
struct CheckedRun {
  SimulationReport report;
  std::size_t path_violations = 0;
  std::size_t cap_violations = 0;
  std::size_t exclusion_violations = 0;
  std::vector<std::set<VehicleId>> flagged_at_election;
};

CheckedRun checked_run(Strategy s, std::uint64_t seed) {
  SimConfig cfg;
  cfg.strategy = s;
  cfg.rng_seed = seed;
  CheckedRun out;
  auto& rep = out.report;
  rep.config = cfg;
  const auto start = std::chrono::steady_clock::now();
  Simulation sim(cfg);
  for (std::size_t r = 0; r < cfg.round_count(); ++r) {
    auto res = sim.run_round();
    // trust is not touched after the evaluation step, so this is the election-time view
    std::set<VehicleId> flagged;
    for (const auto& t : sim.fleet().trust) {
      if (t.flagged_sybil) flagged.insert(t.id);
    }
    for (const auto& a : res.assignments) {
      if (a.paths.size() > static_cast<std::size_t>(cfg.max_paths)) ++out.cap_violations;
      if (s != Strategy::BlockchainMultipath) continue;
      for (const auto& p : a.paths) {
        if (!(p.stats.total_delay < cfg.delay_threshold && p.stats.bandwidth >= cfg.bandwidth_min)) {
          ++out.path_violations;
        }
      }
    }
    for (auto id : res.event.elected_maps) out.exclusion_violations += flagged.count(id);
    out.flagged_at_election.push_back(std::move(flagged));
    rep.ledger.append(res.event);
    rep.rounds.push_back(std::move(res.metrics));
  }
  rep.aggregates = compute_metrics(rep.rounds);
  rep.final_trust = sim.fleet().trust;
  rep.sybil_truth = sim.sybil_truth();
  rep.identity_count = sim.fleet().size();
  const auto rates = detection_rate(rep.final_trust, rep.sybil_truth);
  rep.aggregates.sybil_tpr = rates.true_positive_rate;
  rep.aggregates.sybil_fpr = rates.false_positive_rate;
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

const Strategy kStrategies[] = {Strategy::BlockchainMultipath, Strategy::IndependentRandom,
                                Strategy::SequenceBased, Strategy::DistanceBased};

std::vector<std::vector<CheckedRun>> runs;  // [strategy][seed - 1]

const Aggregates& agg(Strategy s, std::size_t i) {
  return runs[static_cast<std::size_t>(s)][i].report.aggregates;
}

Outcome handover_reduction() {
  std::vector<double> red;
  double slowest = 0.0;
  for (std::size_t i = 0; i < kSeeds; ++i) {
    red.push_back(1.0 - *agg(Strategy::BlockchainMultipath, i).avg_handover /
                            *agg(Strategy::IndependentRandom, i).avg_handover);
    slowest = std::max(slowest, runs[0][i].report.wall_seconds);
  }
  const double m = median(red);
  Outcome o{m >= 0.70 && slowest < 60.0, fmt("median reduction %.3f (>= 0.70, target 0.80), slowest run %.2f s", m, slowest)};
  return o;
}

Outcome max_handover_reduction() {
  std::vector<double> red;
  int zero_runs = 0;
  std::string missing;
  for (std::size_t i = 0; i < kSeeds; ++i) {
    red.push_back(1.0 - *agg(Strategy::BlockchainMultipath, i).max_handover /
                            *agg(Strategy::IndependentRandom, i).max_handover);
    if (*agg(Strategy::BlockchainMultipath, i).min_handover == 0.0) {
      ++zero_runs;
    } else {
      missing += " " + std::to_string(i + 1);
    }
  }
  const double m = median(red);
  Outcome o{m >= 0.60 && zero_runs == static_cast<int>(kSeeds),
            fmt("median max reduction %.3f (>= 0.60); zero-handover vehicle in %.0f/%.0f runs", m, zero_runs,
                static_cast<double>(kSeeds))};
  if (!missing.empty()) o.detail += "; none in seed(s)" + missing;
  return o;
}

Outcome delay_ordering() {
  auto mean_delay = [](Strategy s) {
    std::vector<double> v;
    for (std::size_t i = 0; i < kSeeds; ++i) v.push_back(*agg(s, i).avg_delay);
    return mean(v);
  };
  const double p = mean_delay(Strategy::BlockchainMultipath);
  const double r = mean_delay(Strategy::IndependentRandom);
  const double s = mean_delay(Strategy::SequenceBased);
  const double d = mean_delay(Strategy::DistanceBased);
  const bool pass = std::abs(p - s) <= 0.15 * s && r >= 1.5 * p && d >= 1.5 * p;
  Outcome o{pass, fmt("proposed/sequence %.3f (0.85..1.15), random/proposed %.3g, distance/proposed %.3g", p / s,
                      r / p, d / p)};
  return o;
}

Outcome sybil_detection() {
  std::vector<double> tpr, fpr;
  for (std::size_t i = 0; i < kSeeds; ++i) {
    tpr.push_back(*agg(Strategy::BlockchainMultipath, i).sybil_tpr);
    fpr.push_back(*agg(Strategy::BlockchainMultipath, i).sybil_fpr);
  }
  const double t = mean(tpr), f = mean(fpr);
  return {t >= 0.95 && f <= 0.05, fmt("mean TPR %.4f (>= 0.95), mean FPR %.4f (<= 0.05)", t, f)};
}

Outcome ledger_tamper() {
  std::size_t mutations = 0, missed = 0, false_rejects = 0;
  Rng rng(20240607);
  for (int run = 0; run < 100; ++run) {
    SimConfig cfg;
    cfg.road_length = 1500.0;
    cfg.total_time = static_cast<double>(rng.uniform_int(20, 40)) * cfg.dt;
    cfg.rng_seed = 1000 + static_cast<std::uint64_t>(run);
    const auto rep = run_simulation(cfg, Execution::Serial);
    const auto& blocks = rep.ledger.blocks();
    if (!verify_chain(blocks) || !verify_chain(Ledger::from_json(rep.ledger.to_json()))) ++false_rejects;
    for (int m = 0; m < 1000; ++m) {
      const auto b = rng.uniform_index(blocks.size());
      const auto pos = rng.uniform_index(blocks[b].canonical_bytes().size());
      const auto mask = static_cast<std::uint8_t>(rng.uniform_int(1, 255));
      ++mutations;
      if (testing::survives_mutation(blocks, b, pos, mask)) ++missed;
    }
  }
  return {missed == 0 && false_rejects == 0,
          fmt("%.0f mutations, %.0f undetected; %.0f untampered chains rejected", static_cast<double>(mutations),
              static_cast<double>(missed), static_cast<double>(false_rejects))};
}

Outcome probability_correctness() {
  double worst = 0.0, worst_sum = 0.0, worst_scale = 0.0;
  auto table = [](const std::vector<std::pair<int, double>>& lt) {
    std::vector<CandidateInput> in;
    for (std::size_t i = 0; i < lt.size(); ++i) in.push_back({static_cast<VehicleId>(i), lt[i].first, lt[i].second});
    return selection_probabilities(in, 0.0);
  };
  struct Fixed {
    std::vector<std::pair<int, double>> lt;
    std::vector<double> p;
  };
  const std::vector<Fixed> fixed{
      {{{2, 100.0}, {1, 100.0}, {1, 50.0}}, {4.0 / 7, 2.0 / 7, 1.0 / 7}},
      {{{1, 80.0}, {1, 80.0}, {1, 80.0}, {1, 80.0}}, {0.25, 0.25, 0.25, 0.25}},
      {{{4, 60.0}}, {1.0}},
      {{{3, 90.0}, {1, 60.0}, {2, 75.0}}, {270.0 / 480, 60.0 / 480, 150.0 / 480}},
  };
  for (const auto& f : fixed) {
    const auto t = table(f.lt);
    for (std::size_t i = 0; i < f.p.size(); ++i) worst = std::max(worst, std::abs(t.entries[i].probability - f.p[i]));
  }
  Rng rng(77);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = rng.uniform_int(1, 60);
    const int lf = rng.uniform_int(2, 9);
    const double tf = rng.uniform_real(0.001, 1000.0);
    std::vector<std::pair<int, double>> base, loads, trusts;
    for (int i = 0; i < n; ++i) {
      const int l = rng.uniform_int(1, 4);
      const double t = rng.uniform_real(50.0001, 100.0);
      base.push_back({l, t});
      loads.push_back({l * lf, t});
      trusts.push_back({l, t * tf});
    }
    const auto a = table(base), b = table(loads), c = table(trusts);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      sum += a.entries[i].probability;
      worst_scale = std::max({worst_scale, std::abs(a.entries[i].probability - b.entries[i].probability),
                              std::abs(a.entries[i].probability - c.entries[i].probability)});
    }
    worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
  }
  return {worst <= 1e-12 && worst_sum <= 1e-9 && worst_scale <= 1e-12,
          fmt("max |p - hand| %.2e (1e-12), max |sum - 1| %.2e (1e-9), max scale drift %.2e (1e-12)", worst,
              worst_sum, worst_scale)};
}

Outcome sampling_oracle() {
  const std::vector<std::vector<double>> tables{
      {200, 100, 50}, {1, 1}, {400, 300, 200, 100}, {60, 396, 150, 153, 100}, {999, 1, 1, 1, 1}};
  Rng rng(4242);
  const int draws = 100000;
  int checks = 0, outside = 0;
  double worst_z = 0.0;
  for (const auto& w : tables) {
    CandidateTable t;
    double total = 0;
    for (double x : w) total += x;
    for (std::size_t i = 0; i < w.size(); ++i) {
      t.entries.push_back({static_cast<VehicleId>(i), 1, w[i], w[i], w[i] / total});
    }
    for (std::size_t k = 1; k <= w.size(); ++k) {
      const auto exact = testing::inclusion_probabilities(w, k);
      std::vector<int> hits(w.size(), 0);
      for (int d = 0; d < draws; ++d) {
        for (auto id : select_maps(t, k, rng)) ++hits[id];
      }
      for (std::size_t i = 0; i < w.size(); ++i) {
        const double p = exact[i];
        const double sigma = std::sqrt(p * (1 - p) / draws);
        const double dev = std::abs(hits[i] / static_cast<double>(draws) - p);
        ++checks;
        if (sigma == 0.0) {
          outside += dev > 1e-12;
          continue;
        }
        worst_z = std::max(worst_z, dev / sigma);
        outside += dev > 3.0 * sigma;
      }
    }
  }
  return {outside == 0, fmt("%.0f inclusion checks, %.0f outside 3 sigma, worst z %.2f", checks, outside, worst_z)};
}

Outcome threshold_soundness() {
  std::size_t paths = 0, cap = 0, assignments = 0;
  for (const auto& per_strategy : runs) {
    for (const auto& r : per_strategy) {
      paths += r.path_violations;
      cap += r.cap_violations;
    }
  }
  for (const auto& r : runs[0]) {
    for (const auto& m : r.report.rounds) assignments += m.attached;
  }
  return {paths == 0 && cap == 0,
          fmt("%.0f attached vehicle-rounds checked: %.0f threshold violations, %.0f over max_paths",
              static_cast<double>(assignments), static_cast<double>(paths), static_cast<double>(cap))};
}

Outcome golden_trace() {
  std::ifstream in(MAPSEL_GOLDEN_DIR "/round_trace.txt", std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  const auto golden = s.str();
  const auto serial = testing::fixture_trace(Execution::Serial);
  const auto parallel = testing::fixture_trace(Execution::Parallel);
  return {!golden.empty() && serial == golden && parallel == golden,
          fmt("%.0f golden bytes; serial ", static_cast<double>(golden.size())) +
              (serial == golden ? "match" : "differ") + ", parallel " + (parallel == golden ? "match" : "differ")};
}

Outcome determinism() {
  const auto base = fs::temp_directory_path() / "mapsel-acceptance-determinism";
  fs::remove_all(base);
  bool same = true;
  std::string heads;
  for (auto s : kStrategies) {
    SimConfig cfg;
    cfg.strategy = s;
    cfg.rng_seed = 7;
    write_run_outputs(run_simulation(cfg, Execution::Parallel), base / "a" / std::string(to_string(s)));
    write_run_outputs(run_simulation(cfg, Execution::Serial), base / "b" / std::string(to_string(s)));
    for (const char* f : {"summary.json", "metrics.csv", "ledger.json"}) {
      auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream o;
        o << in.rdbuf();
        return o.str();
      };
      const auto a = slurp(base / "a" / std::string(to_string(s)) / f);
      const auto b = slurp(base / "b" / std::string(to_string(s)) / f);
      same = same && !a.empty() && a == b;
    }
  }
  fs::remove_all(base);
  return {same, "4 strategies x (summary.json, metrics.csv, ledger.json), two runs each: " +
                    std::string(same ? "byte-identical" : "differ")};
}

Outcome complexity() {
  const int ns[] = {100, 200, 400, 800};
  std::vector<double> t, model;
  for (int n : ns) {
    SimConfig cfg;
    cfg.sybil_fraction = 0.0;
    Rng rng(n);
    FleetState f;
    f.road_length = cfg.road_length;
    for (int i = 0; i < n; ++i) {
      Vehicle v;
      v.id = static_cast<VehicleId>(i);
      v.position = rng.uniform_real(0.0, cfg.road_length);
      v.speed = kmh_to_ms(rng.uniform_real(cfg.speed_min, cfg.speed_max));
      v.load = rng.uniform_int(1, cfg.load_max);
      f.vehicles.push_back(v);
      f.trust.push_back(TrustRecord{v.id, cfg.initial_trust, false, -1});
    }
    const double k = static_cast<double>(map_count(static_cast<std::size_t>(n), cfg.map_fraction));
    // best of several batches; each batch runs until it has accumulated enough time
    double best = INFINITY;
    for (int batch = 0; batch < 5; ++batch) {
      Simulation sim(cfg, f, Rng(99), Execution::Serial);
      int rounds = 0;
      const auto start = std::chrono::steady_clock::now();
      double elapsed = 0.0;
      while (elapsed < 0.2 || rounds < 10) {
        sim.run_round();
        ++rounds;
        elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      }
      best = std::min(best, elapsed / rounds);
    }
    t.push_back(best);
    model.push_back(n * k * std::log(k));
  }
  double log_a = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) log_a += std::log(t[i] / model[i]);
  log_a /= static_cast<double>(t.size());
  double worst = 1.0;
  std::string pts;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double ratio = t[i] / (std::exp(log_a) * model[i]);
    worst = std::max(worst, std::max(ratio, 1.0 / ratio));
    pts += fmt(" n=%.0f:%.1fus(x%.2f)", ns[i], t[i] * 1e6, ratio);
  }
  return {worst <= 1.5, fmt("a*n*k*log k fit, worst factor %.2f (<= 1.5);", worst) + pts};
}

Outcome exclusion_invariant() {
  std::size_t payloads = 0, violations = 0, mismatches = 0;
  for (const auto& r : runs[0]) {
    // replay from the exported ledger rather than the in-memory events
    const auto ledger = Ledger::from_json(r.report.ledger.to_json());
    if (!verify_chain(ledger)) ++violations;
    for (std::size_t b = 0; b < ledger.size(); ++b) {
      const auto ev = ledger.blocks()[b].event();
      const auto& flagged = r.flagged_at_election[b];
      ++payloads;
      for (auto id : ev.elected_maps) violations += flagged.count(id);
      if (std::set<VehicleId>(ev.excluded_sybils.begin(), ev.excluded_sybils.end()) != flagged) ++mismatches;
    }
    violations += r.exclusion_violations;
  }
  return {violations == 0 && mismatches == 0,
          fmt("%.0f payloads replayed: %.0f flagged identities elected, %.0f exclusion lists disagree with trust state",
              static_cast<double>(payloads), static_cast<double>(violations), static_cast<double>(mismatches))};
}

}  // namespace

int main() {
  std::printf("running %llu seeds x 4 strategies with the default configuration\n",
              static_cast<unsigned long long>(kSeeds));
  for (auto s : kStrategies) {
    runs.emplace_back();
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) runs.back().push_back(checked_run(s, seed));
  }

  report(1, "handover reduction", handover_reduction());
  report(2, "max-handover reduction", max_handover_reduction());
  report(3, "delay ordering", delay_ordering());
  report(4, "sybil detection", sybil_detection());
  report(5, "ledger tamper-evidence", ledger_tamper());
  report(6, "selection probabilities", probability_correctness());
  report(7, "sampling oracle", sampling_oracle());
  report(8, "path threshold soundness", threshold_soundness());
  report(9, "golden round trace", golden_trace());
  report(10, "determinism", determinism());
  report(11, "complexity scaling", complexity());
  report(12, "sybil exclusion invariant", exclusion_invariant());

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
