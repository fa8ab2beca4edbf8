// Serial reference vs OpenMP kernels, plus whole rounds in both modes.
#include <benchmark/benchmark.h>

#include <vector>

#include "mapsel/engine.hpp"
#include "mapsel/fleet.hpp"
#include "mapsel/kernels.hpp"

using namespace mapsel;

namespace {

FleetState make_fleet(const SimConfig& cfg, int n) {
  Rng rng(static_cast<std::uint64_t>(n));
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
  return f;
}

struct KernelInput {
  SimConfig cfg;
  FleetState fleet;
  std::vector<const Vehicle*> seekers;
  std::vector<PathAssignment> prev;
  std::vector<double> draws;
  std::vector<MapSite> sites;
};

// every fifth vehicle is a MAP, the rest seek paths
KernelInput make_input(int n) {
  KernelInput in;
  in.cfg.strategy = Strategy::BlockchainMultipath;
  in.fleet = make_fleet(in.cfg, n);
  Rng rng(7);
  for (const auto& v : in.fleet.vehicles) {
    if (v.id % 5 == 0) {
      in.sites.push_back({v.id, v.position});
    } else {
      in.seekers.push_back(&v);
      in.draws.push_back(rng.uniform01());
    }
    PathAssignment p;
    p.vehicle = v.id;
    in.prev.push_back(p);
  }
  return in;
}

template <kernels::Execution Ex>
void BM_AssignPaths(benchmark::State& state) {
  auto in = make_input(static_cast<int>(state.range(0)));
  LinkModel model(in.cfg, in.fleet.road_length, in.sites);
  model.set_members(count_members(model, in.prev));
  for (auto _ : state) {
    auto out = kernels::assign_paths(Ex, in.cfg.strategy, in.seekers, in.prev, in.draws, model, 1);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(in.seekers.size()));
}

template <kernels::Execution Ex>
void BM_Round(benchmark::State& state) {
  SimConfig cfg;
  cfg.sybil_fraction = 0.0;
  const auto fleet = make_fleet(cfg, static_cast<int>(state.range(0)));
  Simulation sim(cfg, fleet, Rng(99), Ex);
  for (auto _ : state) {
    auto r = sim.run_round();
    benchmark::DoNotOptimize(r.assignments.data());
  }
}

}  // namespace

BENCHMARK(BM_AssignPaths<kernels::Execution::Serial>)->Name("assign_paths/serial")->Arg(200)->Arg(500)->Arg(1000);
BENCHMARK(BM_AssignPaths<kernels::Execution::Parallel>)->Name("assign_paths/parallel")->Arg(200)->Arg(500)->Arg(1000)->UseRealTime();
BENCHMARK(BM_Round<kernels::Execution::Serial>)->Name("round/serial")->Arg(200)->Arg(1000);
BENCHMARK(BM_Round<kernels::Execution::Parallel>)->Name("round/parallel")->Arg(200)->Arg(1000)->UseRealTime();

BENCHMARK_MAIN();
