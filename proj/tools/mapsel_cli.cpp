// mapsel: run MAP-selection simulations, compare strategies, audit ledgers.
//
//   mapsel simulate --config FILE [--seed N] [--strategy NAME] [--out DIR] [--set key=value]...
//   mapsel compare  --config FILE --seeds 1,2,3 --strategies a,b --out DIR [--set key=value]...
//   mapsel verify-ledger LEDGER.json
//
// Log verbosity follows SPDLOG_LEVEL (trace, debug, info, warn, error, off).

#include <CLI11.hpp>
#include <spdlog/cfg/env.h>
#include <spdlog/spdlog.h>

#include <fstream>
#include <iostream>
#include <sstream>

#include "mapsel/engine.hpp"
#include "mapsel/experiment.hpp"
#include "mapsel/ledger.hpp"
#include "mapsel/report.hpp"

namespace {

std::vector<std::pair<std::string, std::string>> parse_overrides(const std::vector<std::string>& sets) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw mapsel::ConfigError("--set expects key=value, got '" + s + "'");
    out.emplace_back(s.substr(0, eq), s.substr(eq + 1));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_level(spdlog::level::info);
  spdlog::cfg::load_env_levels();

  CLI::App app{"Blockchain-audited multi-path MAP selection simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> sets;

  auto* simulate = app.add_subcommand("simulate", "Run one simulation");
  std::optional<std::uint64_t> seed;
  std::optional<std::string> strategy;
  std::string out_dir = "out";
  simulate->add_option("--config", config_path, "key=value config file")->check(CLI::ExistingFile);
  simulate->add_option("--seed", seed, "RNG seed (overrides rng_seed)");
  simulate->add_option("--strategy", strategy, "blockchain-multipath | independent-random | sequence-based | distance-based");
  simulate->add_option("--out", out_dir, "output directory");
  simulate->add_option("--set", sets, "override a config key (key=value)");

  auto* compare = app.add_subcommand("compare", "Run every strategy over every seed");
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> strategies;
  std::string compare_out;
  compare->add_option("--config", config_path, "key=value config file")->check(CLI::ExistingFile);
  compare->add_option("--seeds", seeds, "comma separated seeds")->delimiter(',')->required();
  compare->add_option("--strategies", strategies, "comma separated strategy names")->delimiter(',')->required();
  compare->add_option("--out", compare_out, "output directory")->required();
  compare->add_option("--set", sets, "override a config key (key=value)");

  auto* verify = app.add_subcommand("verify-ledger", "Check a ledger.json hash chain");
  std::string ledger_path;
  verify->add_option("ledger", ledger_path, "ledger.json")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) {
      auto overrides = parse_overrides(sets);
      if (seed) overrides.emplace_back("rng_seed", std::to_string(*seed));
      if (strategy) overrides.emplace_back("strategy", *strategy);
      const auto cfg = mapsel::load_config(config_path, overrides);
      mapsel::ensure_writable_directory(out_dir);
      spdlog::info("simulate strategy={} seed={} rounds={}", mapsel::to_string(cfg.strategy), cfg.rng_seed,
                   cfg.round_count());
      const auto report = mapsel::run_simulation(cfg);
      mapsel::write_run_outputs(report, out_dir);
      const auto& a = report.aggregates;
      spdlog::info("identities={} avg_handover={} max_handover={} avg_delay_s={} tpr={} fpr={}",
                   report.identity_count, mapsel::format_optional(a.avg_handover),
                   mapsel::format_optional(a.max_handover), mapsel::format_optional(a.avg_delay),
                   mapsel::format_optional(a.sybil_tpr), mapsel::format_optional(a.sybil_fpr));
      spdlog::info("ledger head {} ({} blocks), {:.3f} s wall", mapsel::to_hex(report.ledger.head_hash()),
                   report.ledger.size(), report.wall_seconds);
      return 0;
    }
    if (*compare) {
      mapsel::ExperimentSpec spec;
      spec.base = mapsel::load_config(config_path, parse_overrides(sets));
      for (const auto& s : strategies) spec.strategies.push_back(mapsel::parse_strategy(s));
      spec.seeds = seeds;
      spec.out_dir = compare_out;
      spdlog::info("compare {} strategies x {} seeds -> {}", spec.strategies.size(), spec.seeds.size(),
                   compare_out);
      std::ostringstream err;
      const int status = mapsel::run_experiment(spec, err);
      if (status != 0) spdlog::error("{}", err.str());
      return status;
    }
    if (*verify) {
      std::ifstream in(ledger_path);
      if (!in) {
        spdlog::error("cannot open {}", ledger_path);
        return 2;
      }
      std::ostringstream ss;
      ss << in.rdbuf();
      const auto ledger = mapsel::Ledger::from_json(ss.str());
      const bool ok = mapsel::verify_chain(ledger);
      std::cout << (ok ? "OK" : "TAMPERED") << ' ' << ledger.size() << " blocks\n";
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 2;
  }
  return 0;
}
