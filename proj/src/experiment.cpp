#include "mapsel/experiment.hpp"

#include <fstream>
#include <map>
#include <string>
#include <utility>

#include "mapsel/engine.hpp"
#include "mapsel/report.hpp"

namespace mapsel {

namespace fs = std::filesystem;

fs::path run_directory(const fs::path& out, Strategy s, std::uint64_t seed) {
  return out / std::string(to_string(s)) / ("seed-" + std::to_string(seed));
}

void ensure_writable_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());
  const auto probe = dir / ".write-probe";
  {
    std::ofstream out(probe);
    if (!out || !(out << "ok")) {
      throw std::runtime_error("output directory '" + dir.string() + "' is not writable");
    }
  }
  fs::remove(probe, ec);
}

int run_experiment(const ExperimentSpec& spec, std::ostream& err) {
  if (spec.strategies.empty() || spec.seeds.empty()) {
    err << "experiment needs at least one strategy and one seed\n";
    return 2;
  }
  try {
    spec.base.validate();
    ensure_writable_directory(spec.out_dir);
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return 2;
  }

  struct Job {
    Strategy strategy;
    std::uint64_t seed;
    std::optional<Aggregates> aggregates;
    std::string error;
  };
  std::vector<Job> jobs;
  for (Strategy s : spec.strategies) {
    for (std::uint64_t seed : spec.seeds) jobs.push_back({s, seed, std::nullopt, {}});
  }

  // Runs are independent; each one keeps its inner kernels serial.
  const auto n = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    Job& job = jobs[i];
    const auto dir = run_directory(spec.out_dir, job.strategy, job.seed);
    try {
      SimConfig cfg = spec.base;
      cfg.strategy = job.strategy;
      cfg.rng_seed = job.seed;
      const auto report = run_simulation(cfg, Execution::Serial);
      write_run_outputs(report, dir);
      job.aggregates = report.aggregates;
    } catch (const std::exception& e) {
      job.error = e.what();
      std::error_code ec;
      fs::create_directories(dir, ec);
      std::ofstream(dir / "FAILED") << job.error << '\n';
    }
  }

  bool failed = false;
  for (const auto& job : jobs) {
    if (!job.error.empty()) {
      err << "run " << to_string(job.strategy) << " seed " << job.seed << " failed: " << job.error << '\n';
      failed = true;
    }
  }
  if (failed) return 1;

  std::vector<ComparisonRow> rows;
  for (Strategy s : spec.strategies) {
    std::vector<Aggregates> runs;
    for (const auto& job : jobs) {
      if (job.strategy == s) runs.push_back(*job.aggregates);
    }
    rows.push_back(summarize_strategy(s, runs));
  }
  const std::pair<const char*, std::string> outputs[] = {{"comparison.csv", comparison_csv(rows)},
                                                         {"comparison.svg", comparison_svg(rows)}};
  for (const auto& [name, text] : outputs) {
    std::ofstream out(spec.out_dir / name, std::ios::binary);
    out << text;
    if (!out) {
      err << "cannot write " << (spec.out_dir / name).string() << '\n';
      return 1;
    }
  }
  return 0;
}

}  // namespace mapsel
