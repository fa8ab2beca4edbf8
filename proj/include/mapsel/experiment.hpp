#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <vector>

#include "mapsel/config.hpp"

namespace mapsel {

struct ExperimentSpec {
  SimConfig base;
  std::vector<Strategy> strategies;
  std::vector<std::uint64_t> seeds;
  std::filesystem::path out_dir;
};

// Directory of one (strategy, seed) run inside an experiment.
std::filesystem::path run_directory(const std::filesystem::path& out, Strategy s, std::uint64_t seed);

// Runs every (strategy, seed) pair, writes per-run outputs plus comparison.csv
// and comparison.svg. Returns the process exit status; diagnostics go to `err`.
// Comparison files are written only when every run succeeded.
int run_experiment(const ExperimentSpec& spec, std::ostream& err);

// Throws std::runtime_error when `dir` cannot be created or written.
void ensure_writable_directory(const std::filesystem::path& dir);

}  // namespace mapsel
