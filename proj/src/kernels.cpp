#include "mapsel/kernels.hpp"

namespace mapsel::kernels {

namespace {

PathAssignment assign_one(Strategy strategy, const Vehicle& v, const PathAssignment& prev,
                          double draw, const LinkModel& model, std::uint64_t round) {
  if (strategy == Strategy::BlockchainMultipath) return select_paths(v, prev, model, round);
  return baseline_paths(strategy, v, prev, v.id, round, model, draw);
}

}  // namespace

std::vector<PathAssignment> assign_paths_serial(Strategy strategy,
                                                std::span<const Vehicle* const> seekers,
                                                std::span<const PathAssignment> prev,
                                                std::span<const double> draws,
                                                const LinkModel& model, std::uint64_t round) {
  std::vector<PathAssignment> out(seekers.size());
  for (std::size_t i = 0; i < seekers.size(); ++i) {
    const Vehicle& v = *seekers[i];
    out[i] = assign_one(strategy, v, prev[v.id], draws.empty() ? 0.0 : draws[i], model, round);
  }
  return out;
}

std::vector<PathAssignment> assign_paths_parallel(Strategy strategy,
                                                  std::span<const Vehicle* const> seekers,
                                                  std::span<const PathAssignment> prev,
                                                  std::span<const double> draws,
                                                  const LinkModel& model, std::uint64_t round) {
  std::vector<PathAssignment> out(seekers.size());
  const auto n = static_cast<std::ptrdiff_t>(seekers.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const Vehicle& v = *seekers[i];
    out[i] = assign_one(strategy, v, prev[v.id], draws.empty() ? 0.0 : draws[i], model, round);
  }
  return out;
}

}  // namespace mapsel::kernels
