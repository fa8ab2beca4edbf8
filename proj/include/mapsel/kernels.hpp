#pragma once

#include <span>
#include <vector>

#include "mapsel/config.hpp"
#include "mapsel/pathing.hpp"
#include "mapsel/types.hpp"

// Per-vehicle round kernels. Each comes as a serial reference and an OpenMP
// version; both produce identical output for any thread count because no
// kernel consumes randomness and every output slot is written by one iteration.
namespace mapsel::kernels {

enum class Execution { Serial, Parallel };

// Path assignment for every seeker. `prev` is indexed by vehicle id; `draws`
// holds one uniform per seeker (read by independent-random only).
std::vector<PathAssignment> assign_paths_serial(Strategy strategy,
                                                std::span<const Vehicle* const> seekers,
                                                std::span<const PathAssignment> prev,
                                                std::span<const double> draws,
                                                const LinkModel& model, std::uint64_t round);
std::vector<PathAssignment> assign_paths_parallel(Strategy strategy,
                                                  std::span<const Vehicle* const> seekers,
                                                  std::span<const PathAssignment> prev,
                                                  std::span<const double> draws,
                                                  const LinkModel& model, std::uint64_t round);

inline std::vector<PathAssignment> assign_paths(Execution ex, Strategy strategy,
                                                std::span<const Vehicle* const> seekers,
                                                std::span<const PathAssignment> prev,
                                                std::span<const double> draws,
                                                const LinkModel& model, std::uint64_t round) {
  return ex == Execution::Parallel
             ? assign_paths_parallel(strategy, seekers, prev, draws, model, round)
             : assign_paths_serial(strategy, seekers, prev, draws, model, round);
}

}  // namespace mapsel::kernels
