#pragma once

#include <span>

#include "mapsel/config.hpp"
#include "mapsel/types.hpp"

namespace mapsel {

// Reference distance below which path loss is not extrapolated.
inline constexpr double kReferenceDistance = 1.0;

struct LinkStats {
  VehicleId vehicle = 0;
  VehicleId map = 0;
  double distance = 0.0;     // m
  double sinr = 0.0;         // linear ratio
  double bandwidth = 0.0;    // Mbps
  double trans_delay = 0.0;  // s
  double total_delay = 0.0;  // s
  double alpha_trans = 0.0;  // s/m
  double alpha_sinr = 0.0;   // s
};

double received_power(double tx_power, double distance, double path_loss_exp);

double compute_sinr(double tx_power, double distance, std::span<const double> interferer_distances,
                    const SimConfig& cfg);

double link_bandwidth(double sinr, int attached_count, const SimConfig& cfg);

struct DelayBreakdown {
  double alpha_trans = 0.0;
  double alpha_sinr = 0.0;
  double trans_delay = 0.0;
  double total_delay = 0.0;
};

// D_total = alpha_trans(d) * d + alpha_sinr(eta) / eta. Throws on sinr <= 0.
DelayBreakdown path_delay(double distance, double sinr, const SimConfig& cfg);

// Lower bound of the delay of any link at this distance (the SINR term is positive).
inline double transmission_delay(double distance, const SimConfig& cfg) {
  return cfg.a0 * (1.0 + distance / cfg.d_c) * distance;
}

// Path admission test: delay below threshold and bandwidth at least the floor.
inline bool meets_thresholds(const LinkStats& s, const SimConfig& cfg) {
  return s.bandwidth >= cfg.bandwidth_min && s.total_delay < cfg.delay_threshold;
}

}  // namespace mapsel
