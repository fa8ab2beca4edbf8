#include "mapsel/radio.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mapsel {

double received_power(double tx_power, double distance, double path_loss_exp) {
  return tx_power * std::pow(std::max(distance, kReferenceDistance), -path_loss_exp);
}

double compute_sinr(double tx_power, double distance, std::span<const double> interferer_distances,
                    const SimConfig& cfg) {
  if (distance < 0) throw std::invalid_argument("compute_sinr: negative distance");
  double interference = 0.0;
  for (double d : interferer_distances) {
    if (d < 0) throw std::invalid_argument("compute_sinr: negative interferer distance");
    interference += received_power(tx_power, d, cfg.path_loss_exp);
  }
  return received_power(tx_power, distance, cfg.path_loss_exp) / (cfg.noise_power + interference);
}

double link_bandwidth(double sinr, int attached_count, const SimConfig& cfg) {
  if (attached_count < 1) throw std::invalid_argument("link_bandwidth: attached_count < 1");
  return cfg.b_cap / attached_count * std::log2(1.0 + sinr);
}

DelayBreakdown path_delay(double distance, double sinr, const SimConfig& cfg) {
  if (!(sinr > 0)) throw std::invalid_argument("path_delay: sinr must be > 0");
  if (distance < 0) throw std::invalid_argument("path_delay: negative distance");
  DelayBreakdown out;
  out.alpha_trans = cfg.a0 * (1.0 + distance / cfg.d_c);
  out.alpha_sinr = cfg.b0 * std::max(1.0, cfg.sinr_threshold / sinr);
  out.trans_delay = out.alpha_trans * distance;
  out.total_delay = out.trans_delay + out.alpha_sinr / sinr;
  return out;
}

}  // namespace mapsel
