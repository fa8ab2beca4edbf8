#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mapsel {

enum class Strategy {
  BlockchainMultipath,
  IndependentRandom,
  SequenceBased,
  DistanceBased,
};

std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view name);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All simulation knobs. Units: meters, seconds, watts, Mbps; speeds in km/h
// as configured (converted to m/s by the fleet generator).
struct SimConfig {
  double road_length = 10000.0;
  double vehicle_density = 0.02;
  double speed_min = 50.0;
  double speed_max = 80.0;
  double dt = 10.0;
  double total_time = 1000.0;

  double tx_power = 2.0;
  double path_loss_exp = 4.0;
  double noise_power = 1e-13;
  double sinr_threshold = 10.0;
  double bandwidth_min = 1.0;
  double delay_threshold = 18.0;
  int max_paths = 2;

  // Delay model: alpha_trans(d) = a0 * (1 + d / d_c), alpha_sinr(eta) = b0 * max(1, eta_th / eta).
  double a0 = 0.05;
  double d_c = 500.0;
  double b0 = 10.0;
  double b_cap = 2.0;
  int load_max = 4;

  double trust_threshold = 50.0;
  double initial_trust = 100.0;
  double handover_penalty = 8.0;
  double low_sinr_penalty = 2.0;
  double stable_reward = 5.0;

  double map_fraction = 0.10;
  bool incumbency = true;

  double sybil_fraction = 0.10;
  int sybil_clones = 3;
  double sybil_handover_prob = 0.6;
  double sybil_low_sinr_prob = 0.8;

  std::uint64_t rng_seed = 1;
  Strategy strategy = Strategy::BlockchainMultipath;

  // Throws ConfigError naming the first violated constraint.
  void validate() const;

  std::size_t round_count() const;
};

// Ordered (key, value) view of every knob, formatted so that parsing it back
// reproduces the config exactly.
std::vector<std::pair<std::string, std::string>> config_entries(const SimConfig& cfg);

// Sets one knob by name. Unknown keys and unparseable values raise ConfigError.
void apply_setting(SimConfig& cfg, std::string_view key, std::string_view value);

// Parses flat `key = value` text (`#` starts a comment). Does not validate.
SimConfig parse_config_text(std::string_view text, SimConfig base = {});

// Reads a config file, applies overrides in order, then validates.
SimConfig load_config(const std::string& path,
                      const std::vector<std::pair<std::string, std::string>>& overrides = {});

}  // namespace mapsel
