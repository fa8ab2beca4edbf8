#include "mapsel/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace mapsel {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

double parse_double(std::string_view key, std::string_view text) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError("invalid number for '" + std::string(key) + "': '" + std::string(text) + "'");
  }
  return v;
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view text) {
  Int v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("invalid integer for '" + std::string(key) + "': '" + std::string(text) + "'");
  }
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("invalid boolean for '" + std::string(key) + "': '" + std::string(text) + "'");
}

struct Field {
  std::function<void(SimConfig&, std::string_view key, std::string_view)> set;
  std::function<std::string(const SimConfig&)> get;
};

Field real(double SimConfig::*m) {
  return {[m](SimConfig& c, std::string_view k, std::string_view v) { c.*m = parse_double(k, v); },
          [m](const SimConfig& c) { return format_double(c.*m); }};
}

Field integer(int SimConfig::*m) {
  return {[m](SimConfig& c, std::string_view k, std::string_view v) { c.*m = parse_int<int>(k, v); },
          [m](const SimConfig& c) { return std::to_string(c.*m); }};
}

// Declaration order is the canonical key order.
const std::vector<std::pair<std::string, Field>>& fields() {
  static const std::vector<std::pair<std::string, Field>> table = {
      {"road_length", real(&SimConfig::road_length)},
      {"vehicle_density", real(&SimConfig::vehicle_density)},
      {"speed_min", real(&SimConfig::speed_min)},
      {"speed_max", real(&SimConfig::speed_max)},
      {"dt", real(&SimConfig::dt)},
      {"total_time", real(&SimConfig::total_time)},
      {"tx_power", real(&SimConfig::tx_power)},
      {"path_loss_exp", real(&SimConfig::path_loss_exp)},
      {"noise_power", real(&SimConfig::noise_power)},
      {"sinr_threshold", real(&SimConfig::sinr_threshold)},
      {"bandwidth_min", real(&SimConfig::bandwidth_min)},
      {"delay_threshold", real(&SimConfig::delay_threshold)},
      {"max_paths", integer(&SimConfig::max_paths)},
      {"a0", real(&SimConfig::a0)},
      {"d_c", real(&SimConfig::d_c)},
      {"b0", real(&SimConfig::b0)},
      {"b_cap", real(&SimConfig::b_cap)},
      {"load_max", integer(&SimConfig::load_max)},
      {"trust_threshold", real(&SimConfig::trust_threshold)},
      {"initial_trust", real(&SimConfig::initial_trust)},
      {"handover_penalty", real(&SimConfig::handover_penalty)},
      {"low_sinr_penalty", real(&SimConfig::low_sinr_penalty)},
      {"stable_reward", real(&SimConfig::stable_reward)},
      {"map_fraction", real(&SimConfig::map_fraction)},
      {"incumbency",
       {[](SimConfig& c, std::string_view k, std::string_view v) { c.incumbency = parse_bool(k, v); },
        [](const SimConfig& c) { return std::string(c.incumbency ? "true" : "false"); }}},
      {"sybil_fraction", real(&SimConfig::sybil_fraction)},
      {"sybil_clones", integer(&SimConfig::sybil_clones)},
      {"sybil_handover_prob", real(&SimConfig::sybil_handover_prob)},
      {"sybil_low_sinr_prob", real(&SimConfig::sybil_low_sinr_prob)},
      {"rng_seed",
       {[](SimConfig& c, std::string_view k, std::string_view v) {
          c.rng_seed = parse_int<std::uint64_t>(k, v);
        },
        [](const SimConfig& c) { return std::to_string(c.rng_seed); }}},
      {"strategy",
       {[](SimConfig& c, std::string_view, std::string_view v) { c.strategy = parse_strategy(v); },
        [](const SimConfig& c) { return std::string(to_string(c.strategy)); }}},
  };
  return table;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("invalid config: " + what);
}

}  // namespace

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::BlockchainMultipath: return "blockchain-multipath";
    case Strategy::IndependentRandom: return "independent-random";
    case Strategy::SequenceBased: return "sequence-based";
    case Strategy::DistanceBased: return "distance-based";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view name) {
  for (Strategy s : {Strategy::BlockchainMultipath, Strategy::IndependentRandom,
                     Strategy::SequenceBased, Strategy::DistanceBased}) {
    if (to_string(s) == name) return s;
  }
  throw ConfigError("unknown strategy '" + std::string(name) + "'");
}

void SimConfig::validate() const {
  require(road_length > 0, "road_length must be > 0");
  require(vehicle_density >= 0, "vehicle_density must be >= 0");
  require(speed_min >= 0, "speed_min must be >= 0");
  require(speed_min <= speed_max, "speed_min must be <= speed_max");
  require(dt > 0, "dt must be > 0");
  require(total_time >= 0, "total_time must be >= 0");
  require(total_time == 0 || total_time >= dt, "total_time must be >= dt (or 0 for an empty run)");
  require(tx_power > 0, "tx_power must be > 0");
  require(path_loss_exp > 0, "path_loss_exp must be > 0");
  require(noise_power > 0, "noise_power must be > 0");
  require(sinr_threshold > 0, "sinr_threshold must be > 0");
  require(bandwidth_min > 0, "bandwidth_min must be > 0");
  require(delay_threshold > 0, "delay_threshold must be > 0");
  require(max_paths >= 1, "max_paths must be >= 1");
  require(a0 > 0, "a0 must be > 0");
  require(d_c > 0, "d_c must be > 0");
  require(b0 > 0, "b0 must be > 0");
  require(b_cap > 0, "b_cap must be > 0");
  require(load_max >= 1, "load_max must be >= 1");
  require(trust_threshold > 0, "trust_threshold must be > 0");
  require(initial_trust >= 0 && initial_trust <= 100, "initial_trust must lie in [0, 100]");
  require(handover_penalty >= 0, "handover_penalty must be >= 0");
  require(low_sinr_penalty >= 0, "low_sinr_penalty must be >= 0");
  require(stable_reward >= 0, "stable_reward must be >= 0");
  require(map_fraction > 0 && map_fraction < 1, "map_fraction must lie in (0, 1)");
  require(sybil_fraction >= 0 && sybil_fraction < 1, "sybil_fraction must lie in [0, 1)");
  require(sybil_clones >= 0, "sybil_clones must be >= 0");
  require(sybil_handover_prob >= 0 && sybil_handover_prob <= 1,
          "sybil_handover_prob must lie in [0, 1]");
  require(sybil_low_sinr_prob >= 0 && sybil_low_sinr_prob <= 1,
          "sybil_low_sinr_prob must lie in [0, 1]");
}

std::size_t SimConfig::round_count() const {
  if (total_time <= 0) return 0;
  return static_cast<std::size_t>(std::floor(total_time / dt + 1e-9));
}

std::vector<std::pair<std::string, std::string>> config_entries(const SimConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [key, field] : fields()) out.emplace_back(key, field.get(cfg));
  return out;
}

void apply_setting(SimConfig& cfg, std::string_view key, std::string_view value) {
  for (const auto& [name, field] : fields()) {
    if (name == key) {
      field.set(cfg, key, trim(value));
      return;
    }
  }
  throw ConfigError("unknown config key '" + std::string(key) + "'");
}

SimConfig parse_config_text(std::string_view text, SimConfig base) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
    }
    try {
      apply_setting(base, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return base;
}

SimConfig load_config(const std::string& path,
                      const std::vector<std::pair<std::string, std::string>>& overrides) {
  SimConfig cfg;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    cfg = parse_config_text(ss.str());
  }
  for (const auto& [key, value] : overrides) apply_setting(cfg, key, value);
  cfg.validate();
  return cfg;
}

}  // namespace mapsel
