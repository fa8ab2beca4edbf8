#include "mapsel/selection.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <unordered_set>

namespace mapsel {

CandidateTable selection_probabilities(std::span<const CandidateInput> eligible,
                                       double trust_threshold) {
  CandidateTable table;
  table.entries.reserve(eligible.size());
  double total = 0.0;
  for (const auto& c : eligible) {
    if (c.trust <= trust_threshold) {
      throw SelectionError("identity " + std::to_string(c.id) +
                           " has trust at or below the threshold");
    }
    if (c.load < 1) throw SelectionError("identity " + std::to_string(c.id) + " has load < 1");
    const double w = static_cast<double>(c.load) * c.trust;
    table.entries.push_back(Candidate{c.id, c.load, c.trust, w, 0.0});
    total += w;
  }
  for (auto& e : table.entries) e.probability = e.weight / total;
  return table;
}

std::vector<VehicleId> select_maps_excluding(const CandidateTable& table, std::size_t k,
                                             std::span<const VehicleId> exclude, Rng& rng) {
  std::vector<const Candidate*> pool;
  pool.reserve(table.size());
  for (const auto& e : table.entries) {
    if (std::find(exclude.begin(), exclude.end(), e.id) == exclude.end()) pool.push_back(&e);
  }
  if (k > pool.size()) {
    throw SelectionError("select_maps: k = " + std::to_string(k) + " exceeds " +
                         std::to_string(pool.size()) + " candidates");
  }

  std::vector<VehicleId> chosen;
  chosen.reserve(k);
  double remaining = 0.0;
  for (const auto* c : pool) remaining += c->weight;

  for (std::size_t draw = 0; draw < k; ++draw) {
    const double target = rng.uniform01() * remaining;
    std::size_t pick = pool.size() - 1;
    double acc = 0.0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      acc += pool[i]->weight;
      if (target < acc) {
        pick = i;
        break;
      }
    }
    chosen.push_back(pool[pick]->id);
    remaining -= pool[pick]->weight;
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    // Subtraction drift can leave a non-positive remainder with candidates left.
    if (remaining <= 0.0) {
      remaining = 0.0;
      for (const auto* c : pool) remaining += c->weight;
    }
  }
  return chosen;
}

std::vector<VehicleId> select_maps(const CandidateTable& table, std::size_t k, Rng& rng) {
  return select_maps_excluding(table, k, {}, rng);
}

std::size_t map_count(std::size_t eligible, double map_fraction) {
  if (eligible == 0) return 0;
  const auto k = static_cast<std::size_t>(std::llround(map_fraction * static_cast<double>(eligible)));
  return std::clamp<std::size_t>(k, 1, eligible);
}

std::vector<VehicleId> elect_with_incumbency(const CandidateTable& table, std::size_t k,
                                             std::span<const VehicleId> incumbents, Rng& rng) {
  std::unordered_set<VehicleId> eligible;
  eligible.reserve(table.size());
  for (const auto& c : table.entries) eligible.insert(c.id);
  std::vector<VehicleId> elected;
  for (VehicleId id : incumbents) {
    if (elected.size() >= k) break;
    if (eligible.contains(id)) elected.push_back(id);
  }
  const auto fresh = select_maps_excluding(table, k - elected.size(), elected, rng);
  elected.insert(elected.end(), fresh.begin(), fresh.end());
  return elected;
}

Digest table_digest(const CandidateTable& table) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(table.size() * 24);
  auto put = [&bytes](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) bytes.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  };
  for (const auto& e : table.entries) {
    put(e.id);
    put(static_cast<std::uint64_t>(e.load));
    put(std::bit_cast<std::uint64_t>(e.trust));
  }
  return sha256(bytes);
}

}  // namespace mapsel
