#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "mapsel/ledger.hpp"
#include "mapsel/rng.hpp"
#include "mapsel/types.hpp"

namespace mapsel {

struct CandidateInput {
  VehicleId id = 0;
  int load = 1;
  double trust = 0.0;
};

struct Candidate {
  VehicleId id = 0;
  int load = 1;
  double trust = 0.0;
  double weight = 0.0;  // load * trust
  double probability = 0.0;
};

struct CandidateTable {
  std::vector<Candidate> entries;

  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }
};

class SelectionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// p_i = L_i T_i / sum_j L_j T_j. Every trust must exceed the threshold and every
// load must be >= 1; violations mean a Sybil slipped past the filter.
CandidateTable selection_probabilities(std::span<const CandidateInput> eligible,
                                       double trust_threshold);

// k draws without replacement, each proportional to the remaining weights.
std::vector<VehicleId> select_maps(const CandidateTable& table, std::size_t k, Rng& rng);

// Same sampler restricted to entries not in `exclude`.
std::vector<VehicleId> select_maps_excluding(const CandidateTable& table, std::size_t k,
                                             std::span<const VehicleId> exclude, Rng& rng);

// max(1, round(map_fraction * eligible)), capped at the eligible count.
std::size_t map_count(std::size_t eligible, double map_fraction);

// Keeps still-eligible incumbents (previous order, at most k), then samples the
// remaining slots from the other candidates.
std::vector<VehicleId> elect_with_incumbency(const CandidateTable& table, std::size_t k,
                                             std::span<const VehicleId> incumbents, Rng& rng);

// SHA-256 over the (id, load, trust) rows of the table, in table order:
// LE64 id | LE64 load | LE64 IEEE-754 bits of trust.
Digest table_digest(const CandidateTable& table);

}  // namespace mapsel
