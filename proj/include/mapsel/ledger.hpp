#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mapsel/types.hpp"

namespace mapsel {

using Digest = std::array<std::uint8_t, 32>;

Digest sha256(std::span<const std::uint8_t> bytes);
Digest sha256(std::string_view bytes);

std::string to_hex(std::span<const std::uint8_t> bytes);
Digest digest_from_hex(std::string_view hex);

struct SelectionEvent {
  std::uint64_t round = 0;
  std::vector<VehicleId> elected_maps;
  std::vector<VehicleId> excluded_sybils;
  Digest input_digest{};

  // UTF-8 JSON, keys sorted, no insignificant whitespace.
  std::string canonical_json() const;
  static SelectionEvent from_json(std::string_view json);

  bool operator==(const SelectionEvent&) const = default;
};

class LedgerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Block {
  std::uint64_t index = 0;
  std::uint64_t round = 0;
  std::string payload;  // canonical SelectionEvent JSON
  Digest prev_hash{};
  Digest hash{};

  // LE64 index | LE64 round | BE32 payload length | payload | prev_hash
  std::vector<std::uint8_t> canonical_bytes() const;
  Digest compute_hash() const;
  SelectionEvent event() const { return SelectionEvent::from_json(payload); }

  // Inverse of canonical_bytes(); returns false when the framing is inconsistent.
  static bool parse_canonical(std::span<const std::uint8_t> bytes, Block& out);
};

class Ledger {
 public:
  // Appends one block. Rounds must strictly increase along the chain.
  const Block& append(const SelectionEvent& event);

  const std::vector<Block>& blocks() const { return blocks_; }
  std::vector<Block>& mutable_blocks() { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  bool empty() const { return blocks_.empty(); }
  // All-zero digest for an empty ledger.
  Digest head_hash() const;

  // JSON array of blocks, hashes in lowercase hex.
  std::string to_json(int indent = 2) const;
  static Ledger from_json(std::string_view json);

 private:
  std::vector<Block> blocks_;
};

bool verify_chain(std::span<const Block> blocks);
inline bool verify_chain(const Ledger& ledger) { return verify_chain(ledger.blocks()); }

}  // namespace mapsel
