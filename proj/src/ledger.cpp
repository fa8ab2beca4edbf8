#include "mapsel/ledger.hpp"

#include <openssl/evp.h>

#include <nlohmann/json.hpp>

namespace mapsel {

using nlohmann::json;

Digest sha256(std::span<const std::uint8_t> bytes) {
  Digest out{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != out.size()) {
    throw std::runtime_error("sha256: digest computation failed");
  }
  return out;
}

Digest sha256(std::string_view bytes) {
  return sha256(std::span(reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size()));
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

Digest digest_from_hex(std::string_view hex) {
  if (hex.size() != 64) throw LedgerError("digest must be 64 hex characters");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw LedgerError("digest must be lowercase hex");
  };
  Digest d{};
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  }
  return d;
}

std::string SelectionEvent::canonical_json() const {
  // nlohmann::json objects are std::map backed, so keys serialize sorted.
  json j = {{"round", round},
            {"elected_maps", elected_maps},
            {"excluded_sybils", excluded_sybils},
            {"input_digest", to_hex(input_digest)}};
  return j.dump();
}

SelectionEvent SelectionEvent::from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    SelectionEvent e;
    e.round = j.at("round").get<std::uint64_t>();
    e.elected_maps = j.at("elected_maps").get<std::vector<VehicleId>>();
    e.excluded_sybils = j.at("excluded_sybils").get<std::vector<VehicleId>>();
    e.input_digest = digest_from_hex(j.at("input_digest").get<std::string>());
    return e;
  } catch (const json::exception& ex) {
    throw LedgerError(std::string("malformed selection event: ") + ex.what());
  }
}

std::vector<std::uint8_t> Block::canonical_bytes() const {
  std::vector<std::uint8_t> out;
  out.reserve(8 + 8 + 4 + payload.size() + prev_hash.size());
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(index >> (8 * i)));
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(round >> (8 * i)));
  const auto len = static_cast<std::uint32_t>(payload.size());
  for (int i = 3; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(len >> (8 * i)));
  out.insert(out.end(), payload.begin(), payload.end());
  out.insert(out.end(), prev_hash.begin(), prev_hash.end());
  return out;
}

Digest Block::compute_hash() const { return sha256(canonical_bytes()); }

bool Block::parse_canonical(std::span<const std::uint8_t> bytes, Block& out) {
  constexpr std::size_t kHeader = 8 + 8 + 4;
  if (bytes.size() < kHeader + 32) return false;
  std::uint64_t index = 0, round = 0;
  std::uint32_t len = 0;
  for (int i = 0; i < 8; ++i) index |= std::uint64_t{bytes[i]} << (8 * i);
  for (int i = 0; i < 8; ++i) round |= std::uint64_t{bytes[8 + i]} << (8 * i);
  for (int i = 0; i < 4; ++i) len = len << 8 | bytes[16 + i];
  if (bytes.size() != kHeader + len + 32) return false;
  out.index = index;
  out.round = round;
  out.payload.assign(reinterpret_cast<const char*>(bytes.data() + kHeader), len);
  std::copy(bytes.end() - 32, bytes.end(), out.prev_hash.begin());
  return true;
}

const Block& Ledger::append(const SelectionEvent& event) {
  if (!blocks_.empty() && event.round <= blocks_.back().round) {
    throw LedgerError("append: round " + std::to_string(event.round) +
                      " does not follow round " + std::to_string(blocks_.back().round));
  }
  Block b;
  b.index = blocks_.size();
  b.round = event.round;
  b.payload = event.canonical_json();
  b.prev_hash = head_hash();
  b.hash = b.compute_hash();
  blocks_.push_back(std::move(b));
  return blocks_.back();
}

Digest Ledger::head_hash() const { return blocks_.empty() ? Digest{} : blocks_.back().hash; }

std::string Ledger::to_json(int indent) const {
  json arr = json::array();
  for (const auto& b : blocks_) {
    arr.push_back({{"index", b.index},
                   {"round", b.round},
                   {"payload", json::parse(b.payload)},
                   {"prev_hash", to_hex(b.prev_hash)},
                   {"hash", to_hex(b.hash)}});
  }
  return arr.dump(indent) + "\n";
}

Ledger Ledger::from_json(std::string_view text) {
  Ledger ledger;
  try {
    const json arr = json::parse(text);
    if (!arr.is_array()) throw LedgerError("ledger export must be a JSON array");
    for (const auto& j : arr) {
      Block b;
      b.index = j.at("index").get<std::uint64_t>();
      b.round = j.at("round").get<std::uint64_t>();
      b.payload = j.at("payload").dump();
      b.prev_hash = digest_from_hex(j.at("prev_hash").get<std::string>());
      b.hash = digest_from_hex(j.at("hash").get<std::string>());
      ledger.blocks_.push_back(std::move(b));
    }
  } catch (const json::exception& ex) {
    throw LedgerError(std::string("malformed ledger: ") + ex.what());
  }
  return ledger;
}

bool verify_chain(std::span<const Block> blocks) {
  Digest expected_prev{};
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Block& b = blocks[i];
    if (b.index != i) return false;
    if (i > 0 && b.round <= blocks[i - 1].round) return false;
    if (b.prev_hash != expected_prev) return false;
    if (b.compute_hash() != b.hash) return false;
    expected_prev = b.hash;
  }
  return true;
}

}  // namespace mapsel
