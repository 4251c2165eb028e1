#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace proofgraph {

using Bytes = std::vector<std::uint8_t>;

/// Content address: SHA-256 digest, rendered as 64 lowercase hex characters.
class ObjectId {
 public:
  static constexpr std::size_t kSize = 32;

  ObjectId() = default;  // all-zero id, used as the chain seed
  explicit ObjectId(const std::array<std::uint8_t, kSize>& raw) : raw_(raw) {}

  /// Hash of a canonical byte encoding.
  static ObjectId of(std::span<const std::uint8_t> bytes);
  /// Parses 64 lowercase hex characters; throws ParseError otherwise.
  static ObjectId from_hex(std::string_view hex);

  std::string hex() const;
  const std::array<std::uint8_t, kSize>& raw() const { return raw_; }
  bool is_zero() const;

  auto operator<=>(const ObjectId&) const = default;

 private:
  std::array<std::uint8_t, kSize> raw_{};
};

/// SHA-256 over arbitrary bytes (OpenSSL-backed).
std::array<std::uint8_t, ObjectId::kSize> sha256(
    std::span<const std::uint8_t> bytes);

}  // namespace proofgraph
