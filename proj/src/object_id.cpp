#include "proofgraph/object_id.hpp"

#include <openssl/evp.h>

#include "proofgraph/errors.hpp"

namespace proofgraph {

std::array<std::uint8_t, ObjectId::kSize> sha256(
    std::span<const std::uint8_t> bytes) {
  std::array<std::uint8_t, ObjectId::kSize> out{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), out.data(), &len, EVP_sha256(),
                 nullptr) != 1 ||
      len != ObjectId::kSize) {
    throw Error(ErrorCode::StorageError, "SHA-256 digest failed");
  }
  return out;
}

ObjectId ObjectId::of(std::span<const std::uint8_t> bytes) {
  return ObjectId(sha256(bytes));
}

namespace {
int hex_nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}
}  // namespace

ObjectId ObjectId::from_hex(std::string_view hex) {
  if (hex.size() != 2 * kSize) {
    throw Error(ErrorCode::ParseError,
                "object id must be 64 hex characters, got " +
                    std::to_string(hex.size()));
  }
  std::array<std::uint8_t, kSize> raw{};
  for (std::size_t i = 0; i < kSize; ++i) {
    int hi = hex_nibble(hex[2 * i]);
    int lo = hex_nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) {
      throw Error(ErrorCode::ParseError,
                  "object id contains a non-hex character");
    }
    raw[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return ObjectId(raw);
}

std::string ObjectId::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out(2 * kSize, '0');
  for (std::size_t i = 0; i < kSize; ++i) {
    out[2 * i] = digits[raw_[i] >> 4];
    out[2 * i + 1] = digits[raw_[i] & 0xf];
  }
  return out;
}

bool ObjectId::is_zero() const {
  for (auto b : raw_) {
    if (b != 0) return false;
  }
  return true;
}

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateNode: return "DuplicateNode";
    case ErrorCode::InvalidNode: return "InvalidNode";
    case ErrorCode::CycleError: return "CycleError";
    case ErrorCode::KindError: return "KindError";
    case ErrorCode::MissingNode: return "MissingNode";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::InvalidSubject: return "InvalidSubject";
    case ErrorCode::UnknownParent: return "UnknownParent";
    case ErrorCode::StorageError: return "StorageError";
    case ErrorCode::UnknownCommit: return "UnknownCommit";
    case ErrorCode::CorruptObject: return "CorruptObject";
    case ErrorCode::UnknownModel: return "UnknownModel";
    case ErrorCode::IncompleteRename: return "IncompleteRename";
    case ErrorCode::NameCollision: return "NameCollision";
    case ErrorCode::CatalogMismatch: return "CatalogMismatch";
    case ErrorCode::UnknownUpstream: return "UnknownUpstream";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::UpstreamViolation: return "UpstreamViolation";
    case ErrorCode::CorruptLog: return "CorruptLog";
    case ErrorCode::UnknownContribution: return "UnknownContribution";
    case ErrorCode::InvalidPipeline: return "InvalidPipeline";
    case ErrorCode::InvalidPayload: return "InvalidPayload";
    case ErrorCode::TransformError: return "TransformError";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "UnknownError";
}

}  // namespace proofgraph
