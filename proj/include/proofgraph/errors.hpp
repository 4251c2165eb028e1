#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace proofgraph {

enum class ErrorCode {
  // model_graph
  DuplicateNode,
  InvalidNode,
  CycleError,
  KindError,
  MissingNode,
  DuplicateEdge,
  InvalidSubject,
  // version_store
  UnknownParent,
  StorageError,
  UnknownCommit,
  CorruptObject,
  UnknownModel,
  IncompleteRename,
  NameCollision,
  CatalogMismatch,
  // provenance
  UnknownUpstream,
  UnknownNode,
  UpstreamViolation,
  CorruptLog,
  UnknownContribution,
  // pipeline
  InvalidPipeline,
  InvalidPayload,
  TransformError,
  // input parsing
  ParseError,
};

const char* to_string(ErrorCode code);

/// Thrown by every operation whose spec lists a typed error. The CLI maps
/// codes onto exit classes (domain=1, corruption=3).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  ErrorCode code() const { return code_; }

  /// Step index for TransformError, absent otherwise.
  std::optional<std::size_t> step() const { return step_; }
  Error& with_step(std::size_t i) {
    step_ = i;
    return *this;
  }

  bool is_corruption() const {
    return code_ == ErrorCode::CorruptObject || code_ == ErrorCode::CorruptLog;
  }

 private:
  ErrorCode code_;
  std::optional<std::size_t> step_;
};

}  // namespace proofgraph
