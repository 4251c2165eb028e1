#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "proofgraph/object_store.hpp"
#include "proofgraph/provenance.hpp"

namespace proofgraph {

/// Step payload: a flat record of named numeric/boolean/string fields,
/// serialized as canonical JSON with sorted keys.
using PayloadRecord = nlohmann::json;

PayloadRecord parse_payload(const Bytes& bytes);  // InvalidPayload on error
Bytes payload_bytes(const PayloadRecord& record);

enum class Comparator { Lt, Le, Gt, Ge, Eq, Ne };

const char* to_string(Comparator cmp);
Comparator comparator_from_string(const std::string& s);  // ParseError

struct ControlPoint {
  enum class Kind { Threshold, NonEmpty, AlwaysPass };

  Kind kind = Kind::AlwaysPass;
  std::string metric;  // Threshold only
  Comparator cmp = Comparator::Gt;
  double bound = 0.0;  // finite
  std::string description;

  /// True when the step output satisfies the control point. A missing or
  /// non-numeric metric field fails the check rather than erroring: the
  /// validator saw evidence it cannot accept.
  bool passes(const PayloadRecord& output) const;

  std::string render() const;
};

struct TransformSpec {
  std::string name;
  std::map<std::string, std::string> params;
};

struct Step {
  NodeId node_id;
  TransformSpec transform;
  ControlPoint validator;
};

struct ProofPipeline {
  std::string pipeline_id;
  std::vector<Step> steps;  // length >= 1
  std::string model_id;
  ObjectId commit_id;
};

struct Verdict {
  enum class Outcome { True, False, Halted };

  Outcome outcome = Outcome::False;
  std::optional<std::size_t> halted_at;  // zero-based failed control point
};

const char* to_string(Verdict::Outcome outcome);

struct RunResult {
  Verdict verdict;
  std::vector<ObjectId> evidence;  // one contribution per executed step
};

/// Deterministic toy transforms: identity, set, fold, classify. Throws
/// TransformError (with the step index attached by the runner) on
/// missing/unsuitable fields.
PayloadRecord apply_transform(const TransformSpec& transform,
                              const PayloadRecord& input);

bool known_transform(const std::string& name);

ValidationReport validate_pipeline(const ProofPipeline& pipeline,
                                   const ObjectStore& store);

/// Executes the steps in order. After each step the output payload is
/// stored as a blob and recorded as a contribution whose upstream is the
/// previous step's contribution, then the control point evaluates it; the
/// first failure halts with Halted(i), evidence up to and including step i
/// kept. When every control point passes, the final step's boolean "final"
/// field decides True/False.
RunResult run(const ProofPipeline& pipeline, const Bytes& input,
              ObjectStore& store, ProvenanceLog& log,
              const std::string& author);

}  // namespace proofgraph
