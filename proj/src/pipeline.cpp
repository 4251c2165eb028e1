#include "proofgraph/pipeline.hpp"

#include <charconv>
#include <cmath>

#include "proofgraph/errors.hpp"
#include "proofgraph/version_store.hpp"

namespace proofgraph {

namespace {

bool is_scalar(const nlohmann::json& v) {
  return v.is_number() || v.is_boolean() || v.is_string();
}

double numeric(const nlohmann::json& v) { return v.get<double>(); }

/// Parses a param value: bool literal, integer, decimal, else string.
nlohmann::json parse_field_value(const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  if (!text.empty()) {
    std::int64_t integer = 0;
    auto [iptr, ierr] = std::from_chars(text.data(), text.data() + text.size(),
                                        integer);
    if (ierr == std::errc() && iptr == text.data() + text.size()) {
      return integer;
    }
    double real = 0.0;
    auto [dptr, derr] =
        std::from_chars(text.data(), text.data() + text.size(), real);
    if (derr == std::errc() && dptr == text.data() + text.size() &&
        std::isfinite(real)) {
      return real;
    }
  }
  return text;
}

std::string param_or(const TransformSpec& t, const std::string& key,
                     const std::string& fallback) {
  auto it = t.params.find(key);
  return it == t.params.end() ? fallback : it->second;
}

std::string require_param(const TransformSpec& t, const std::string& key) {
  auto it = t.params.find(key);
  if (it == t.params.end()) {
    throw Error(ErrorCode::TransformError,
                "transform '" + t.name + "' needs param '" + key + "'");
  }
  return it->second;
}

}  // namespace

PayloadRecord parse_payload(const Bytes& bytes) {
  nlohmann::json parsed = nlohmann::json::parse(
      bytes.begin(), bytes.end(), nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded() || !parsed.is_object()) {
    throw Error(ErrorCode::InvalidPayload,
                "payload must be a JSON object of scalar fields");
  }
  for (const auto& [key, value] : parsed.items()) {
    if (!is_scalar(value)) {
      throw Error(ErrorCode::InvalidPayload,
                  "payload field '" + key + "' is not a scalar");
    }
  }
  return parsed;
}

Bytes payload_bytes(const PayloadRecord& record) {
  std::string text = record.dump();
  return Bytes(text.begin(), text.end());
}

const char* to_string(Comparator cmp) {
  switch (cmp) {
    case Comparator::Lt: return "lt";
    case Comparator::Le: return "le";
    case Comparator::Gt: return "gt";
    case Comparator::Ge: return "ge";
    case Comparator::Eq: return "eq";
    case Comparator::Ne: return "ne";
  }
  return "?";
}

Comparator comparator_from_string(const std::string& s) {
  if (s == "lt") return Comparator::Lt;
  if (s == "le") return Comparator::Le;
  if (s == "gt") return Comparator::Gt;
  if (s == "ge") return Comparator::Ge;
  if (s == "eq") return Comparator::Eq;
  if (s == "ne") return Comparator::Ne;
  throw Error(ErrorCode::ParseError, "unknown comparator '" + s + "'");
}

namespace {
bool compare(double lhs, Comparator cmp, double rhs) {
  switch (cmp) {
    case Comparator::Lt: return lhs < rhs;
    case Comparator::Le: return lhs <= rhs;
    case Comparator::Gt: return lhs > rhs;
    case Comparator::Ge: return lhs >= rhs;
    case Comparator::Eq: return lhs == rhs;
    case Comparator::Ne: return lhs != rhs;
  }
  return false;
}
}  // namespace

bool ControlPoint::passes(const PayloadRecord& output) const {
  switch (kind) {
    case Kind::AlwaysPass:
      return true;
    case Kind::NonEmpty:
      return !output.empty();
    case Kind::Threshold: {
      auto it = output.find(metric);
      if (it == output.end() || !it->is_number()) return false;
      return compare(numeric(*it), cmp, bound);
    }
  }
  return false;
}

std::string ControlPoint::render() const {
  switch (kind) {
    case Kind::AlwaysPass: return "always";
    case Kind::NonEmpty: return "nonempty";
    case Kind::Threshold: {
      nlohmann::json b = bound;
      return "threshold " + metric + " " + to_string(cmp) + " " + b.dump();
    }
  }
  return "?";
}

const char* to_string(Verdict::Outcome outcome) {
  switch (outcome) {
    case Verdict::Outcome::True: return "true";
    case Verdict::Outcome::False: return "false";
    case Verdict::Outcome::Halted: return "halted";
  }
  return "?";
}

bool known_transform(const std::string& name) {
  return name == "identity" || name == "set" || name == "fold" ||
         name == "classify";
}

PayloadRecord apply_transform(const TransformSpec& transform,
                              const PayloadRecord& input) {
  if (transform.name == "identity") {
    return input;
  }
  if (transform.name == "set") {
    PayloadRecord out = input;
    for (const auto& [key, value] : transform.params) {
      out[key] = parse_field_value(value);
    }
    return out;
  }
  if (transform.name == "fold") {
    std::string op = param_or(transform, "op", "sum");
    std::string into = param_or(transform, "into", "value");
    std::vector<double> values;
    for (const auto& [key, value] : input.items()) {
      if (value.is_number()) values.push_back(numeric(value));
    }
    PayloadRecord out = input;
    if (op == "count") {
      out[into] = static_cast<std::int64_t>(values.size());
      return out;
    }
    if (values.empty()) {
      throw Error(ErrorCode::TransformError,
                  "fold '" + op + "' over a record with no numeric fields");
    }
    double result = values.front();
    if (op == "sum") {
      result = 0;
      for (double v : values) result += v;
    } else if (op == "product") {
      result = 1;
      for (double v : values) result *= v;
    } else if (op == "min") {
      for (double v : values) result = std::min(result, v);
    } else if (op == "max") {
      for (double v : values) result = std::max(result, v);
    } else if (op == "mean") {
      result = 0;
      for (double v : values) result += v;
      result /= static_cast<double>(values.size());
    } else {
      throw Error(ErrorCode::TransformError, "unknown fold op '" + op + "'");
    }
    if (!std::isfinite(result)) {
      throw Error(ErrorCode::TransformError, "fold produced a non-finite value");
    }
    out[into] = result;
    return out;
  }
  if (transform.name == "classify") {
    std::string field = require_param(transform, "field");
    Comparator cmp = comparator_from_string(param_or(transform, "cmp", "ge"));
    std::string bound_text = require_param(transform, "bound");
    nlohmann::json bound = parse_field_value(bound_text);
    if (!bound.is_number()) {
      throw Error(ErrorCode::TransformError,
                  "classify bound '" + bound_text + "' is not numeric");
    }
    std::string into = param_or(transform, "into", "final");
    auto it = input.find(field);
    if (it == input.end() || !it->is_number()) {
      throw Error(ErrorCode::TransformError,
                  "classify field '" + field + "' is missing or not numeric");
    }
    PayloadRecord out = input;
    out[into] = compare(numeric(*it), cmp, numeric(bound));
    return out;
  }
  throw Error(ErrorCode::TransformError,
              "unknown transform '" + transform.name + "'");
}

ValidationReport validate_pipeline(const ProofPipeline& pipeline,
                                   const ObjectStore& store) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, std::string detail) {
    report.violations.push_back({kind, std::move(detail)});
  };

  if (pipeline.steps.empty()) {
    add(ViolationKind::EmptySteps, "pipeline " + pipeline.pipeline_id);
  }
  for (std::size_t i = 0; i < pipeline.steps.size(); ++i) {
    const Step& step = pipeline.steps[i];
    if (!known_transform(step.transform.name)) {
      add(ViolationKind::UnknownTransform,
          "step " + std::to_string(i) + ": " + step.transform.name);
    }
    if (step.validator.kind == ControlPoint::Kind::Threshold &&
        !std::isfinite(step.validator.bound)) {
      add(ViolationKind::InvalidControlPoint,
          "step " + std::to_string(i) + ": non-finite threshold bound");
    }
  }

  if (!store.contains(pipeline.commit_id)) {
    add(ViolationKind::MissingCommit, pipeline.commit_id.hex());
    return report;
  }
  Workspace workspace;
  try {
    workspace = checkout(store, pipeline.commit_id);
  } catch (const Error& e) {
    add(ViolationKind::MissingCommit, e.what());
    return report;
  }
  if (!workspace.has_model(pipeline.model_id)) {
    add(ViolationKind::MissingModel, pipeline.model_id);
    return report;
  }
  const ModelGraph& model = workspace.model(pipeline.model_id);

  bool nodes_ok = true;
  for (std::size_t i = 0; i < pipeline.steps.size(); ++i) {
    if (!model.nodes.contains(pipeline.steps[i].node_id)) {
      add(ViolationKind::MissingNode,
          "step " + std::to_string(i) + ": " + pipeline.steps[i].node_id);
      nodes_ok = false;
    }
  }
  if (!nodes_ok) return report;

  // Step order must be a linear extension of the model's upstream relation
  // restricted to the named nodes: a later step's node may never be
  // upstream of an earlier step's node.
  for (std::size_t i = 0; i < pipeline.steps.size(); ++i) {
    std::set<NodeId> ups = upstream_set(model, pipeline.steps[i].node_id);
    for (std::size_t j = i + 1; j < pipeline.steps.size(); ++j) {
      if (ups.contains(pipeline.steps[j].node_id)) {
        add(ViolationKind::OrderViolation,
            "step " + std::to_string(j) + " (" + pipeline.steps[j].node_id +
                ") is upstream of step " + std::to_string(i) + " (" +
                pipeline.steps[i].node_id + ")");
      }
    }
  }
  return report;
}

RunResult run(const ProofPipeline& pipeline, const Bytes& input,
              ObjectStore& store, ProvenanceLog& log,
              const std::string& author) {
  ValidationReport report = validate_pipeline(pipeline, store);
  if (!report.ok()) {
    throw Error(ErrorCode::InvalidPipeline,
                "pipeline '" + pipeline.pipeline_id + "' is invalid: " +
                    std::string(to_string(report.violations.front().kind)) +
                    " " + report.violations.front().detail);
  }
  Workspace workspace = checkout(store, pipeline.commit_id);

  PayloadRecord payload = parse_payload(input);
  RunResult result;
  std::optional<ObjectId> previous;

  for (std::size_t i = 0; i < pipeline.steps.size(); ++i) {
    const Step& step = pipeline.steps[i];
    try {
      payload = apply_transform(step.transform, payload);
    } catch (Error& e) {
      if (e.code() == ErrorCode::TransformError) throw e.with_step(i);
      throw;
    }

    // Every step leaks evidence through its hole, pass or fail.
    Bytes bytes = payload_bytes(payload);
    ObjectId digest = store.put(encode_blob(bytes));
    ContributionDraft draft;
    draft.author = author;
    draft.model_id = pipeline.model_id;
    draft.commit_id = pipeline.commit_id;
    draft.node_id = step.node_id;
    draft.payload_digest = digest;
    if (previous) draft.upstream.insert(*previous);
    ObjectId contribution = log.record(draft, workspace);
    result.evidence.push_back(contribution);
    previous = contribution;

    if (!step.validator.passes(payload)) {
      result.verdict.outcome = Verdict::Outcome::Halted;
      result.verdict.halted_at = i;
      return result;
    }
  }

  auto final_field = payload.find("final");
  if (final_field == payload.end() || !final_field->is_boolean()) {
    throw Error(ErrorCode::TransformError,
                "final step did not produce a boolean 'final' field")
        .with_step(pipeline.steps.size() - 1);
  }
  result.verdict.outcome = final_field->get<bool>() ? Verdict::Outcome::True
                                                    : Verdict::Outcome::False;
  return result;
}

}  // namespace proofgraph
