#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace proofgraph {

/// Node identifiers are shared by identity across models: two nodes with
/// equal NodeId are the same processor/endpoint.
using NodeId = std::string;

enum class NodeKind { Source, Processor, Sink };

const char* to_string(NodeKind kind);
NodeKind node_kind_from_string(const std::string& s);  // throws ParseError

struct Node {
  NodeId id;
  NodeKind kind = NodeKind::Processor;
  std::string label;
  std::map<std::string, std::string> params;  // opaque configuration
  std::map<std::string, std::string> facets;

  bool operator==(const Node&) const = default;
};

/// A financial model: a directed acyclic dataflow graph of processors and
/// endpoints, tagged with zero or more subjects of investigation. All
/// operations are value-semantic; inputs are never modified.
struct ModelGraph {
  std::string model_id;
  std::map<NodeId, Node> nodes;
  std::set<std::pair<NodeId, NodeId>> edges;  // (from, to)
  std::set<std::string> subjects;

  bool operator==(const ModelGraph&) const = default;
};

enum class ViolationKind {
  Cycle,
  DanglingEdge,
  SourceInbound,
  SinkOutbound,
  DuplicateFacetKey,
  EmptyFacetKey,
  EmptyLabel,
  EmptyNodeId,
  SelfEdge,
  // workspace validation
  CatalogMismatch,
  // pipeline validation
  EmptySteps,
  MissingCommit,
  MissingModel,
  MissingNode,
  OrderViolation,
  UnknownTransform,
  InvalidControlPoint,
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ModelGraph add_node(const ModelGraph& graph, Node node);
ModelGraph add_edge(const ModelGraph& graph, const NodeId& from,
                    const NodeId& to);
ModelGraph tag_subject(const ModelGraph& graph, const std::string& subject);

/// Transitive predecessors of `node`, excluding the node itself.
std::set<NodeId> upstream_set(const ModelGraph& graph, const NodeId& node);

/// Ids present in both models. All node kinds participate in sharing,
/// processors and endpoints alike.
std::set<NodeId> shared_processors(const ModelGraph& g1, const ModelGraph& g2);

ValidationReport validate(const ModelGraph& graph);

}  // namespace proofgraph
