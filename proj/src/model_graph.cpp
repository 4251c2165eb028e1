#include "proofgraph/model_graph.hpp"

#include <deque>
#include <functional>

#include "proofgraph/errors.hpp"

namespace proofgraph {

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Source: return "source";
    case NodeKind::Processor: return "processor";
    case NodeKind::Sink: return "sink";
  }
  return "?";
}

NodeKind node_kind_from_string(const std::string& s) {
  if (s == "source") return NodeKind::Source;
  if (s == "processor") return NodeKind::Processor;
  if (s == "sink") return NodeKind::Sink;
  throw Error(ErrorCode::ParseError, "unknown node kind '" + s + "'");
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Cycle: return "Cycle";
    case ViolationKind::DanglingEdge: return "DanglingEdge";
    case ViolationKind::SourceInbound: return "SourceInbound";
    case ViolationKind::SinkOutbound: return "SinkOutbound";
    case ViolationKind::DuplicateFacetKey: return "DuplicateFacetKey";
    case ViolationKind::EmptyFacetKey: return "EmptyFacetKey";
    case ViolationKind::EmptyLabel: return "EmptyLabel";
    case ViolationKind::EmptyNodeId: return "EmptyNodeId";
    case ViolationKind::SelfEdge: return "SelfEdge";
    case ViolationKind::CatalogMismatch: return "CatalogMismatch";
    case ViolationKind::EmptySteps: return "EmptySteps";
    case ViolationKind::MissingCommit: return "MissingCommit";
    case ViolationKind::MissingModel: return "MissingModel";
    case ViolationKind::MissingNode: return "MissingNode";
    case ViolationKind::OrderViolation: return "OrderViolation";
    case ViolationKind::UnknownTransform: return "UnknownTransform";
    case ViolationKind::InvalidControlPoint: return "InvalidControlPoint";
  }
  return "?";
}

ModelGraph add_node(const ModelGraph& graph, Node node) {
  if (node.id.empty()) {
    throw Error(ErrorCode::InvalidNode, "node id must be nonempty");
  }
  if (node.label.empty()) {
    throw Error(ErrorCode::InvalidNode,
                "node '" + node.id + "' has an empty label");
  }
  for (const auto& [key, value] : node.facets) {
    if (key.empty()) {
      throw Error(ErrorCode::InvalidNode,
                  "node '" + node.id + "' has an empty facet key");
    }
  }
  if (graph.nodes.contains(node.id)) {
    throw Error(ErrorCode::DuplicateNode,
                "node '" + node.id + "' already exists");
  }
  ModelGraph out = graph;
  out.nodes.emplace(node.id, std::move(node));
  return out;
}

namespace {

/// True iff `target` is reachable from `start` along directed edges.
bool reachable(const ModelGraph& graph, const NodeId& start,
               const NodeId& target) {
  std::set<NodeId> seen{start};
  std::deque<NodeId> queue{start};
  while (!queue.empty()) {
    NodeId current = queue.front();
    queue.pop_front();
    if (current == target) return true;
    auto it = graph.edges.lower_bound({current, std::string()});
    for (; it != graph.edges.end() && it->first == current; ++it) {
      if (seen.insert(it->second).second) queue.push_back(it->second);
    }
  }
  return false;
}

}  // namespace

ModelGraph add_edge(const ModelGraph& graph, const NodeId& from,
                    const NodeId& to) {
  auto from_it = graph.nodes.find(from);
  if (from_it == graph.nodes.end()) {
    throw Error(ErrorCode::MissingNode, "edge source '" + from + "' not found");
  }
  auto to_it = graph.nodes.find(to);
  if (to_it == graph.nodes.end()) {
    throw Error(ErrorCode::MissingNode, "edge target '" + to + "' not found");
  }
  if (to_it->second.kind == NodeKind::Source) {
    throw Error(ErrorCode::KindError,
                "'" + to + "' is a source and cannot take an inbound edge");
  }
  if (from_it->second.kind == NodeKind::Sink) {
    throw Error(ErrorCode::KindError,
                "'" + from + "' is a sink and cannot take an outbound edge");
  }
  if (graph.edges.contains({from, to})) {
    throw Error(ErrorCode::DuplicateEdge,
                "edge " + from + " -> " + to + " already exists");
  }
  // A model is a stream: the new edge must not close a cycle.
  if (from == to || reachable(graph, to, from)) {
    throw Error(ErrorCode::CycleError,
                "edge " + from + " -> " + to + " would close a cycle");
  }
  ModelGraph out = graph;
  out.edges.emplace(from, to);
  return out;
}

ModelGraph tag_subject(const ModelGraph& graph, const std::string& subject) {
  if (subject.empty()) {
    throw Error(ErrorCode::InvalidSubject, "subject tag must be nonempty");
  }
  ModelGraph out = graph;
  out.subjects.insert(subject);
  return out;
}

std::set<NodeId> upstream_set(const ModelGraph& graph, const NodeId& node) {
  if (!graph.nodes.contains(node)) {
    throw Error(ErrorCode::MissingNode, "node '" + node + "' not found");
  }
  std::map<NodeId, std::vector<NodeId>> reverse;
  for (const auto& [from, to] : graph.edges) reverse[to].push_back(from);

  std::set<NodeId> out;
  std::deque<NodeId> queue{node};
  while (!queue.empty()) {
    NodeId current = queue.front();
    queue.pop_front();
    auto it = reverse.find(current);
    if (it == reverse.end()) continue;
    for (const NodeId& pred : it->second) {
      if (pred != node && out.insert(pred).second) queue.push_back(pred);
    }
  }
  return out;
}

std::set<NodeId> shared_processors(const ModelGraph& g1, const ModelGraph& g2) {
  std::set<NodeId> out;
  for (const auto& [id, node] : g1.nodes) {
    if (g2.nodes.contains(id)) out.insert(id);
  }
  return out;
}

ValidationReport validate(const ModelGraph& graph) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, std::string detail) {
    report.violations.push_back({kind, std::move(detail)});
  };

  for (const auto& [id, node] : graph.nodes) {
    if (id.empty() || node.id.empty()) add(ViolationKind::EmptyNodeId, id);
    if (node.label.empty()) add(ViolationKind::EmptyLabel, "node " + id);
    for (const auto& [key, value] : node.facets) {
      if (key.empty()) add(ViolationKind::EmptyFacetKey, "node " + id);
    }
  }

  for (const auto& [from, to] : graph.edges) {
    auto from_it = graph.nodes.find(from);
    auto to_it = graph.nodes.find(to);
    if (from_it == graph.nodes.end() || to_it == graph.nodes.end()) {
      add(ViolationKind::DanglingEdge, from + " -> " + to);
      continue;
    }
    if (from == to) add(ViolationKind::SelfEdge, from);
    if (to_it->second.kind == NodeKind::Source) {
      add(ViolationKind::SourceInbound, from + " -> " + to);
    }
    if (from_it->second.kind == NodeKind::Sink) {
      add(ViolationKind::SinkOutbound, from + " -> " + to);
    }
  }

  // Cycle scan: iterative DFS with colors, restricted to resolvable edges.
  std::map<NodeId, int> color;  // 0 white, 1 grey, 2 black
  std::function<bool(const NodeId&)> visit = [&](const NodeId& n) -> bool {
    color[n] = 1;
    auto it = graph.edges.lower_bound({n, std::string()});
    for (; it != graph.edges.end() && it->first == n; ++it) {
      if (!graph.nodes.contains(it->second)) continue;
      int c = color[it->second];
      if (c == 1) return true;
      if (c == 0 && visit(it->second)) return true;
    }
    color[n] = 2;
    return false;
  };
  for (const auto& [id, node] : graph.nodes) {
    if (color[id] == 0 && visit(id)) {
      add(ViolationKind::Cycle, "cycle through node " + id);
      break;
    }
  }

  return report;
}

}  // namespace proofgraph
