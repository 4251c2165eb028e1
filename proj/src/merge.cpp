#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <variant>

#include <nlohmann/json.hpp>

#include "proofgraph/errors.hpp"
#include "proofgraph/version_store.hpp"

namespace proofgraph {

const char* to_string(ConflictElement element) {
  switch (element) {
    case ConflictElement::Node: return "node";
    case ConflictElement::Edge: return "edge";
    case ConflictElement::Facet: return "facet";
    case ConflictElement::Subject: return "subject";
  }
  return "?";
}

namespace {

// A workspace decomposes into independent elements: model markers, model
// membership of nodes, edges, subjects, shared node definitions (kind,
// label, params) and facets. diff/apply/recompose over this map is the
// whole merge algebra.
enum class ElemKind { Model, ModelNode, ModelEdge, ModelSubject, NodeCore, Facet };

struct ElemKey {
  ElemKind kind;
  std::vector<std::string> ids;

  auto operator<=>(const ElemKey&) const = default;
};

struct NodeCore {
  NodeKind kind = NodeKind::Processor;
  std::string label;
  std::map<std::string, std::string> params;

  bool operator==(const NodeCore&) const = default;
};

struct Marker {
  bool operator==(const Marker&) const = default;
};

using ElemValue = std::variant<Marker, std::string, NodeCore>;
using ElemMap = std::map<ElemKey, ElemValue>;

struct Edit {
  std::optional<ElemValue> before;
  std::optional<ElemValue> after;
};

using EditMap = std::map<ElemKey, Edit>;

std::string render(const std::optional<ElemValue>& value) {
  if (!value) return "(absent)";
  if (std::holds_alternative<Marker>(*value)) return "present";
  if (const auto* s = std::get_if<std::string>(&*value)) return *s;
  const auto& core = std::get<NodeCore>(*value);
  nlohmann::json j;
  j["kind"] = to_string(core.kind);
  j["label"] = core.label;
  j["params"] = core.params;
  return j.dump();
}

ElemMap decompose(const Workspace& workspace) {
  ElemMap elems;
  for (const auto& [node_id, node] : workspace.node_catalog()) {
    elems[{ElemKind::NodeCore, {node_id}}] =
        NodeCore{node.kind, node.label, node.params};
    for (const auto& [key, value] : node.facets) {
      elems[{ElemKind::Facet, {node_id, key}}] = value;
    }
  }
  for (const auto& [model_id, model] : workspace.models) {
    elems[{ElemKind::Model, {model_id}}] = Marker{};
    for (const auto& [node_id, node] : model.nodes) {
      elems[{ElemKind::ModelNode, {model_id, node_id}}] = Marker{};
    }
    for (const auto& [from, to] : model.edges) {
      elems[{ElemKind::ModelEdge, {model_id, from, to}}] = Marker{};
    }
    for (const auto& subject : model.subjects) {
      elems[{ElemKind::ModelSubject, {model_id, subject}}] = Marker{};
    }
  }
  return elems;
}

Workspace recompose(const ElemMap& elems) {
  std::map<std::string, Node> catalog;
  for (const auto& [key, value] : elems) {
    if (key.kind != ElemKind::NodeCore) continue;
    const auto& core = std::get<NodeCore>(value);
    Node node;
    node.id = key.ids[0];
    node.kind = core.kind;
    node.label = core.label;
    node.params = core.params;
    catalog.emplace(key.ids[0], std::move(node));
  }
  for (const auto& [key, value] : elems) {
    if (key.kind != ElemKind::Facet) continue;
    auto it = catalog.find(key.ids[0]);
    if (it == catalog.end()) {
      throw Error(ErrorCode::StorageError,
                  "merge produced a facet on an undefined node");
    }
    it->second.facets[key.ids[1]] = std::get<std::string>(value);
  }

  Workspace workspace;
  for (const auto& [key, value] : elems) {
    if (key.kind != ElemKind::Model) continue;
    ModelGraph model;
    model.model_id = key.ids[0];
    workspace.models.emplace(key.ids[0], std::move(model));
  }
  for (const auto& [key, value] : elems) {
    switch (key.kind) {
      case ElemKind::ModelNode: {
        auto model = workspace.models.find(key.ids[0]);
        auto node = catalog.find(key.ids[1]);
        if (model == workspace.models.end() || node == catalog.end()) {
          throw Error(ErrorCode::StorageError,
                      "merge produced a dangling model membership");
        }
        model->second.nodes.emplace(key.ids[1], node->second);
        break;
      }
      case ElemKind::ModelEdge: {
        auto model = workspace.models.find(key.ids[0]);
        if (model == workspace.models.end()) {
          throw Error(ErrorCode::StorageError,
                      "merge produced an edge in an undefined model");
        }
        model->second.edges.emplace(key.ids[1], key.ids[2]);
        break;
      }
      case ElemKind::ModelSubject: {
        auto model = workspace.models.find(key.ids[0]);
        if (model == workspace.models.end()) {
          throw Error(ErrorCode::StorageError,
                      "merge produced a subject on an undefined model");
        }
        model->second.subjects.insert(key.ids[1]);
        break;
      }
      default:
        break;
    }
  }
  return workspace;
}

EditMap diff(const ElemMap& base, const ElemMap& side) {
  EditMap edits;
  for (const auto& [key, value] : base) {
    auto it = side.find(key);
    if (it == side.end()) {
      edits.emplace(key, Edit{value, std::nullopt});
    } else if (!(it->second == value)) {
      edits.emplace(key, Edit{value, it->second});
    }
  }
  for (const auto& [key, value] : side) {
    if (!base.contains(key)) edits.emplace(key, Edit{std::nullopt, value});
  }
  return edits;
}

bool is_add(const Edit& e) { return !e.before && e.after; }
bool is_remove(const Edit& e) { return e.before && !e.after; }

/// Uses of node `n` in an edit set: facet writes, membership adds, edge
/// adds touching it. A node removed on one side while used on the other is
/// a conflict, not a silent drop.
std::vector<std::string> uses_of_node(const EditMap& edits,
                                      const std::string& node_id) {
  std::vector<std::string> uses;
  for (const auto& [key, edit] : edits) {
    switch (key.kind) {
      case ElemKind::Facet:
        if (key.ids[0] == node_id && edit.after) {
          uses.push_back("facet " + key.ids[1]);
        }
        break;
      case ElemKind::ModelNode:
        if (key.ids[1] == node_id && is_add(edit)) {
          uses.push_back("member of " + key.ids[0]);
        }
        break;
      case ElemKind::ModelEdge:
        if ((key.ids[1] == node_id || key.ids[2] == node_id) && is_add(edit)) {
          uses.push_back("edge " + key.ids[0] + ":" + key.ids[1] + "->" +
                         key.ids[2]);
        }
        break;
      default:
        break;
    }
  }
  std::sort(uses.begin(), uses.end());
  return uses;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& part : parts) {
    if (!out.empty()) out += ", ";
    out += part;
  }
  return out;
}

ConflictElement conflict_element(ElemKind kind) {
  switch (kind) {
    case ElemKind::NodeCore:
    case ElemKind::ModelNode:
      return ConflictElement::Node;
    case ElemKind::ModelEdge: return ConflictElement::Edge;
    case ElemKind::Facet: return ConflictElement::Facet;
    case ElemKind::ModelSubject: return ConflictElement::Subject;
    case ElemKind::Model: return ConflictElement::Node;
  }
  return ConflictElement::Node;
}

/// Remove-vs-use and delete-vs-extend conflicts between one side's
/// removals and the other side's edits. `flip` swaps the ours/theirs slots
/// so the caller can run both directions.
void cross_conflicts(const EditMap& removals_side, const EditMap& other_side,
                     bool flip, std::vector<Conflict>& out) {
  auto emit = [&](ConflictElement element, std::vector<std::string> ids,
                  std::string remover, std::string user) {
    Conflict c;
    c.element = element;
    c.ids = std::move(ids);
    c.ours = flip ? user : remover;
    c.theirs = flip ? std::move(remover) : std::move(user);
    out.push_back(std::move(c));
  };

  for (const auto& [key, edit] : removals_side) {
    if (!is_remove(edit)) continue;
    switch (key.kind) {
      case ElemKind::NodeCore: {
        std::vector<std::string> uses = uses_of_node(other_side, key.ids[0]);
        if (!uses.empty()) {
          emit(ConflictElement::Node, {key.ids[0]}, "removed",
               "in use (" + join(uses) + ")");
        }
        break;
      }
      case ElemKind::ModelNode: {
        // Membership removed here, edge added there in the same model.
        for (const auto& [other_key, other_edit] : other_side) {
          if (other_key.kind != ElemKind::ModelEdge || !is_add(other_edit)) {
            continue;
          }
          if (other_key.ids[0] != key.ids[0]) continue;
          if (other_key.ids[1] == key.ids[1] || other_key.ids[2] == key.ids[1]) {
            emit(ConflictElement::Edge,
                 {other_key.ids[0], other_key.ids[1], other_key.ids[2]},
                 "endpoint " + key.ids[1] + " removed", "added");
          }
        }
        break;
      }
      case ElemKind::Model: {
        // Model deleted here, extended there.
        for (const auto& [other_key, other_edit] : other_side) {
          if (!is_add(other_edit)) continue;
          if (other_key.kind == ElemKind::ModelNode ||
              other_key.kind == ElemKind::ModelEdge ||
              other_key.kind == ElemKind::ModelSubject) {
            if (other_key.ids[0] != key.ids[0]) continue;
            emit(conflict_element(other_key.kind), other_key.ids,
                 "model " + key.ids[0] + " removed", "added");
          }
        }
        break;
      }
      default:
        break;
    }
  }
}

bool conflict_less(const Conflict& a, const Conflict& b) {
  return std::tie(a.element, a.ids, a.ours, a.theirs) <
         std::tie(b.element, b.ids, b.ours, b.theirs);
}

/// Workspace-invariant violations that only appear once both edit sets are
/// combined (two independently acyclic edge sets can close a cycle).
void post_merge_conflicts(const Workspace& merged, std::vector<Conflict>& out) {
  for (const auto& [model_id, model] : merged.models) {
    ValidationReport report = validate(model);
    if (report.ok()) continue;
    for (const auto& violation : report.violations) {
      if (violation.kind == ViolationKind::Cycle) {
        // Deterministic representative: smallest edge lying on a cycle.
        for (const auto& [from, to] : model.edges) {
          if (!model.nodes.contains(from) || !model.nodes.contains(to)) continue;
          std::set<NodeId> up = upstream_set(model, from);
          if (up.contains(to) || from == to) {
            out.push_back({ConflictElement::Edge,
                           {model_id, from, to},
                           "on a cycle after merge",
                           "on a cycle after merge"});
            break;
          }
        }
      } else {
        out.push_back({ConflictElement::Edge,
                       {model_id},
                       to_string(violation.kind),
                       to_string(violation.kind)});
      }
    }
  }
}

}  // namespace

MergeResult merge(ObjectStore& store, const ObjectId& base,
                  const ObjectId& ours, const ObjectId& theirs,
                  const std::string& author, const std::string& message,
                  std::int64_t timestamp) {
  ElemMap base_map = decompose(checkout(store, base));
  ElemMap ours_map = decompose(checkout(store, ours));
  ElemMap theirs_map = decompose(checkout(store, theirs));

  EditMap ours_edits = diff(base_map, ours_map);
  EditMap theirs_edits = diff(base_map, theirs_map);

  std::vector<Conflict> conflicts;

  // Same element edited to different values on both sides.
  for (const auto& [key, our_edit] : ours_edits) {
    auto it = theirs_edits.find(key);
    if (it == theirs_edits.end()) continue;
    const Edit& their_edit = it->second;
    if (our_edit.after == their_edit.after) continue;
    conflicts.push_back({conflict_element(key.kind), key.ids,
                         render(our_edit.after), render(their_edit.after)});
  }

  cross_conflicts(ours_edits, theirs_edits, /*flip=*/false, conflicts);
  cross_conflicts(theirs_edits, ours_edits, /*flip=*/true, conflicts);

  if (conflicts.empty()) {
    ElemMap combined = base_map;
    auto apply = [&combined](const EditMap& edits) {
      for (const auto& [key, edit] : edits) {
        if (edit.after) {
          combined[key] = *edit.after;
        } else {
          combined.erase(key);
        }
      }
    };
    apply(ours_edits);
    apply(theirs_edits);

    Workspace merged = recompose(combined);
    post_merge_conflicts(merged, conflicts);
    if (conflicts.empty()) {
      std::vector<ObjectId> parents{ours};
      if (theirs != ours) parents.push_back(theirs);
      ObjectId commit_id =
          commit_workspace(store, merged, parents, author, message, timestamp);
      return MergeResult{Merged{std::move(merged), commit_id}};
    }
  }

  std::sort(conflicts.begin(), conflicts.end(), conflict_less);
  conflicts.erase(std::unique(conflicts.begin(), conflicts.end()),
                  conflicts.end());
  return MergeResult{std::move(conflicts)};
}

}  // namespace proofgraph
