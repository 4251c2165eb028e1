#include "proofgraph/workspace.hpp"

#include <deque>

#include "proofgraph/errors.hpp"

namespace proofgraph {

std::map<NodeId, Node> Workspace::node_catalog() const {
  std::map<NodeId, Node> catalog;
  for (const auto& [model_id, model] : models) {
    for (const auto& [node_id, node] : model.nodes) {
      auto [it, inserted] = catalog.emplace(node_id, node);
      if (!inserted && !(it->second == node)) {
        throw Error(ErrorCode::CatalogMismatch,
                    "node '" + node_id + "' has diverging definitions");
      }
    }
  }
  return catalog;
}

void Workspace::put_model(ModelGraph model) {
  std::string id = model.model_id;
  if (id.empty()) {
    throw Error(ErrorCode::UnknownModel, "model id must be nonempty");
  }
  for (const auto& [other_id, other] : models) {
    if (other_id == id) continue;
    for (const auto& [node_id, node] : model.nodes) {
      auto it = other.nodes.find(node_id);
      if (it != other.nodes.end() && !(it->second == node)) {
        throw Error(ErrorCode::CatalogMismatch,
                    "model '" + id + "' redefines shared node '" + node_id +
                        "' (already defined by '" + other_id + "')");
      }
    }
  }
  models[id] = std::move(model);
}

void Workspace::remove_model(const std::string& model_id) {
  if (models.erase(model_id) == 0) {
    throw Error(ErrorCode::UnknownModel, "model '" + model_id + "' not found");
  }
}

void Workspace::set_facet(const NodeId& node, const std::string& key,
                          const std::string& value) {
  if (key.empty()) {
    throw Error(ErrorCode::InvalidNode, "facet key must be nonempty");
  }
  bool found = false;
  for (auto& [model_id, model] : models) {
    auto it = model.nodes.find(node);
    if (it != model.nodes.end()) {
      it->second.facets[key] = value;
      found = true;
    }
  }
  if (!found) {
    throw Error(ErrorCode::MissingNode, "node '" + node + "' not found");
  }
}

void Workspace::remove_facet(const NodeId& node, const std::string& key) {
  bool found = false;
  for (auto& [model_id, model] : models) {
    auto it = model.nodes.find(node);
    if (it != model.nodes.end()) {
      it->second.facets.erase(key);
      found = true;
    }
  }
  if (!found) {
    throw Error(ErrorCode::MissingNode, "node '" + node + "' not found");
  }
}

const ModelGraph& Workspace::model(const std::string& model_id) const {
  auto it = models.find(model_id);
  if (it == models.end()) {
    throw Error(ErrorCode::UnknownModel, "model '" + model_id + "' not found");
  }
  return it->second;
}

ValidationReport validate(const Workspace& workspace) {
  ValidationReport report;
  for (const auto& [model_id, model] : workspace.models) {
    ValidationReport sub = validate(model);
    for (auto& violation : sub.violations) {
      violation.detail = "model " + model_id + ": " + violation.detail;
      report.violations.push_back(std::move(violation));
    }
  }
  // Shared-definition agreement across models.
  std::map<NodeId, std::pair<std::string, const Node*>> seen;
  for (const auto& [model_id, model] : workspace.models) {
    for (const auto& [node_id, node] : model.nodes) {
      auto [it, inserted] = seen.emplace(node_id, std::make_pair(model_id, &node));
      if (!inserted && !(*it->second.second == node)) {
        report.violations.push_back(
            {ViolationKind::CatalogMismatch,
             "node " + node_id + " differs between models " + it->second.first +
                 " and " + model_id});
      }
    }
  }
  return report;
}

std::set<std::string> clone_chain(const Workspace& workspace,
                                  const std::string& model_id) {
  if (!workspace.models.contains(model_id)) {
    throw Error(ErrorCode::UnknownModel, "model '" + model_id + "' not found");
  }
  std::set<std::string> chain{model_id};
  std::deque<std::string> queue{model_id};
  while (!queue.empty()) {
    const ModelGraph& current = workspace.models.at(queue.front());
    queue.pop_front();
    for (const auto& [other_id, other] : workspace.models) {
      if (chain.contains(other_id)) continue;
      if (!shared_processors(current, other).empty()) {
        chain.insert(other_id);
        queue.push_back(other_id);
      }
    }
  }
  return chain;
}

}  // namespace proofgraph
