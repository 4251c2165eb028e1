#pragma once

#include <map>
#include <set>
#include <string>

#include "proofgraph/model_graph.hpp"

namespace proofgraph {

/// A workspace of models. Node definitions are shared by identity: every
/// model referencing a NodeId sees the identical Node value. The node
/// catalog (the single authority for shared definitions) is the union of
/// the models' nodes and is kept consistent by the mutators below.
struct Workspace {
  std::map<std::string, ModelGraph> models;

  bool operator==(const Workspace&) const = default;

  std::map<NodeId, Node> node_catalog() const;

  /// Adds or replaces a model. Throws CatalogMismatch when the model's
  /// definition of a shared NodeId differs from the other models' value.
  void put_model(ModelGraph model);

  void remove_model(const std::string& model_id);

  /// Sets a facet on the shared node definition; every model containing
  /// the node sees the new value.
  void set_facet(const NodeId& node, const std::string& key,
                 const std::string& value);
  void remove_facet(const NodeId& node, const std::string& key);

  const ModelGraph& model(const std::string& model_id) const;
  bool has_model(const std::string& model_id) const { return models.contains(model_id); }
};

ValidationReport validate(const Workspace& workspace);

/// The least set containing `model_id` and closed under processor sharing:
/// the connected component of the model in the sharing relation
/// shared_processors(m, m') != {}.
std::set<std::string> clone_chain(const Workspace& workspace,
                                  const std::string& model_id);

}  // namespace proofgraph
