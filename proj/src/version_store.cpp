#include "proofgraph/version_store.hpp"

#include "proofgraph/errors.hpp"

namespace proofgraph {

ObjectId commit_workspace(ObjectStore& store, const Workspace& workspace,
                          const std::vector<ObjectId>& parents,
                          const std::string& author, const std::string& message,
                          std::int64_t timestamp) {
  ValidationReport report = validate(workspace);
  if (!report.ok()) {
    throw Error(ErrorCode::InvalidNode,
                "workspace is invalid: " + report.violations.front().detail);
  }
  if (parents.size() > 2) {
    throw Error(ErrorCode::UnknownParent, "a commit takes at most two parents");
  }
  for (const auto& parent : parents) {
    if (!store.contains(parent)) {
      throw Error(ErrorCode::UnknownParent,
                  "parent commit " + parent.hex() + " not found");
    }
  }

  TreeRecord tree;
  for (const auto& [model_id, model] : workspace.models) {
    ModelRecord record;
    record.model_id = model.model_id;
    record.edges = model.edges;
    record.subjects = model.subjects;
    for (const auto& [node_id, node] : model.nodes) {
      record.nodes.emplace(node_id, store.put(encode(node)));
    }
    tree.models.emplace(model_id, store.put(encode(record)));
  }
  ObjectId root = store.put(encode(tree));

  Commit commit;
  commit.parents = parents;
  commit.root = root;
  commit.author = author;
  commit.message = message;
  commit.timestamp = timestamp;
  return store.put(encode_commit(commit));
}

Commit read_commit(const ObjectStore& store, const ObjectId& commit_id) {
  if (!store.contains(commit_id)) {
    throw Error(ErrorCode::UnknownCommit,
                "commit " + commit_id.hex() + " not found");
  }
  Commit commit = decode_commit(store.get(commit_id));
  commit.id = commit_id;
  return commit;
}

Workspace checkout(const ObjectStore& store, const ObjectId& commit_id) {
  Commit commit = read_commit(store, commit_id);
  TreeRecord tree = decode_tree(store.get(commit.root));

  Workspace workspace;
  std::map<ObjectId, Node> node_cache;
  for (const auto& [model_id, model_oid] : tree.models) {
    ModelRecord record = decode_model_record(store.get(model_oid));
    if (record.model_id != model_id) {
      throw Error(ErrorCode::CorruptObject,
                  "tree names model '" + model_id + "' but object holds '" +
                      record.model_id + "'");
    }
    ModelGraph model;
    model.model_id = record.model_id;
    model.edges = record.edges;
    model.subjects = record.subjects;
    for (const auto& [node_id, node_oid] : record.nodes) {
      auto cached = node_cache.find(node_oid);
      if (cached == node_cache.end()) {
        cached = node_cache.emplace(node_oid, decode_node(store.get(node_oid)))
                     .first;
      }
      const Node& node = cached->second;
      if (node.id != node_id) {
        throw Error(ErrorCode::CorruptObject,
                    "model '" + model_id + "' references node '" + node_id +
                        "' but object holds '" + node.id + "'");
      }
      model.nodes.emplace(node_id, node);
    }
    workspace.models.emplace(model_id, std::move(model));
  }
  return workspace;
}

std::pair<Workspace, ObjectId> clone(
    ObjectStore& store, const ObjectId& commit_id, const std::string& model_id,
    const std::map<std::string, std::string>& rename, const std::string& author,
    const std::string& message, std::int64_t timestamp) {
  Workspace workspace = checkout(store, commit_id);
  std::set<std::string> chain = clone_chain(workspace, model_id);

  // Forcing is not optional: the rename must cover the chain exactly.
  for (const auto& member : chain) {
    if (!rename.contains(member)) {
      throw Error(ErrorCode::IncompleteRename,
                  "clone chain member '" + member + "' has no rename");
    }
  }
  for (const auto& [old_id, new_id] : rename) {
    if (!chain.contains(old_id)) {
      throw Error(ErrorCode::IncompleteRename,
                  "rename names '" + old_id + "' which is not in the chain");
    }
    if (new_id.empty()) {
      throw Error(ErrorCode::NameCollision, "new model id must be nonempty");
    }
    if (workspace.models.contains(new_id)) {
      throw Error(ErrorCode::NameCollision,
                  "model id '" + new_id + "' is already in use");
    }
  }
  std::set<std::string> new_ids;
  for (const auto& [old_id, new_id] : rename) {
    if (!new_ids.insert(new_id).second) {
      throw Error(ErrorCode::NameCollision,
                  "rename maps two models to '" + new_id + "'");
    }
  }

  for (const auto& member : chain) {
    ModelGraph copy = workspace.models.at(member);
    copy.model_id = rename.at(member);
    workspace.put_model(std::move(copy));
  }
  ObjectId new_commit = commit_workspace(store, workspace, {commit_id}, author,
                                         message, timestamp);
  return {std::move(workspace), new_commit};
}

}  // namespace proofgraph
