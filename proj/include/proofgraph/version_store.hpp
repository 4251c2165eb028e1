#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "proofgraph/canonical.hpp"
#include "proofgraph/object_store.hpp"
#include "proofgraph/workspace.hpp"

namespace proofgraph {

/// Persists a workspace with structural sharing: one object per node, per
/// model (node ids + hash references, edges, subjects), plus one tree and
/// one commit. Objects already present are not re-stored, which is what
/// keeps a long edit history from exploding into full copies.
ObjectId commit_workspace(ObjectStore& store, const Workspace& workspace,
                          const std::vector<ObjectId>& parents,
                          const std::string& author, const std::string& message,
                          std::int64_t timestamp);

/// Reconstructs the exact workspace of a commit, re-verifying every object
/// hash on the way.
Workspace checkout(const ObjectStore& store, const ObjectId& commit_id);

Commit read_commit(const ObjectStore& store, const ObjectId& commit_id);

/// Copies every member of clone_chain(model_id) under the new ids given by
/// `rename` (which must cover the chain exactly) and commits the enlarged
/// workspace. Node identities are preserved inside the cloned chain, so
/// sharing among the clones mirrors sharing among the originals. Returns
/// the new workspace and commit id; the originals are untouched.
std::pair<Workspace, ObjectId> clone(
    ObjectStore& store, const ObjectId& commit_id, const std::string& model_id,
    const std::map<std::string, std::string>& rename, const std::string& author,
    const std::string& message, std::int64_t timestamp);

enum class ConflictElement { Node, Edge, Facet, Subject };

const char* to_string(ConflictElement element);

struct Conflict {
  ConflictElement element;
  std::vector<std::string> ids;
  std::string ours;
  std::string theirs;

  bool operator==(const Conflict&) const = default;
};

struct Merged {
  Workspace workspace;
  ObjectId commit_id;
};

struct MergeResult {
  std::variant<Merged, std::vector<Conflict>> outcome;

  bool merged() const { return std::holds_alternative<Merged>(outcome); }
  const Merged& result() const { return std::get<Merged>(outcome); }
  const std::vector<Conflict>& conflicts() const {
    return std::get<std::vector<Conflict>>(outcome);
  }
};

/// Three-way merge over element-level edit sets diff(base,ours) and
/// diff(base,theirs). Elements are catalog nodes, facets, model membership
/// markers, edges and subjects. Disjoint edits both apply, identical edits
/// apply once, conflicting edits are reported instead of merged.
MergeResult merge(ObjectStore& store, const ObjectId& base,
                  const ObjectId& ours, const ObjectId& theirs,
                  const std::string& author, const std::string& message,
                  std::int64_t timestamp);

}  // namespace proofgraph
