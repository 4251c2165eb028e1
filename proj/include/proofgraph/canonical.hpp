#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "proofgraph/model_graph.hpp"
#include "proofgraph/object_id.hpp"
#include "proofgraph/workspace.hpp"

namespace proofgraph {

// Canonical byte encodings. Deterministic and injective per type: every
// object starts with a one-byte kind tag, map keys and set members are
// sorted lexicographically by code point, integers are fixed-width
// big-endian, strings are length-prefixed UTF-8. Object ids are the
// SHA-256 of these bytes, so the encodings define the whole identity
// scheme of the store.

namespace tag {
inline constexpr std::uint8_t kNode = 'N';
inline constexpr std::uint8_t kModelGraph = 'G';  // standalone, full nodes
inline constexpr std::uint8_t kModelRecord = 'M';  // store form, node refs
inline constexpr std::uint8_t kTree = 'T';
inline constexpr std::uint8_t kCommit = 'C';
inline constexpr std::uint8_t kWorkspace = 'W';  // standalone, full models
inline constexpr std::uint8_t kBlob = 'B';
inline constexpr std::uint8_t kContribution = 'R';
}  // namespace tag

struct Commit {
  ObjectId id;
  std::vector<ObjectId> parents;  // 0, 1, or 2 entries; order significant
  ObjectId root;                  // workspace tree object
  std::string author;
  std::string message;
  std::int64_t timestamp = 0;  // caller-supplied seconds since epoch, UTC
};

/// Store form of a model: node contents live in their own objects and are
/// referenced by hash, which is what makes versioning structurally shared.
struct ModelRecord {
  std::string model_id;
  std::map<NodeId, ObjectId> nodes;
  std::set<std::pair<NodeId, NodeId>> edges;
  std::set<std::string> subjects;
};

struct TreeRecord {
  std::map<std::string, ObjectId> models;  // model_id -> model object
};

Bytes encode(const Node& node);
Bytes encode(const ModelGraph& graph);
Bytes encode(const Workspace& workspace);
Bytes encode(const ModelRecord& record);
Bytes encode(const TreeRecord& tree);
Bytes encode_commit(const Commit& commit);  // id field excluded, of course
Bytes encode_blob(const Bytes& payload);

// Decoders reject wrong tags, malformed and trailing bytes (CorruptObject).
Node decode_node(const Bytes& bytes);
ModelGraph decode_model_graph(const Bytes& bytes);
Workspace decode_workspace(const Bytes& bytes);
ModelRecord decode_model_record(const Bytes& bytes);
TreeRecord decode_tree(const Bytes& bytes);
Commit decode_commit(const Bytes& bytes);  // id left zero; caller sets it
Bytes decode_blob(const Bytes& bytes);

}  // namespace proofgraph
