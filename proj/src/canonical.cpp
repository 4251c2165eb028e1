#include "proofgraph/canonical.hpp"

#include <cstring>

#include "proofgraph/errors.hpp"

namespace proofgraph {

namespace {

class Writer {
 public:
  Bytes take() { return std::move(out_); }

  void u8(std::uint8_t v) { out_.push_back(v); }

  void u32(std::uint32_t v) {
    out_.push_back(static_cast<std::uint8_t>(v >> 24));
    out_.push_back(static_cast<std::uint8_t>(v >> 16));
    out_.push_back(static_cast<std::uint8_t>(v >> 8));
    out_.push_back(static_cast<std::uint8_t>(v));
  }

  void i64(std::int64_t v) {
    auto u = static_cast<std::uint64_t>(v);
    for (int shift = 56; shift >= 0; shift -= 8) {
      out_.push_back(static_cast<std::uint8_t>(u >> shift));
    }
  }

  void str(const std::string& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    out_.insert(out_.end(), s.begin(), s.end());
  }

  void id(const ObjectId& oid) {
    out_.insert(out_.end(), oid.raw().begin(), oid.raw().end());
  }

  void raw(const Bytes& bytes) {
    out_.insert(out_.end(), bytes.begin(), bytes.end());
  }

  void string_map(const std::map<std::string, std::string>& m) {
    u32(static_cast<std::uint32_t>(m.size()));
    for (const auto& [k, v] : m) {
      str(k);
      str(v);
    }
  }

  void string_set(const std::set<std::string>& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    for (const auto& v : s) str(v);
  }

 private:
  Bytes out_;
};

class Reader {
 public:
  explicit Reader(const Bytes& bytes) : data_(bytes.data()), size_(bytes.size()) {}

  std::uint8_t u8() {
    need(1);
    return data_[pos_++];
  }

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = v << 8 | data_[pos_++];
    return v;
  }

  std::int64_t i64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = v << 8 | data_[pos_++];
    return static_cast<std::int64_t>(v);
  }

  std::string str() {
    std::uint32_t len = u32();
    need(len);
    std::string s(reinterpret_cast<const char*>(data_ + pos_), len);
    pos_ += len;
    return s;
  }

  ObjectId id() {
    need(ObjectId::kSize);
    std::array<std::uint8_t, ObjectId::kSize> raw;
    std::memcpy(raw.data(), data_ + pos_, ObjectId::kSize);
    pos_ += ObjectId::kSize;
    return ObjectId(raw);
  }

  std::map<std::string, std::string> string_map() {
    std::map<std::string, std::string> m;
    std::uint32_t n = u32();
    for (std::uint32_t i = 0; i < n; ++i) {
      std::string k = str();
      std::string v = str();
      m.emplace(std::move(k), std::move(v));
    }
    return m;
  }

  std::set<std::string> string_set() {
    std::set<std::string> s;
    std::uint32_t n = u32();
    for (std::uint32_t i = 0; i < n; ++i) s.insert(str());
    return s;
  }

  Bytes rest() {
    Bytes b(data_ + pos_, data_ + size_);
    pos_ = size_;
    return b;
  }

  void expect_tag(std::uint8_t tag) {
    if (u8() != tag) {
      throw Error(ErrorCode::CorruptObject, "unexpected object kind tag");
    }
  }

  void expect_end() const {
    if (pos_ != size_) {
      throw Error(ErrorCode::CorruptObject, "trailing bytes in object");
    }
  }

 private:
  void need(std::size_t n) const {
    if (size_ - pos_ < n) {
      throw Error(ErrorCode::CorruptObject, "truncated object");
    }
  }

  const std::uint8_t* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

void write_node_body(Writer& w, const Node& node) {
  w.str(node.id);
  w.u8(static_cast<std::uint8_t>(node.kind));
  w.str(node.label);
  w.string_map(node.params);
  w.string_map(node.facets);
}

Node read_node_body(Reader& r) {
  Node node;
  node.id = r.str();
  std::uint8_t kind = r.u8();
  if (kind > 2) {
    throw Error(ErrorCode::CorruptObject, "node kind out of range");
  }
  node.kind = static_cast<NodeKind>(kind);
  node.label = r.str();
  node.params = r.string_map();
  node.facets = r.string_map();
  return node;
}

void write_edges(Writer& w, const std::set<std::pair<NodeId, NodeId>>& edges) {
  w.u32(static_cast<std::uint32_t>(edges.size()));
  for (const auto& [from, to] : edges) {
    w.str(from);
    w.str(to);
  }
}

std::set<std::pair<NodeId, NodeId>> read_edges(Reader& r) {
  std::set<std::pair<NodeId, NodeId>> edges;
  std::uint32_t n = r.u32();
  for (std::uint32_t i = 0; i < n; ++i) {
    std::string from = r.str();
    std::string to = r.str();
    edges.emplace(std::move(from), std::move(to));
  }
  return edges;
}

void write_model_graph_body(Writer& w, const ModelGraph& graph) {
  w.str(graph.model_id);
  w.u32(static_cast<std::uint32_t>(graph.nodes.size()));
  for (const auto& [id, node] : graph.nodes) write_node_body(w, node);
  write_edges(w, graph.edges);
  w.string_set(graph.subjects);
}

ModelGraph read_model_graph_body(Reader& r) {
  ModelGraph graph;
  graph.model_id = r.str();
  std::uint32_t n = r.u32();
  for (std::uint32_t i = 0; i < n; ++i) {
    Node node = read_node_body(r);
    std::string id = node.id;
    graph.nodes.emplace(std::move(id), std::move(node));
  }
  graph.edges = read_edges(r);
  graph.subjects = r.string_set();
  return graph;
}

}  // namespace

Bytes encode(const Node& node) {
  Writer w;
  w.u8(tag::kNode);
  write_node_body(w, node);
  return w.take();
}

Node decode_node(const Bytes& bytes) {
  Reader r(bytes);
  r.expect_tag(tag::kNode);
  Node node = read_node_body(r);
  r.expect_end();
  return node;
}

Bytes encode(const ModelGraph& graph) {
  Writer w;
  w.u8(tag::kModelGraph);
  write_model_graph_body(w, graph);
  return w.take();
}

ModelGraph decode_model_graph(const Bytes& bytes) {
  Reader r(bytes);
  r.expect_tag(tag::kModelGraph);
  ModelGraph graph = read_model_graph_body(r);
  r.expect_end();
  return graph;
}

Bytes encode(const Workspace& workspace) {
  Writer w;
  w.u8(tag::kWorkspace);
  w.u32(static_cast<std::uint32_t>(workspace.models.size()));
  for (const auto& [id, model] : workspace.models) {
    write_model_graph_body(w, model);
  }
  return w.take();
}

Workspace decode_workspace(const Bytes& bytes) {
  Reader r(bytes);
  r.expect_tag(tag::kWorkspace);
  Workspace workspace;
  std::uint32_t n = r.u32();
  for (std::uint32_t i = 0; i < n; ++i) {
    ModelGraph model = read_model_graph_body(r);
    std::string id = model.model_id;
    workspace.models.emplace(std::move(id), std::move(model));
  }
  r.expect_end();
  return workspace;
}

Bytes encode(const ModelRecord& record) {
  Writer w;
  w.u8(tag::kModelRecord);
  w.str(record.model_id);
  w.u32(static_cast<std::uint32_t>(record.nodes.size()));
  for (const auto& [node_id, oid] : record.nodes) {
    w.str(node_id);
    w.id(oid);
  }
  write_edges(w, record.edges);
  w.string_set(record.subjects);
  return w.take();
}

ModelRecord decode_model_record(const Bytes& bytes) {
  Reader r(bytes);
  r.expect_tag(tag::kModelRecord);
  ModelRecord record;
  record.model_id = r.str();
  std::uint32_t n = r.u32();
  for (std::uint32_t i = 0; i < n; ++i) {
    std::string node_id = r.str();
    record.nodes.emplace(std::move(node_id), r.id());
  }
  record.edges = read_edges(r);
  record.subjects = r.string_set();
  r.expect_end();
  return record;
}

Bytes encode(const TreeRecord& tree) {
  Writer w;
  w.u8(tag::kTree);
  w.u32(static_cast<std::uint32_t>(tree.models.size()));
  for (const auto& [model_id, oid] : tree.models) {
    w.str(model_id);
    w.id(oid);
  }
  return w.take();
}

TreeRecord decode_tree(const Bytes& bytes) {
  Reader r(bytes);
  r.expect_tag(tag::kTree);
  TreeRecord tree;
  std::uint32_t n = r.u32();
  for (std::uint32_t i = 0; i < n; ++i) {
    std::string model_id = r.str();
    tree.models.emplace(std::move(model_id), r.id());
  }
  r.expect_end();
  return tree;
}

Bytes encode_commit(const Commit& commit) {
  Writer w;
  w.u8(tag::kCommit);
  w.u32(static_cast<std::uint32_t>(commit.parents.size()));
  for (const auto& parent : commit.parents) w.id(parent);
  w.id(commit.root);
  w.str(commit.author);
  w.str(commit.message);
  w.i64(commit.timestamp);
  return w.take();
}

Commit decode_commit(const Bytes& bytes) {
  Reader r(bytes);
  r.expect_tag(tag::kCommit);
  Commit commit;
  std::uint32_t n = r.u32();
  if (n > 2) {
    throw Error(ErrorCode::CorruptObject, "commit has more than two parents");
  }
  for (std::uint32_t i = 0; i < n; ++i) commit.parents.push_back(r.id());
  commit.root = r.id();
  commit.author = r.str();
  commit.message = r.str();
  commit.timestamp = r.i64();
  r.expect_end();
  return commit;
}

Bytes encode_blob(const Bytes& payload) {
  Writer w;
  w.u8(tag::kBlob);
  w.raw(payload);
  return w.take();
}

Bytes decode_blob(const Bytes& bytes) {
  Reader r(bytes);
  r.expect_tag(tag::kBlob);
  return r.rest();
}

}  // namespace proofgraph
