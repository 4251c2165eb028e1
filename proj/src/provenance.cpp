#include "proofgraph/provenance.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "proofgraph/canonical.hpp"
#include "proofgraph/errors.hpp"
#include "proofgraph/version_store.hpp"

namespace proofgraph {

Bytes encode(const Contribution& c) {
  // Same primitive layout as the store encodings: tag, length-prefixed
  // strings, sorted sets, fixed-width big-endian integers.
  Bytes out;
  out.push_back(tag::kContribution);
  auto str = [&out](const std::string& s) {
    std::uint32_t n = static_cast<std::uint32_t>(s.size());
    for (int shift = 24; shift >= 0; shift -= 8) {
      out.push_back(static_cast<std::uint8_t>(n >> shift));
    }
    out.insert(out.end(), s.begin(), s.end());
  };
  auto id = [&out](const ObjectId& oid) {
    out.insert(out.end(), oid.raw().begin(), oid.raw().end());
  };
  auto u32 = [&out](std::uint32_t n) {
    for (int shift = 24; shift >= 0; shift -= 8) {
      out.push_back(static_cast<std::uint8_t>(n >> shift));
    }
  };

  str(c.author);
  str(c.model_id);
  id(c.commit_id);
  str(c.node_id);
  u32(static_cast<std::uint32_t>(c.subjects.size()));
  for (const auto& s : c.subjects) str(s);
  id(c.payload_digest);
  u32(static_cast<std::uint32_t>(c.upstream.size()));
  for (const auto& u : c.upstream) id(u);
  std::uint64_t seq = c.seq;
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<std::uint8_t>(seq >> shift));
  }
  return out;
}

ObjectId contribution_id(const Contribution& c) {
  return ObjectId::of(encode(c));
}

ObjectId chain_digest(const ObjectId& previous, const ObjectId& id) {
  Bytes buf;
  buf.insert(buf.end(), previous.raw().begin(), previous.raw().end());
  buf.insert(buf.end(), id.raw().begin(), id.raw().end());
  return ObjectId::of(buf);
}

const Contribution* ProvenanceLog::find(const ObjectId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return nullptr;
  return &entries_[it->second];
}

ObjectId ProvenanceLog::record(const ContributionDraft& draft,
                               const Workspace& at_commit) {
  for (const auto& upstream_id : draft.upstream) {
    if (!index_.contains(upstream_id)) {
      throw Error(ErrorCode::UnknownUpstream,
                  "upstream contribution " + upstream_id.hex() + " not in log");
    }
  }
  if (!at_commit.has_model(draft.model_id)) {
    throw Error(ErrorCode::UnknownModel,
                "model '" + draft.model_id + "' not in the referenced commit");
  }
  const ModelGraph& model = at_commit.model(draft.model_id);
  if (!model.nodes.contains(draft.node_id)) {
    throw Error(ErrorCode::UnknownNode,
                "node '" + draft.node_id + "' not in model '" +
                    draft.model_id + "'");
  }

  // Same-model, same-commit upstream links must agree with the stream:
  // the upstream contribution's node must be upstream of (or equal to)
  // this one's. Cross-model and cross-commit links are unrestricted.
  std::set<NodeId> upstream_nodes;
  bool upstream_nodes_ready = false;
  for (const auto& upstream_id : draft.upstream) {
    const Contribution& dep = *find(upstream_id);
    if (dep.model_id != draft.model_id || dep.commit_id != draft.commit_id) {
      continue;
    }
    if (!upstream_nodes_ready) {
      upstream_nodes = upstream_set(model, draft.node_id);
      upstream_nodes_ready = true;
    }
    if (dep.node_id != draft.node_id && !upstream_nodes.contains(dep.node_id)) {
      throw Error(ErrorCode::UpstreamViolation,
                  "contribution at node '" + dep.node_id +
                      "' is not upstream of '" + draft.node_id +
                      "' in model '" + draft.model_id + "'");
    }
  }

  Contribution entry;
  entry.seq = entries_.size();
  entry.author = draft.author;
  entry.model_id = draft.model_id;
  entry.commit_id = draft.commit_id;
  entry.node_id = draft.node_id;
  entry.subjects = model.subjects;  // snapshot, not live
  entry.payload_digest = draft.payload_digest;
  entry.upstream = draft.upstream;
  entry.id = contribution_id(entry);
  entry.chain = chain_digest(head_, entry.id);

  head_ = entry.chain;
  index_.emplace(entry.id, entries_.size());
  entries_.push_back(std::move(entry));
  return entries_.back().id;
}

ObjectId ProvenanceLog::record(const ContributionDraft& draft,
                               const ObjectStore& store) {
  if (!store.contains(draft.commit_id)) {
    throw Error(ErrorCode::UnknownCommit,
                "commit " + draft.commit_id.hex() + " not found");
  }
  return record(draft, checkout(store, draft.commit_id));
}

void ProvenanceLog::append_raw(Contribution entry) {
  head_ = entry.chain;
  index_.emplace(entry.id, entries_.size());
  entries_.push_back(std::move(entry));
}

VerificationReport verify(const ProvenanceLog& log) {
  ObjectId previous;
  for (std::uint64_t i = 0; i < log.size(); ++i) {
    const Contribution& entry = log.entries()[i];
    if (entry.seq != i) {
      return {false, i, "seq mismatch"};
    }
    for (const auto& upstream_id : entry.upstream) {
      const Contribution* dep = log.find(upstream_id);
      if (dep == nullptr || dep->seq >= i) {
        return {false, i, "upstream does not precede entry"};
      }
    }
    if (contribution_id(entry) != entry.id) {
      return {false, i, "contribution id mismatch"};
    }
    ObjectId expected_chain = chain_digest(previous, entry.id);
    if (expected_chain != entry.chain) {
      return {false, i, "chain digest mismatch"};
    }
    previous = entry.chain;
  }
  return {};
}

std::uint64_t ContributionGraph::in_degree(const ObjectId& c) const {
  if (!vertices.contains(c)) {
    throw Error(ErrorCode::UnknownContribution,
                "contribution " + c.hex() + " not in graph");
  }
  auto it = in_degrees.find(c);
  return it == in_degrees.end() ? 0 : it->second;
}

ContributionGraph derive_graph(const ProvenanceLog& log) {
  VerificationReport report = verify(log);
  if (!report.clean) {
    throw Error(ErrorCode::CorruptLog,
                "log fails verification at entry " +
                    std::to_string(report.position.value_or(0)) + ": " +
                    report.detail);
  }
  ContributionGraph graph;
  for (const Contribution& entry : log.entries()) {
    graph.vertices.insert(entry.id);
    for (const ObjectId& upstream_id : entry.upstream) {
      graph.edges.emplace(entry.id, upstream_id);
      graph.in_degrees[upstream_id] += 1;
    }
  }
  return graph;
}

namespace {

nlohmann::json hex_array(const std::set<ObjectId>& ids) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& oid : ids) arr.push_back(oid.hex());
  return arr;
}

}  // namespace

std::string to_log_line(const Contribution& c) {
  nlohmann::ordered_json line;
  line["id"] = c.id.hex();
  line["seq"] = c.seq;
  line["author"] = c.author;
  line["model_id"] = c.model_id;
  line["commit_id"] = c.commit_id.hex();
  line["node_id"] = c.node_id;
  line["subjects"] = c.subjects;
  line["payload_digest"] = c.payload_digest.hex();
  line["upstream"] = hex_array(c.upstream);
  line["chain"] = c.chain.hex();
  return line.dump();
}

Contribution from_log_line(const std::string& line) {
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(line);
    Contribution c;
    c.id = ObjectId::from_hex(parsed.at("id").get<std::string>());
    c.seq = parsed.at("seq").get<std::uint64_t>();
    c.author = parsed.at("author").get<std::string>();
    c.model_id = parsed.at("model_id").get<std::string>();
    c.commit_id = ObjectId::from_hex(parsed.at("commit_id").get<std::string>());
    c.node_id = parsed.at("node_id").get<std::string>();
    for (const auto& s : parsed.at("subjects")) {
      c.subjects.insert(s.get<std::string>());
    }
    c.payload_digest =
        ObjectId::from_hex(parsed.at("payload_digest").get<std::string>());
    for (const auto& u : parsed.at("upstream")) {
      c.upstream.insert(ObjectId::from_hex(u.get<std::string>()));
    }
    c.chain = ObjectId::from_hex(parsed.at("chain").get<std::string>());
    return c;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::CorruptLog,
                std::string("malformed log line: ") + e.what());
  }
}

ProvenanceLog load_log(const std::filesystem::path& path) {
  ProvenanceLog log;
  if (!std::filesystem::exists(path)) return log;
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::StorageError, "cannot read " + path.string());
  }
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      log.append_raw(from_log_line(line));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ParseError) {
        throw Error(ErrorCode::CorruptLog,
                    std::string("malformed log line: ") + e.what());
      }
      throw;
    }
  }
  return log;
}

void append_log_entries(const std::filesystem::path& path,
                        const std::vector<Contribution>& entries) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) {
    throw Error(ErrorCode::StorageError, "cannot append to " + path.string());
  }
  for (const auto& entry : entries) {
    out << to_log_line(entry) << '\n';
  }
  out.flush();
  if (!out) {
    throw Error(ErrorCode::StorageError, "short write to " + path.string());
  }
}

}  // namespace proofgraph
