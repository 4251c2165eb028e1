#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "proofgraph/object_id.hpp"
#include "proofgraph/object_store.hpp"
#include "proofgraph/workspace.hpp"

namespace proofgraph {

/// Shareable, formal evidence of an investigation step, tied to a model
/// version. Subjects are a snapshot of the model's tags at recording time,
/// so later retagging never changes recorded metrics.
struct Contribution {
  ObjectId id;  // hash of the canonical encoding below (fields minus id/chain)
  std::uint64_t seq = 0;
  std::string author;
  std::string model_id;
  ObjectId commit_id;
  std::string node_id;
  std::set<std::string> subjects;
  ObjectId payload_digest;
  std::set<ObjectId> upstream;
  ObjectId chain;  // running hash: sha256(prev_chain || id)

  bool operator==(const Contribution&) const = default;
};

struct ContributionDraft {
  std::string author;
  std::string model_id;
  ObjectId commit_id;
  std::string node_id;
  ObjectId payload_digest;
  std::set<ObjectId> upstream;
};

struct VerificationReport {
  bool clean = true;
  std::optional<std::uint64_t> position;  // first diverging entry
  std::string detail;
};

/// The contribution graph phi = (C, E). Edges run dependent -> dependency,
/// so the inbound edges of a contribution are its dependents.
struct ContributionGraph {
  std::set<ObjectId> vertices;
  std::set<std::pair<ObjectId, ObjectId>> edges;

  std::uint64_t in_degree(const ObjectId& c) const;  // UnknownContribution

  std::map<ObjectId, std::uint64_t> in_degrees;  // filled by derive_graph
};

/// Append-only, hash-chained record of contributions. Entries never change
/// once written; the head digest commits to the whole prefix.
class ProvenanceLog {
 public:
  const std::vector<Contribution>& entries() const { return entries_; }
  const ObjectId& head_digest() const { return head_; }
  bool empty() const { return entries_.empty(); }
  std::uint64_t size() const { return entries_.size(); }

  const Contribution* find(const ObjectId& id) const;

  /// Assigns seq, snapshots the model's subjects at draft.commit_id,
  /// computes the id, appends and advances the chain. `at_commit` must be
  /// the checkout of draft.commit_id.
  ObjectId record(const ContributionDraft& draft, const Workspace& at_commit);

  /// Convenience overload that checks the commit out of the store.
  ObjectId record(const ContributionDraft& draft, const ObjectStore& store);

  /// Re-appends an already-recorded entry during file load, re-deriving
  /// nothing; verification happens separately.
  void append_raw(Contribution entry);

 private:
  std::vector<Contribution> entries_;
  std::map<ObjectId, std::uint64_t> index_;
  ObjectId head_;  // zero when empty
};

Bytes encode(const Contribution& c);  // canonical bytes hashed into c.id
ObjectId contribution_id(const Contribution& c);
ObjectId chain_digest(const ObjectId& previous, const ObjectId& id);

/// Recomputes every contribution id and the hash chain; reports the first
/// divergence or clean.
VerificationReport verify(const ProvenanceLog& log);

/// vertices = all contribution ids; edges = (c, u) for each u in
/// c.upstream. Requires a verifying log (CorruptLog otherwise).
ContributionGraph derive_graph(const ProvenanceLog& log);

// Log file: one contribution per line as canonical JSON with keys in fixed
// order (id, seq, author, model_id, commit_id, node_id, subjects,
// payload_digest, upstream, chain); UTF-8, LF line endings.
std::string to_log_line(const Contribution& c);
Contribution from_log_line(const std::string& line);  // CorruptLog on error

ProvenanceLog load_log(const std::filesystem::path& path);
void append_log_entries(const std::filesystem::path& path,
                        const std::vector<Contribution>& entries);

}  // namespace proofgraph
