#pragma once

#include <cstdint>
#include <vector>

#include "proofgraph/object_store.hpp"
#include "proofgraph/provenance.hpp"
#include "proofgraph/workspace.hpp"

namespace proofgraph {
namespace fixtures {

inline constexpr std::int64_t kTimestamp = 1537228800;  // 2018-09-18 UTC

/// The shared-processor example workspace: phi1 and phi2 share processor P,
/// phi2 and phi3 share Q, phi4 is disjoint. clone_chain(phi1) is therefore
/// {phi1, phi2, phi3}.
Workspace chain_workspace();

struct Seeded {
  ObjectId commit_id;
  std::vector<ObjectId> contributions;
};

/// Commits the chain workspace and records a small contribution log:
///   k0 alice @ phi1/P                  (quality 3: k1, k2, k3 depend on it)
///   k1 bob   @ phi2/Q  upstream {k0}   (quality 1)
///   k2 carol @ phi3/Q  upstream {k0,k1}
///   k3 alice @ phi1/snk1 upstream {k0}
Seeded seed(ObjectStore& store, ProvenanceLog& log);

/// A wide dataflow model with realistic node payloads (source params,
/// descriptions, ownership facets), used to measure structural sharing
/// against the full-copy baseline.
ModelGraph large_model(const std::string& model_id, std::size_t node_count);

}  // namespace fixtures
}  // namespace proofgraph
