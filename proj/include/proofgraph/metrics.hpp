#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "proofgraph/provenance.hpp"

namespace proofgraph {

// Collaboration metrics over the contribution graph. Quality is the raw
// in-degree of a contribution (its count of dependents). Relevancy of a
// participant per subject sums the quality of their contributions tagged
// with that subject; influence sums relevancy across every subject seen in
// the log. A contribution tagged with k subjects therefore adds k times
// its quality to influence; that is the definition, kept as-is.

struct MetricsReport {
  std::map<std::string, std::uint64_t> quality;  // contribution hex -> value
  std::map<std::pair<std::string, std::string>, std::uint64_t>
      relevancy;  // (participant, subject)
  std::map<std::string, std::uint64_t> influence;  // participant
};

std::uint64_t quality(const ContributionGraph& graph, const ObjectId& c);

std::uint64_t relevancy(const ContributionGraph& graph,
                        const ProvenanceLog& log,
                        const std::string& participant,
                        const std::string& subject);

std::uint64_t influence(const ContributionGraph& graph,
                        const ProvenanceLog& log,
                        const std::string& participant);

/// Descending by relevancy (when a subject is given) or influence, ties
/// broken by lexicographic participant id.
std::vector<std::pair<std::string, std::uint64_t>> rank_participants(
    const ContributionGraph& graph, const ProvenanceLog& log,
    const std::optional<std::string>& subject = std::nullopt);

MetricsReport compute_metrics(const ContributionGraph& graph,
                              const ProvenanceLog& log);

}  // namespace proofgraph
