#include "proofgraph/metrics.hpp"

#include <algorithm>
#include <set>

namespace proofgraph {

std::uint64_t quality(const ContributionGraph& graph, const ObjectId& c) {
  return graph.in_degree(c);
}

std::uint64_t relevancy(const ContributionGraph& graph,
                        const ProvenanceLog& log,
                        const std::string& participant,
                        const std::string& subject) {
  std::uint64_t total = 0;
  for (const Contribution& entry : log.entries()) {
    if (entry.author != participant) continue;
    if (!entry.subjects.contains(subject)) continue;
    total += graph.in_degree(entry.id);
  }
  return total;
}

std::uint64_t influence(const ContributionGraph& graph,
                        const ProvenanceLog& log,
                        const std::string& participant) {
  std::set<std::string> universe;
  for (const Contribution& entry : log.entries()) {
    universe.insert(entry.subjects.begin(), entry.subjects.end());
  }
  std::uint64_t total = 0;
  for (const auto& subject : universe) {
    total += relevancy(graph, log, participant, subject);
  }
  return total;
}

std::vector<std::pair<std::string, std::uint64_t>> rank_participants(
    const ContributionGraph& graph, const ProvenanceLog& log,
    const std::optional<std::string>& subject) {
  std::set<std::string> participants;
  for (const Contribution& entry : log.entries()) {
    participants.insert(entry.author);
  }
  std::vector<std::pair<std::string, std::uint64_t>> ranking;
  ranking.reserve(participants.size());
  for (const auto& participant : participants) {
    std::uint64_t score = subject
                              ? relevancy(graph, log, participant, *subject)
                              : influence(graph, log, participant);
    ranking.emplace_back(participant, score);
  }
  std::stable_sort(ranking.begin(), ranking.end(),
                   [](const auto& a, const auto& b) {
                     if (a.second != b.second) return a.second > b.second;
                     return a.first < b.first;
                   });
  return ranking;
}

MetricsReport compute_metrics(const ContributionGraph& graph,
                              const ProvenanceLog& log) {
  MetricsReport report;
  std::set<std::string> universe;
  for (const Contribution& entry : log.entries()) {
    universe.insert(entry.subjects.begin(), entry.subjects.end());
  }
  for (const Contribution& entry : log.entries()) {
    std::uint64_t q = graph.in_degree(entry.id);
    report.quality[entry.id.hex()] = q;
    report.influence.try_emplace(entry.author, 0);
    for (const auto& subject : entry.subjects) {
      report.relevancy[{entry.author, subject}] += q;
      report.influence[entry.author] += q;
    }
  }
  // Every (participant, subject) pair over the observed universe is
  // defined, including the zero entries.
  for (const auto& [participant, total] : report.influence) {
    for (const auto& subject : universe) {
      report.relevancy.try_emplace({participant, subject}, 0);
    }
  }
  return report;
}

}  // namespace proofgraph
