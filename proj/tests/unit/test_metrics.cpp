#include <random>

#include "doctest.h"
#include "proofgraph/errors.hpp"
#include "proofgraph/metrics.hpp"
#include "test_support.hpp"

using namespace proofgraph;
using testsupport::append_synthetic;
using testsupport::digest_of;

namespace {

// Brute-force oracle: O(V*E) inbound-edge scan, no precomputed degrees.
std::uint64_t indegree_oracle(const ContributionGraph& g, const ObjectId& c) {
  std::uint64_t count = 0;
  for (const auto& [from, to] : g.edges) {
    if (to == c) ++count;
  }
  return count;
}

// Filtered-summation oracle for relevancy.
std::uint64_t relevancy_oracle(const ContributionGraph& g,
                               const ProvenanceLog& log,
                               const std::string& participant,
                               const std::string& subject) {
  std::uint64_t total = 0;
  for (const auto& entry : log.entries()) {
    if (entry.author == participant && entry.subjects.contains(subject)) {
      total += indegree_oracle(g, entry.id);
    }
  }
  return total;
}

struct SyntheticLog {
  ProvenanceLog log;
  std::vector<ObjectId> ids;

  ObjectId add(const std::string& author, const std::set<std::string>& subjects,
               const std::set<ObjectId>& upstream) {
    ObjectId id = append_synthetic(
        log, author, "m", ObjectId{}, "n", subjects,
        digest_of("p" + std::to_string(ids.size())), upstream);
    ids.push_back(id);
    return id;
  }
};

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("quality is the raw in-degree") {
  SyntheticLog s;
  ObjectId c1 = s.add("a", {}, {});
  ObjectId c2 = s.add("a", {}, {c1});
  ObjectId c3 = s.add("a", {}, {c2});
  ContributionGraph g = derive_graph(s.log);

  // chain c3 -> c2 -> c1 (edges run dependent -> dependency)
  CHECK(quality(g, c1) == 1);
  CHECK(quality(g, c2) == 1);
  CHECK(quality(g, c3) == 0);

  SyntheticLog isolated;
  ObjectId lone = isolated.add("a", {}, {});
  CHECK(quality(derive_graph(isolated.log), lone) == 0);

  CHECK_THROWS_AS(quality(g, digest_of("nope")), Error);
}

TEST_CASE("quality equals the brute-force oracle on random graphs") {
  std::mt19937 rng(113);
  std::uniform_int_distribution<int> size(1, 50);
  std::uniform_int_distribution<int> author_pick(0, 5);
  for (int round = 0; round < 40; ++round) {
    SyntheticLog s;
    int n = size(rng);
    for (int i = 0; i < n; ++i) {
      std::set<ObjectId> upstream;
      if (!s.ids.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, s.ids.size() - 1);
        std::uniform_int_distribution<int> deps(0, 4);
        for (int d = deps(rng); d > 0; --d) upstream.insert(s.ids[pick(rng)]);
      }
      s.add("p" + std::to_string(author_pick(rng)),
            {"s" + std::to_string(author_pick(rng))}, upstream);
    }
    ContributionGraph g = derive_graph(s.log);
    std::uint64_t total = 0;
    for (const auto& id : s.ids) {
      CHECK(quality(g, id) == indegree_oracle(g, id));
      total += quality(g, id);
    }
    CHECK(total == g.edges.size());  // every edge is inbound somewhere
  }
}

TEST_CASE("relevancy sums quality per participant and subject") {
  SyntheticLog s;
  // p authors c1 (quality 2 via d1, d2) and c2 (quality 3 via d3, d4, d5),
  // both tagged {s}
  ObjectId c1 = s.add("p", {"s"}, {});
  ObjectId c2 = s.add("p", {"s"}, {});
  s.add("x", {}, {c1});
  s.add("x", {}, {c1});
  s.add("y", {}, {c2});
  s.add("y", {}, {c2});
  s.add("y", {}, {c2});
  ContributionGraph g = derive_graph(s.log);

  CHECK(relevancy(g, s.log, "p", "s") == 5);
  CHECK(relevancy(g, s.log, "p", "s") == relevancy_oracle(g, s.log, "p", "s"));
  CHECK(relevancy(g, s.log, "nobody", "s") == 0);
  CHECK(relevancy(g, s.log, "p", "unknown-subject") == 0);
}

TEST_CASE("a multi-subject contribution counts toward every subject") {
  SyntheticLog s;
  ObjectId c = s.add("p", {"s1", "s2"}, {});
  s.add("x", {}, {c});
  s.add("y", {}, {c});
  ContributionGraph g = derive_graph(s.log);

  CHECK(relevancy(g, s.log, "p", "s1") == 2);
  CHECK(relevancy(g, s.log, "p", "s2") == 2);
  CHECK(relevancy(g, s.log, "p", "s1") ==
        relevancy_oracle(g, s.log, "p", "s1"));
  // influence double counts by definition: k subjects add k x quality
  CHECK(influence(g, s.log, "p") == 4);
}

TEST_CASE("influence sums relevancy across the observed subject universe") {
  SyntheticLog s;
  ObjectId c1 = s.add("p", {"s1"}, {});
  ObjectId c2 = s.add("p", {"s2"}, {});
  for (int i = 0; i < 5; ++i) s.add("x", {}, {c1});
  for (int i = 0; i < 2; ++i) s.add("x", {}, {c2});
  ContributionGraph g = derive_graph(s.log);

  CHECK(relevancy(g, s.log, "p", "s1") == 5);
  CHECK(relevancy(g, s.log, "p", "s2") == 2);
  CHECK(influence(g, s.log, "p") == 7);
  CHECK(influence(g, s.log, "ghost") == 0);
}

TEST_CASE("untagged contributions have zero metric effect") {
  SyntheticLog s;
  ObjectId c = s.add("p", {}, {});
  s.add("x", {"s"}, {c});  // c has quality 1 but no subjects
  ContributionGraph g = derive_graph(s.log);
  CHECK(quality(g, c) == 1);
  CHECK(influence(g, s.log, "p") == 0);
  CHECK(relevancy(g, s.log, "p", "s") == 0);
}

TEST_CASE("metrics are monotone under log growth") {
  std::mt19937 rng(127);
  SyntheticLog s;
  std::uniform_int_distribution<int> author_pick(0, 3);
  std::map<std::string, std::uint64_t> last;
  for (int i = 0; i < 20; ++i) {
    std::set<ObjectId> upstream;
    if (!s.ids.empty()) upstream.insert(s.ids[i % s.ids.size()]);
    s.add("p" + std::to_string(author_pick(rng)), {"s"}, upstream);

    ContributionGraph g = derive_graph(s.log);
    for (int a = 0; a < 4; ++a) {
      std::string participant = "p" + std::to_string(a);
      std::uint64_t now = influence(g, s.log, participant);
      CHECK(now >= last[participant]);
      last[participant] = now;
    }
  }
}

TEST_CASE("rank_participants orders by score then id") {
  SyntheticLog s;
  ObjectId c1 = s.add("alice", {"s"}, {});
  ObjectId c2 = s.add("bob", {"s"}, {});
  s.add("zed", {}, {c1});
  s.add("zed", {}, {c1});
  s.add("zed", {}, {c2});
  ContributionGraph g = derive_graph(s.log);

  auto ranking = rank_participants(g, s.log);
  REQUIRE(ranking.size() == 3);
  CHECK(ranking[0] == std::pair<std::string, std::uint64_t>{"alice", 2});
  CHECK(ranking[1] == std::pair<std::string, std::uint64_t>{"bob", 1});
  CHECK(ranking[2] == std::pair<std::string, std::uint64_t>{"zed", 0});

  auto by_subject = rank_participants(g, s.log, std::string("s"));
  CHECK(by_subject[0].first == "alice");

  CHECK(rank_participants(derive_graph(ProvenanceLog{}), ProvenanceLog{})
            .empty());
}

TEST_CASE("report invariant: influence is the row sum of relevancy") {
  std::mt19937 rng(131);
  std::uniform_int_distribution<int> author_pick(0, 4);
  std::uniform_int_distribution<int> subject_count(0, 3);
  SyntheticLog s;
  for (int i = 0; i < 40; ++i) {
    std::set<ObjectId> upstream;
    if (!s.ids.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, s.ids.size() - 1);
      upstream.insert(s.ids[pick(rng)]);
    }
    std::set<std::string> subjects;
    for (int k = subject_count(rng); k > 0; --k) {
      subjects.insert("s" + std::to_string(k));
    }
    s.add("p" + std::to_string(author_pick(rng)), subjects, upstream);
  }
  ContributionGraph g = derive_graph(s.log);
  MetricsReport report = compute_metrics(g, s.log);
  for (const auto& [participant, total] : report.influence) {
    std::uint64_t row_sum = 0;
    for (const auto& [key, value] : report.relevancy) {
      if (key.first == participant) row_sum += value;
    }
    CHECK(total == row_sum);
    CHECK(total == influence(g, s.log, participant));
  }
  for (const auto& [key, value] : report.relevancy) {
    CHECK(value == relevancy_oracle(g, s.log, key.first, key.second));
  }
}

}  // TEST_SUITE
