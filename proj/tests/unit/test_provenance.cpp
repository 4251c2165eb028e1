#include <functional>
#include <random>

#include "doctest.h"
#include "proofgraph/errors.hpp"
#include "proofgraph/fixtures.hpp"
#include "proofgraph/provenance.hpp"
#include "proofgraph/version_store.hpp"
#include "test_support.hpp"

using namespace proofgraph;
using testsupport::append_synthetic;
using testsupport::digest_of;

namespace {

ObjectId zero_id() { return ObjectId{}; }

// From-scratch chain oracle: recompute every link with raw sha256 calls.
bool chain_oracle_ok(const ProvenanceLog& log) {
  std::array<std::uint8_t, 32> prev{};
  for (const auto& entry : log.entries()) {
    Bytes buf(prev.begin(), prev.end());
    buf.insert(buf.end(), entry.id.raw().begin(), entry.id.raw().end());
    auto link = sha256(buf);
    if (link != entry.chain.raw()) return false;
    prev = link;
  }
  return true;
}

// DFS cycle oracle over the contribution graph.
bool graph_acyclic(const ContributionGraph& g) {
  std::map<ObjectId, std::vector<ObjectId>> adj;
  for (const auto& [a, b] : g.edges) adj[a].push_back(b);
  std::map<ObjectId, int> color;
  std::function<bool(const ObjectId&)> dfs = [&](const ObjectId& u) {
    color[u] = 1;
    for (const auto& v : adj[u]) {
      if (color[v] == 1) return false;
      if (color[v] == 0 && !dfs(v)) return false;
    }
    color[u] = 2;
    return true;
  };
  for (const auto& v : g.vertices) {
    if (color[v] == 0 && !dfs(v)) return false;
  }
  return true;
}

ProvenanceLog random_log(std::mt19937& rng, int entries) {
  ProvenanceLog log;
  std::vector<ObjectId> ids;
  std::uniform_int_distribution<int> author_pick(0, 4);
  std::uniform_int_distribution<int> subject_count(0, 3);
  for (int i = 0; i < entries; ++i) {
    std::set<ObjectId> upstream;
    if (!ids.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, ids.size() - 1);
      std::uniform_int_distribution<int> deps(0, 3);
      for (int d = deps(rng); d > 0; --d) upstream.insert(ids[pick(rng)]);
    }
    std::set<std::string> subjects;
    for (int s = subject_count(rng); s > 0; --s) {
      subjects.insert("subj" + std::to_string(s));
    }
    ObjectId id = append_synthetic(
        log, "author" + std::to_string(author_pick(rng)), "model",
        digest_of("commit"), "node", subjects,
        digest_of("payload" + std::to_string(i)), upstream);
    ids.push_back(id);
  }
  return log;
}

}  // namespace

TEST_SUITE("provenance") {

TEST_CASE("record into an empty log") {
  testsupport::TempDir dir;
  ObjectStore store = ObjectStore::init(dir.path());
  Workspace w = fixtures::chain_workspace();
  ObjectId commit = commit_workspace(store, w, {}, "alice", "base", 1);

  ProvenanceLog log;
  ContributionDraft draft;
  draft.author = "alice";
  draft.model_id = "phi1";
  draft.commit_id = commit;
  draft.node_id = "P";
  draft.payload_digest = digest_of("evidence");
  ObjectId id = log.record(draft, store);

  CHECK(log.size() == 1);
  CHECK(log.entries()[0].seq == 0);
  CHECK(log.entries()[0].id == id);
  // subjects are a snapshot of the model's tags
  CHECK(log.entries()[0].subjects == std::set<std::string>{"momentum"});
  CHECK(verify(log).clean);
}

TEST_CASE("record validates upstream, commit, model and node") {
  testsupport::TempDir dir;
  ObjectStore store = ObjectStore::init(dir.path());
  Workspace w = fixtures::chain_workspace();
  ObjectId commit = commit_workspace(store, w, {}, "alice", "base", 1);

  ProvenanceLog log;
  ContributionDraft draft;
  draft.author = "a";
  draft.model_id = "phi1";
  draft.commit_id = commit;
  draft.node_id = "P";
  draft.payload_digest = digest_of("x");

  SUBCASE("unknown upstream") {
    draft.upstream = {digest_of("nonexistent")};
    try {
      log.record(draft, store);
      FAIL("accepted unknown upstream");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnknownUpstream);
    }
  }
  SUBCASE("unknown commit") {
    draft.commit_id = digest_of("no such commit");
    try {
      log.record(draft, store);
      FAIL("accepted unknown commit");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnknownCommit);
    }
  }
  SUBCASE("unknown model") {
    draft.model_id = "phi9";
    CHECK_THROWS_AS(log.record(draft, store), Error);
  }
  SUBCASE("unknown node") {
    draft.node_id = "ghost";
    try {
      log.record(draft, store);
      FAIL("accepted unknown node");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnknownNode);
    }
  }
}

TEST_CASE("same-model upstream links must follow the stream") {
  testsupport::TempDir dir;
  ObjectStore store = ObjectStore::init(dir.path());
  Workspace w = fixtures::chain_workspace();
  ObjectId commit = commit_workspace(store, w, {}, "alice", "base", 1);

  ProvenanceLog log;
  ContributionDraft at_sink;  // snk1 is downstream of P in phi1
  at_sink.author = "a";
  at_sink.model_id = "phi1";
  at_sink.commit_id = commit;
  at_sink.node_id = "snk1";
  at_sink.payload_digest = digest_of("sink evidence");
  ObjectId sink_contribution = log.record(at_sink, store);

  // Depending on downstream evidence within the same model and commit
  // contradicts the stream order.
  ContributionDraft at_p = at_sink;
  at_p.node_id = "P";
  at_p.upstream = {sink_contribution};
  try {
    log.record(at_p, store);
    FAIL("accepted a downstream dependency");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UpstreamViolation);
  }

  // Same node is allowed (re-execution), as are cross-model links.
  ContributionDraft again = at_sink;
  again.upstream = {sink_contribution};
  CHECK_NOTHROW(log.record(again, store));

  ContributionDraft other_model;
  other_model.author = "b";
  other_model.model_id = "phi4";  // sink_contribution is from phi1
  other_model.commit_id = commit;
  other_model.node_id = "R";
  other_model.payload_digest = digest_of("cross");
  other_model.upstream = {sink_contribution};
  CHECK_NOTHROW(log.record(other_model, store));
}

TEST_CASE("50 random records: strictly increasing seq, chain verifies") {
  std::mt19937 rng(97);
  ProvenanceLog log = random_log(rng, 50);
  for (std::uint64_t i = 0; i < log.size(); ++i) {
    CHECK(log.entries()[i].seq == i);
  }
  CHECK(verify(log).clean);
  CHECK(chain_oracle_ok(log));
}

TEST_CASE("verify pinpoints a tampered entry") {
  std::mt19937 rng(101);
  ProvenanceLog pristine = random_log(rng, 8);
  CHECK(verify(pristine).clean);

  // rebuild with one byte flipped in entry 3's payload digest
  ProvenanceLog tampered;
  for (std::uint64_t i = 0; i < pristine.size(); ++i) {
    Contribution entry = pristine.entries()[i];
    if (i == 3) {
      auto raw = entry.payload_digest.raw();
      raw[0] ^= 0x01;
      entry.payload_digest = ObjectId(raw);
    }
    tampered.append_raw(std::move(entry));
  }
  VerificationReport report = verify(tampered);
  CHECK_FALSE(report.clean);
  CHECK(report.position == 3);
  CHECK_THROWS_AS(derive_graph(tampered), Error);
}

TEST_CASE("derive_graph lists exactly the upstream edges") {
  ProvenanceLog log;
  ObjectId c1 = append_synthetic(log, "a", "m", zero_id(), "n", {},
                                 digest_of("p1"), {});
  ObjectId c2 = append_synthetic(log, "a", "m", zero_id(), "n", {},
                                 digest_of("p2"), {c1});
  ObjectId c3 = append_synthetic(log, "a", "m", zero_id(), "n", {},
                                 digest_of("p3"), {c2});
  ContributionGraph g = derive_graph(log);
  CHECK(g.vertices == std::set<ObjectId>{c1, c2, c3});
  CHECK(g.edges == std::set<std::pair<ObjectId, ObjectId>>{{c2, c1}, {c3, c2}});

  CHECK(derive_graph(ProvenanceLog{}).vertices.empty());
}

TEST_CASE("derived graphs are acyclic and consistent over fuzzed logs") {
  std::mt19937 rng(103);
  for (int round = 0; round < 30; ++round) {
    ProvenanceLog log = random_log(rng, 25);
    // verify clean implies derive_graph succeeds
    REQUIRE(verify(log).clean);
    ContributionGraph g = derive_graph(log);
    CHECK(graph_acyclic(g));
    CHECK(g.vertices.size() == log.size());
  }
}

TEST_CASE("log lines use the fixed key order") {
  ProvenanceLog log;
  append_synthetic(log, "alice", "phi1", digest_of("c"), "P", {"momentum"},
                   digest_of("p"), {});
  std::string line = to_log_line(log.entries()[0]);
  const char* keys[] = {"\"id\"",       "\"seq\"",      "\"author\"",
                        "\"model_id\"", "\"commit_id\"", "\"node_id\"",
                        "\"subjects\"", "\"payload_digest\"", "\"upstream\"",
                        "\"chain\""};
  std::size_t position = 0;
  for (const char* key : keys) {
    std::size_t at = line.find(key);
    REQUIRE(at != std::string::npos);
    CHECK(at >= position);
    position = at;
  }
  CHECK(from_log_line(line) == log.entries()[0]);
}

TEST_CASE("log file round trip and appends") {
  testsupport::TempDir dir;
  std::mt19937 rng(107);
  ProvenanceLog log = random_log(rng, 12);

  auto path = dir.path() / "provenance.log";
  append_log_entries(path, log.entries());
  ProvenanceLog loaded = load_log(path);
  REQUIRE(loaded.size() == log.size());
  CHECK(loaded.entries() == log.entries());
  CHECK(verify(loaded).clean);

  // append-only growth
  ObjectId extra = append_synthetic(loaded, "late", "m", zero_id(), "n", {},
                                    digest_of("late"), {});
  append_log_entries(path, {loaded.entries().back()});
  ProvenanceLog reloaded = load_log(path);
  CHECK(reloaded.size() == log.size() + 1);
  CHECK(reloaded.entries().back().id == extra);
  CHECK(verify(reloaded).clean);

  CHECK(load_log(dir.path() / "missing.log").empty());
}

TEST_CASE("malformed log lines are CorruptLog") {
  CHECK_THROWS_AS(from_log_line("not json"), Error);
  CHECK_THROWS_AS(from_log_line("{\"id\":\"zz\"}"), Error);
  try {
    from_log_line("{}");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CorruptLog);
  }
}

}  // TEST_SUITE
