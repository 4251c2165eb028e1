#include "proofgraph/fixtures.hpp"

#include "proofgraph/canonical.hpp"
#include "proofgraph/version_store.hpp"

namespace proofgraph {
namespace fixtures {

namespace {

Node endpoint(const std::string& id, NodeKind kind, const std::string& label) {
  Node node;
  node.id = id;
  node.kind = kind;
  node.label = label;
  return node;
}

Node processor_p() {
  Node node;
  node.id = "P";
  node.kind = NodeKind::Processor;
  node.label = "momentum-crossover";
  node.params = {{"fast", "5"}, {"slow", "34"}};
  node.facets = {{"owner", "alice"}, {"window", "20"}};
  return node;
}

Node processor_q() {
  Node node;
  node.id = "Q";
  node.kind = NodeKind::Processor;
  node.label = "volatility-filter";
  node.params = {{"lookback", "90"}};
  node.facets = {{"owner", "bob"}};
  return node;
}

Node processor_r() {
  Node node;
  node.id = "R";
  node.kind = NodeKind::Processor;
  node.label = "fx-carry";
  return node;
}

ModelGraph build(const std::string& model_id, std::vector<Node> nodes,
                 std::vector<std::pair<std::string, std::string>> edges,
                 std::vector<std::string> subjects) {
  ModelGraph graph;
  graph.model_id = model_id;
  for (auto& node : nodes) graph = add_node(graph, std::move(node));
  for (const auto& [from, to] : edges) graph = add_edge(graph, from, to);
  for (const auto& subject : subjects) graph = tag_subject(graph, subject);
  return graph;
}

}  // namespace

Workspace chain_workspace() {
  Workspace workspace;
  workspace.put_model(build(
      "phi1",
      {endpoint("src1", NodeKind::Source, "prices"), processor_p(),
       endpoint("snk1", NodeKind::Sink, "signal")},
      {{"src1", "P"}, {"P", "snk1"}}, {"momentum"}));
  workspace.put_model(build(
      "phi2",
      {endpoint("src2", NodeKind::Source, "prices"), processor_p(),
       processor_q(), endpoint("snk2", NodeKind::Sink, "orders")},
      {{"src2", "P"}, {"P", "Q"}, {"Q", "snk2"}}, {"momentum", "value"}));
  workspace.put_model(build(
      "phi3",
      {endpoint("src3", NodeKind::Source, "fundamentals"), processor_q(),
       endpoint("snk3", NodeKind::Sink, "screen")},
      {{"src3", "Q"}, {"Q", "snk3"}}, {"value"}));
  workspace.put_model(build(
      "phi4",
      {endpoint("src4", NodeKind::Source, "fx-rates"), processor_r(),
       endpoint("snk4", NodeKind::Sink, "carry")},
      {{"src4", "R"}, {"R", "snk4"}}, {}));
  return workspace;
}

Seeded seed(ObjectStore& store, ProvenanceLog& log) {
  Workspace workspace = chain_workspace();
  Seeded out;
  out.commit_id = commit_workspace(store, workspace, {}, "alice",
                                   "import models", kTimestamp);

  auto payload = [&store](const std::string& text) {
    Bytes bytes(text.begin(), text.end());
    return store.put(encode_blob(bytes));
  };

  ContributionDraft draft;
  draft.author = "alice";
  draft.model_id = "phi1";
  draft.commit_id = out.commit_id;
  draft.node_id = "P";
  draft.payload_digest = payload("{\"signal\":0.42}");
  ObjectId k0 = log.record(draft, workspace);
  out.contributions.push_back(k0);

  draft = {};
  draft.author = "bob";
  draft.model_id = "phi2";
  draft.commit_id = out.commit_id;
  draft.node_id = "Q";
  draft.payload_digest = payload("{\"vol\":0.17}");
  draft.upstream = {k0};
  ObjectId k1 = log.record(draft, workspace);
  out.contributions.push_back(k1);

  draft = {};
  draft.author = "carol";
  draft.model_id = "phi3";
  draft.commit_id = out.commit_id;
  draft.node_id = "Q";
  draft.payload_digest = payload("{\"screen\":12}");
  draft.upstream = {k0, k1};
  ObjectId k2 = log.record(draft, workspace);
  out.contributions.push_back(k2);

  draft = {};
  draft.author = "alice";
  draft.model_id = "phi1";
  draft.commit_id = out.commit_id;
  draft.node_id = "snk1";
  draft.payload_digest = payload("{\"pnl\":1.03}");
  draft.upstream = {k0};
  ObjectId k3 = log.record(draft, workspace);
  out.contributions.push_back(k3);

  return out;
}

ModelGraph large_model(const std::string& model_id, std::size_t node_count) {
  ModelGraph graph;
  graph.model_id = model_id;
  graph = tag_subject(graph, "momentum");
  graph = tag_subject(graph, "microstructure");

  std::string previous;
  for (std::size_t i = 0; i < node_count; ++i) {
    std::string ordinal = std::to_string(i);
    Node node;
    node.id = "n" + ordinal;
    node.kind = i == 0 ? NodeKind::Source
                       : (i + 1 == node_count ? NodeKind::Sink
                                              : NodeKind::Processor);
    node.label = "stage-" + ordinal + "-exponentially-weighted-crossover";
    node.params = {
        {"source", "nyse.trades.consolidated.v3/equities/minute-bars"},
        {"method", "exponential-weighted-moving-average"},
        {"fast_window", std::to_string(5 + i % 13)},
        {"slow_window", std::to_string(21 + i % 34)},
        {"threshold", "0.0" + std::to_string(25 + i % 50)},
    };
    node.facets = {
        {"owner", "participant-" + std::to_string(i % 97)},
        {"created", "2018-09-18T00:00:00Z"},
        {"unit", "usd-per-share"},
        {"review", i % 3 == 0 ? "approved" : "pending"},
        {"description",
         "Stage " + ordinal +
             " of the momentum investigation: computes the crossover of the "
             "fast and slow exponentially weighted averages over the "
             "consolidated minute bars and emits the normalized signal "
             "together with its rolling dispersion estimate."},
        {"notes",
         "Window lengths follow the desk convention for stage " + ordinal +
             "; the dispersion estimate uses the same lookback as the slow "
             "leg so downstream stages can compare signals on a like-for-"
             "like basis without re-scaling."},
    };
    graph = add_node(graph, std::move(node));
    if (!previous.empty()) {
      graph = add_edge(graph, previous, "n" + ordinal);
    }
    previous = "n" + ordinal;
  }
  return graph;
}

}  // namespace fixtures
}  // namespace proofgraph
