#include "proofgraph/text_formats.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "proofgraph/errors.hpp"

namespace proofgraph {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw Error(ErrorCode::ParseError,
              "line " + std::to_string(line_no) + ": " + what);
}

std::pair<std::string, std::string> split_kv(const std::string& token,
                                             std::size_t line_no) {
  auto eq = token.find('=');
  if (eq == std::string::npos || eq == 0) {
    fail(line_no, "expected key=value, got '" + token + "'");
  }
  return {token.substr(0, eq), token.substr(eq + 1)};
}

bool skippable(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

ModelGraph parse_model_definition(const std::string& model_id,
                                  const std::string& text) {
  ModelGraph graph;
  graph.model_id = model_id;

  struct PendingFacet {
    std::size_t line_no;
    std::string node_id, key, value;
  };
  std::vector<std::pair<std::size_t, std::pair<std::string, std::string>>> edges;
  std::vector<PendingFacet> facets;

  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (skippable(line)) continue;
    std::vector<std::string> tokens = tokenize(line);
    const std::string& record = tokens[0];

    if (record == "node") {
      if (tokens.size() < 4) fail(line_no, "node needs <id> <kind> <label>");
      Node node;
      node.id = tokens[1];
      node.kind = node_kind_from_string(tokens[2]);
      node.label = tokens[3];
      for (std::size_t i = 4; i < tokens.size(); ++i) {
        auto [key, value] = split_kv(tokens[i], line_no);
        if (!node.params.emplace(key, value).second) {
          fail(line_no, "duplicate param '" + key + "'");
        }
      }
      try {
        graph = add_node(graph, std::move(node));
      } catch (const Error& e) {
        fail(line_no, e.what());
      }
    } else if (record == "edge") {
      if (tokens.size() != 3) fail(line_no, "edge needs <from> <to>");
      edges.push_back({line_no, {tokens[1], tokens[2]}});
    } else if (record == "subject") {
      if (tokens.size() != 2) fail(line_no, "subject needs <tag>");
      try {
        graph = tag_subject(graph, tokens[1]);
      } catch (const Error& e) {
        fail(line_no, e.what());
      }
    } else if (record == "facet") {
      // The value runs to the end of the line.
      auto node_start = line.find_first_not_of(" \t", 5);
      if (node_start == std::string::npos) {
        fail(line_no, "facet needs <node-id> <key>=<value>");
      }
      auto node_end = line.find_first_of(" \t", node_start);
      if (node_end == std::string::npos) {
        fail(line_no, "facet needs <key>=<value>");
      }
      std::string node_id = line.substr(node_start, node_end - node_start);
      auto kv_start = line.find_first_not_of(" \t", node_end);
      if (kv_start == std::string::npos) {
        fail(line_no, "facet needs <key>=<value>");
      }
      auto [key, value] = split_kv(line.substr(kv_start), line_no);
      facets.push_back({line_no, node_id, key, value});
    } else {
      fail(line_no, "unknown record '" + record + "'");
    }
  }

  for (const auto& [no, edge] : edges) {
    try {
      graph = add_edge(graph, edge.first, edge.second);
    } catch (const Error& e) {
      fail(no, e.what());
    }
  }
  for (const auto& facet : facets) {
    auto it = graph.nodes.find(facet.node_id);
    if (it == graph.nodes.end()) {
      fail(facet.line_no, "facet names unknown node '" + facet.node_id + "'");
    }
    if (!it->second.facets.emplace(facet.key, facet.value).second) {
      fail(facet.line_no,
           "duplicate facet key '" + facet.key + "' on node " + facet.node_id);
    }
  }
  return graph;
}

ProofPipeline parse_pipeline_definition(const std::string& text) {
  ProofPipeline pipeline;
  bool have_header = false;

  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (skippable(line)) continue;
    std::vector<std::string> tokens = tokenize(line);
    const std::string& record = tokens[0];

    if (record == "pipeline") {
      if (have_header) fail(line_no, "duplicate pipeline header");
      if (tokens.size() != 4) {
        fail(line_no, "pipeline needs <id> <model-id> <commit-hex>");
      }
      pipeline.pipeline_id = tokens[1];
      pipeline.model_id = tokens[2];
      pipeline.commit_id = ObjectId::from_hex(tokens[3]);
      have_header = true;
    } else if (record == "step") {
      if (!have_header) fail(line_no, "step before pipeline header");
      if (tokens.size() < 3) fail(line_no, "step needs <node-id> <transform>");
      Step step;
      step.node_id = tokens[1];
      step.transform.name = tokens[2];
      std::size_t i = 3;
      for (; i < tokens.size() && tokens[i] != "check"; ++i) {
        auto [key, value] = split_kv(tokens[i], line_no);
        if (!step.transform.params.emplace(key, value).second) {
          fail(line_no, "duplicate transform param '" + key + "'");
        }
      }
      if (i == tokens.size()) fail(line_no, "step is missing its check");
      ++i;  // past "check"
      if (i == tokens.size()) fail(line_no, "check needs a kind");
      const std::string& kind = tokens[i];
      if (kind == "always") {
        step.validator.kind = ControlPoint::Kind::AlwaysPass;
        if (i + 1 != tokens.size()) fail(line_no, "check always takes no args");
      } else if (kind == "nonempty") {
        step.validator.kind = ControlPoint::Kind::NonEmpty;
        if (i + 1 != tokens.size()) {
          fail(line_no, "check nonempty takes no args");
        }
      } else if (kind == "threshold") {
        step.validator.kind = ControlPoint::Kind::Threshold;
        if (i + 4 != tokens.size()) {
          fail(line_no, "check threshold needs <metric> <cmp> <bound>");
        }
        step.validator.metric = tokens[i + 1];
        step.validator.cmp = comparator_from_string(tokens[i + 2]);
        const std::string& bound = tokens[i + 3];
        double value = 0.0;
        auto [ptr, err] =
            std::from_chars(bound.data(), bound.data() + bound.size(), value);
        if (err != std::errc() || ptr != bound.data() + bound.size() ||
            !std::isfinite(value)) {
          fail(line_no, "threshold bound '" + bound + "' is not a finite decimal");
        }
        step.validator.bound = value;
      } else {
        fail(line_no, "unknown check kind '" + kind + "'");
      }
      step.validator.description = step.validator.render();
      pipeline.steps.push_back(std::move(step));
    } else {
      fail(line_no, "unknown record '" + record + "'");
    }
  }
  if (!have_header) {
    throw Error(ErrorCode::ParseError, "pipeline definition has no header");
  }
  return pipeline;
}

}  // namespace proofgraph
