#pragma once

#include <string>

#include "proofgraph/model_graph.hpp"
#include "proofgraph/pipeline.hpp"

namespace proofgraph {

// Line-oriented definition formats consumed by the CLI.
//
// Model definition, one record per line:
//   node <id> <kind> <label> [k=v ...]
//   edge <from> <to>
//   subject <tag>
//   facet <node-id> <key>=<value>
// Tokens are whitespace-separated; a facet value runs to the end of the
// line. Blank lines and lines starting with '#' are ignored.
ModelGraph parse_model_definition(const std::string& model_id,
                                  const std::string& text);

// Pipeline definition:
//   pipeline <id> <model-id> <commit-hex>
//   step <node-id> <transform-name> [k=v ...] check <kind> [args]
// check kinds: always | nonempty | threshold <metric> <cmp> <bound>
ProofPipeline parse_pipeline_definition(const std::string& text);

}  // namespace proofgraph
