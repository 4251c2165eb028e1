// proofgraph: a versioned, provenance-tracked store for dataflow models
// with collaboration metrics and proof-pipeline execution.
//
// Machine output is canonical JSON (sorted keys, integers only) on stdout;
// diagnostics go to stderr. Exit codes: 0 success, 1 domain error
// (conflict, validation failure, halted pipeline), 2 usage error,
// 3 corruption or integrity failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "proofgraph/canonical.hpp"
#include "proofgraph/errors.hpp"
#include "proofgraph/fixtures.hpp"
#include "proofgraph/metrics.hpp"
#include "proofgraph/pipeline.hpp"
#include "proofgraph/provenance.hpp"
#include "proofgraph/text_formats.hpp"
#include "proofgraph/version_store.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace proofgraph;

namespace {

struct Session {
  std::string store_dir = ".proofgraph";
  int exit_code = 0;

  fs::path store_path() const { return fs::path(store_dir); }
  fs::path stage_path() const { return store_path() / "stage"; }
  fs::path log_path() const { return store_path() / "provenance.log"; }

  ObjectStore open() const { return ObjectStore::open(store_path()); }

  Workspace load_stage() const {
    if (!fs::exists(stage_path())) return Workspace{};
    std::ifstream in(stage_path(), std::ios::binary);
    Bytes bytes((std::istreambuf_iterator<char>(in)),
                std::istreambuf_iterator<char>());
    return decode_workspace(bytes);
  }

  void save_stage(const Workspace& workspace) const {
    write_file_atomic(stage_path(), encode(workspace));
  }

  ProvenanceLog load_log() const { return load_log_file(log_path()); }

  static ProvenanceLog load_log_file(const fs::path& path) {
    return proofgraph::load_log(path);
  }

  std::optional<ObjectId> head() const {
    return ObjectStore::exists_at(store_path()) ? open().read_ref("HEAD")
                                                : std::nullopt;
  }

  /// Accepts a 64-hex commit id or a ref name.
  ObjectId resolve_commit(const ObjectStore& store,
                          const std::string& text) const {
    if (text.size() == 64 &&
        text.find_first_not_of("0123456789abcdef") == std::string::npos) {
      return ObjectId::from_hex(text);
    }
    auto ref = store.read_ref(text);
    if (!ref) {
      throw Error(ErrorCode::UnknownCommit,
                  "'" + text + "' is neither a commit id nor a known ref");
    }
    return *ref;
  }
};

void emit(const json& out) { std::cout << out.dump() << "\n"; }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::StorageError, "cannot read file '" + path + "'");
  }
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

json violations_json(const ValidationReport& report) {
  json arr = json::array();
  for (const auto& violation : report.violations) {
    arr.push_back({{"detail", violation.detail},
                   {"kind", to_string(violation.kind)}});
  }
  return arr;
}

json string_array(const std::set<std::string>& values) {
  json arr = json::array();
  for (const auto& v : values) arr.push_back(v);
  return arr;
}

json hex_array(const std::vector<ObjectId>& ids) {
  json arr = json::array();
  for (const auto& id : ids) arr.push_back(id.hex());
  return arr;
}

// ---- subcommand bodies -----------------------------------------------

void cmd_init(Session& session) {
  ObjectStore::init(session.store_path());
  if (!fs::exists(session.stage_path())) {
    session.save_stage(Workspace{});
  }
  emit({{"initialized", true}});
}

void cmd_model_add(Session& session, const std::string& model_id,
                   const std::string& file) {
  ModelGraph model = parse_model_definition(model_id, read_text_file(file));
  Workspace stage = session.load_stage();
  stage.put_model(model);
  session.save_stage(stage);
  emit({{"edges", model.edges.size()},
        {"model", model.model_id},
        {"nodes", model.nodes.size()},
        {"subjects", string_array(model.subjects)}});
}

void cmd_model_validate(Session& session, const std::string& model_id) {
  Workspace stage = session.load_stage();
  ValidationReport report = validate(stage.model(model_id));
  emit({{"model", model_id}, {"violations", violations_json(report)}});
  if (!report.ok()) session.exit_code = 1;
}

void cmd_model_tag(Session& session, const std::string& model_id,
                   const std::string& subject) {
  Workspace stage = session.load_stage();
  ModelGraph tagged = tag_subject(stage.model(model_id), subject);
  stage.put_model(tagged);
  session.save_stage(stage);
  emit({{"model", model_id}, {"subjects", string_array(tagged.subjects)}});
}

void cmd_commit(Session& session, const std::string& author,
                const std::string& message, std::int64_t timestamp,
                const std::vector<std::string>& parent_args) {
  ObjectStore store = session.open();
  std::vector<ObjectId> parents;
  if (parent_args.empty()) {
    if (auto head = store.read_ref("HEAD")) parents.push_back(*head);
  } else {
    for (const auto& parent : parent_args) {
      parents.push_back(session.resolve_commit(store, parent));
    }
  }
  ObjectId commit_id = commit_workspace(store, session.load_stage(), parents,
                                        author, message, timestamp);
  store.write_ref("HEAD", commit_id);
  emit({{"commit", commit_id.hex()}});
}

void cmd_checkout(Session& session, const std::string& commit_arg) {
  ObjectStore store = session.open();
  ObjectId commit_id = session.resolve_commit(store, commit_arg);
  Workspace workspace = checkout(store, commit_id);
  session.save_stage(workspace);
  store.write_ref("HEAD", commit_id);
  json models = json::array();
  for (const auto& [id, model] : workspace.models) models.push_back(id);
  emit({{"commit", commit_id.hex()}, {"models", models}});
}

void cmd_log(Session& session, const std::string& commit_arg) {
  ObjectStore store = session.open();
  json commits = json::array();
  std::optional<ObjectId> start;
  if (!commit_arg.empty()) {
    start = session.resolve_commit(store, commit_arg);
  } else {
    start = store.read_ref("HEAD");
  }
  if (start) {
    std::set<ObjectId> seen;
    std::vector<ObjectId> stack{*start};
    while (!stack.empty()) {
      ObjectId id = stack.back();
      stack.pop_back();
      if (!seen.insert(id).second) continue;
      Commit commit = read_commit(store, id);
      commits.push_back({{"author", commit.author},
                         {"commit", id.hex()},
                         {"message", commit.message},
                         {"parents", hex_array(commit.parents)},
                         {"timestamp", commit.timestamp}});
      for (auto it = commit.parents.rbegin(); it != commit.parents.rend();
           ++it) {
        stack.push_back(*it);
      }
    }
  }
  emit({{"commits", commits}});
}

void cmd_chain(Session& session, const std::string& model_id) {
  Workspace stage = session.load_stage();
  emit({{"chain", string_array(clone_chain(stage, model_id))}});
}

void cmd_clone(Session& session, const std::string& commit_arg,
               const std::string& model_id,
               const std::vector<std::string>& rename_args,
               const std::string& author, const std::string& message,
               std::int64_t timestamp) {
  ObjectStore store = session.open();
  ObjectId commit_id = commit_arg.empty()
                           ? session.resolve_commit(store, "HEAD")
                           : session.resolve_commit(store, commit_arg);
  std::map<std::string, std::string> rename;
  for (const auto& arg : rename_args) {
    auto eq = arg.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == arg.size()) {
      throw CLI::ValidationError("--rename", "expected OLD=NEW, got '" + arg +
                                                 "'");
    }
    rename[arg.substr(0, eq)] = arg.substr(eq + 1);
  }
  auto [workspace, new_commit] =
      clone(store, commit_id, model_id, rename, author, message, timestamp);
  session.save_stage(workspace);
  store.write_ref("HEAD", new_commit);
  std::set<std::string> new_ids;
  for (const auto& [old_id, new_id] : rename) new_ids.insert(new_id);
  emit({{"commit", new_commit.hex()}, {"models", string_array(new_ids)}});
}

void cmd_merge(Session& session, const std::string& base,
               const std::string& ours, const std::string& theirs,
               const std::string& author, const std::string& message,
               std::int64_t timestamp) {
  ObjectStore store = session.open();
  MergeResult result = merge(store, session.resolve_commit(store, base),
                             session.resolve_commit(store, ours),
                             session.resolve_commit(store, theirs), author,
                             message, timestamp);
  if (result.merged()) {
    session.save_stage(result.result().workspace);
    store.write_ref("HEAD", result.result().commit_id);
    emit({{"commit", result.result().commit_id.hex()}});
    return;
  }
  json conflicts = json::array();
  for (const Conflict& c : result.conflicts()) {
    conflicts.push_back({{"element", to_string(c.element)},
                         {"ids", c.ids},
                         {"ours", c.ours},
                         {"theirs", c.theirs}});
  }
  emit({{"conflicts", conflicts}});
  session.exit_code = 1;
}

void cmd_record(Session& session, const std::string& model_id,
                const std::string& node_id, const std::string& author,
                const std::string& commit_arg, const std::string& payload,
                const std::string& payload_file,
                const std::vector<std::string>& upstream_args) {
  ObjectStore store = session.open();
  ObjectId commit_id = commit_arg.empty()
                           ? session.resolve_commit(store, "HEAD")
                           : session.resolve_commit(store, commit_arg);
  std::string payload_text =
      payload_file.empty() ? payload : read_text_file(payload_file);
  Bytes payload_data(payload_text.begin(), payload_text.end());

  ContributionDraft draft;
  draft.author = author;
  draft.model_id = model_id;
  draft.commit_id = commit_id;
  draft.node_id = node_id;
  draft.payload_digest = store.put(encode_blob(payload_data));
  for (const auto& upstream : upstream_args) {
    draft.upstream.insert(ObjectId::from_hex(upstream));
  }

  ProvenanceLog log = session.load_log();
  ObjectId id = log.record(draft, store);
  append_log_entries(session.log_path(), {log.entries().back()});
  emit({{"contribution", id.hex()}, {"seq", log.entries().back().seq}});
}

void cmd_metrics_quality(Session& session, const std::string& contribution) {
  ProvenanceLog log = session.load_log();
  ContributionGraph graph = derive_graph(log);
  ObjectId id = ObjectId::from_hex(contribution);
  emit({{"contribution", contribution}, {"quality", quality(graph, id)}});
}

void cmd_metrics_relevancy(Session& session, const std::string& participant,
                           const std::string& subject) {
  ProvenanceLog log = session.load_log();
  ContributionGraph graph = derive_graph(log);
  emit({{"participant", participant},
        {"relevancy", relevancy(graph, log, participant, subject)},
        {"subject", subject}});
}

void cmd_metrics_influence(Session& session, const std::string& participant) {
  ProvenanceLog log = session.load_log();
  ContributionGraph graph = derive_graph(log);
  emit({{"influence", influence(graph, log, participant)},
        {"participant", participant}});
}

void cmd_metrics_rank(Session& session, const std::string& subject) {
  ProvenanceLog log = session.load_log();
  ContributionGraph graph = derive_graph(log);
  std::optional<std::string> filter;
  if (!subject.empty()) filter = subject;
  json ranking = json::array();
  for (const auto& [participant, score] : rank_participants(graph, log, filter)) {
    ranking.push_back({{"participant", participant}, {"score", score}});
  }
  json out{{"ranking", ranking}};
  if (filter) out["subject"] = *filter;
  emit(out);
}

void cmd_pipeline_validate(Session& session, const std::string& file) {
  ObjectStore store = session.open();
  ProofPipeline pipeline = parse_pipeline_definition(read_text_file(file));
  ValidationReport report = validate_pipeline(pipeline, store);
  emit({{"pipeline", pipeline.pipeline_id},
        {"violations", violations_json(report)}});
  if (!report.ok()) session.exit_code = 1;
}

void cmd_pipeline_run(Session& session, const std::string& file,
                      const std::string& input, const std::string& input_file,
                      const std::string& author) {
  ObjectStore store = session.open();
  ProofPipeline pipeline = parse_pipeline_definition(read_text_file(file));
  std::string input_text = input_file.empty() ? input : read_text_file(input_file);
  Bytes input_bytes(input_text.begin(), input_text.end());

  ProvenanceLog log = session.load_log();
  std::size_t before = log.size();
  RunResult result;
  try {
    result = run(pipeline, input_bytes, store, log, author);
  } catch (...) {
    // evidence recorded before the failure stays recorded
    std::vector<Contribution> tail(log.entries().begin() + before,
                                   log.entries().end());
    if (!tail.empty()) append_log_entries(session.log_path(), tail);
    throw;
  }
  std::vector<Contribution> tail(log.entries().begin() + before,
                                 log.entries().end());
  if (!tail.empty()) append_log_entries(session.log_path(), tail);

  json out{{"evidence", hex_array(result.evidence)},
           {"verdict", to_string(result.verdict.outcome)}};
  if (result.verdict.halted_at) {
    out["halted_at"] = *result.verdict.halted_at;
    session.exit_code = 1;
  }
  emit(out);
}

void cmd_stats(Session& session) {
  StorageStats stats = session.open().stats();
  emit({{"object_count", stats.object_count},
        {"total_bytes", stats.total_bytes}});
}

void cmd_verify(Session& session) {
  ObjectStore store = session.open();
  json findings = json::array();

  std::vector<ObjectId> objects;
  try {
    objects = store.list_objects();
  } catch (const Error& e) {
    findings.push_back(std::string("object listing: ") + e.what());
  }
  for (const ObjectId& id : objects) {
    try {
      (void)store.get(id);
    } catch (const Error& e) {
      findings.push_back(e.what());
    }
  }

  for (const auto& name : {std::string("HEAD")}) {
    try {
      auto ref = store.read_ref(name);
      if (ref && !store.contains(*ref)) {
        findings.push_back("ref " + name + " points to a missing commit");
      }
    } catch (const Error& e) {
      findings.push_back(std::string("ref ") + name + ": " + e.what());
    }
  }

  std::uint64_t entries = 0;
  try {
    ProvenanceLog log = session.load_log();
    entries = log.size();
    VerificationReport report = verify(log);
    if (!report.clean) {
      findings.push_back("provenance entry " +
                         std::to_string(report.position.value_or(0)) + ": " +
                         report.detail);
    } else {
      for (const Contribution& entry : log.entries()) {
        if (!store.contains(entry.commit_id)) {
          findings.push_back("contribution " + entry.id.hex() +
                             " references missing commit");
        }
        if (!store.contains(entry.payload_digest)) {
          findings.push_back("contribution " + entry.id.hex() +
                             " references missing payload");
        }
      }
    }
  } catch (const Error& e) {
    findings.push_back(std::string("provenance log: ") + e.what());
  }

  bool clean = findings.empty();
  emit({{"clean", clean},
        {"entries_checked", entries},
        {"findings", findings},
        {"objects_checked", objects.size()}});
  if (!clean) session.exit_code = 3;
}

void cmd_fixtures(Session& session) {
  ObjectStore store = session.open();
  ProvenanceLog log = session.load_log();
  std::size_t before = log.size();
  fixtures::Seeded seeded = fixtures::seed(store, log);
  std::vector<Contribution> tail(log.entries().begin() + before,
                                 log.entries().end());
  append_log_entries(session.log_path(), tail);
  session.save_stage(fixtures::chain_workspace());
  store.write_ref("HEAD", seeded.commit_id);

  json models = json::array();
  for (const auto& [id, model] : fixtures::chain_workspace().models) {
    models.push_back(id);
  }
  emit({{"commit", seeded.commit_id.hex()},
        {"contributions", hex_array(seeded.contributions)},
        {"models", models}});
}

}  // namespace

int main(int argc, char** argv) {
  Session session;

  CLI::App app{"versioned, provenance-tracked store for dataflow models"};
  app.require_subcommand(1);
  app.add_option("--store", session.store_dir, "store directory")
      ->envname("PROOFGRAPH_STORE")
      ->capture_default_str();

  // init
  app.add_subcommand("init", "create an empty store")
      ->callback([&] { cmd_init(session); });

  // model add|validate|tag
  auto* model = app.add_subcommand("model", "author models in the stage");
  model->require_subcommand(1);
  {
    auto* add = model->add_subcommand("add", "add a model from a definition file");
    auto id = std::make_shared<std::string>();
    auto file = std::make_shared<std::string>();
    add->add_option("model-id", *id, "new model id")->required();
    add->add_option("--file,-f", *file, "definition file")->required();
    add->callback([&, id, file] { cmd_model_add(session, *id, *file); });

    auto* check = model->add_subcommand("validate", "validate a staged model");
    auto vid = std::make_shared<std::string>();
    check->add_option("model-id", *vid)->required();
    check->callback([&, vid] { cmd_model_validate(session, *vid); });

    auto* tag = model->add_subcommand("tag", "tag a staged model with a subject");
    auto tid = std::make_shared<std::string>();
    auto subject = std::make_shared<std::string>();
    tag->add_option("model-id", *tid)->required();
    tag->add_option("subject", *subject)->required();
    tag->callback([&, tid, subject] { cmd_model_tag(session, *tid, *subject); });
  }

  // commit
  {
    auto* commit = app.add_subcommand("commit", "commit the staged workspace");
    auto author = std::make_shared<std::string>();
    auto message = std::make_shared<std::string>();
    auto timestamp = std::make_shared<std::int64_t>(0);
    auto parents = std::make_shared<std::vector<std::string>>();
    commit->add_option("--author", *author)->required();
    commit->add_option("--message", *message)->required();
    commit->add_option("--timestamp", *timestamp, "seconds since epoch")
        ->required();
    commit->add_option("--parent", *parents, "parent commit (defaults to HEAD)");
    commit->callback([&, author, message, timestamp, parents] {
      cmd_commit(session, *author, *message, *timestamp, *parents);
    });
  }

  // checkout
  {
    auto* checkout_cmd = app.add_subcommand("checkout", "load a commit into the stage");
    auto commit = std::make_shared<std::string>();
    checkout_cmd->add_option("commit", *commit, "commit id or ref")->required();
    checkout_cmd->callback([&, commit] { cmd_checkout(session, *commit); });
  }

  // log
  {
    auto* log_cmd = app.add_subcommand("log", "list commit ancestry");
    auto commit = std::make_shared<std::string>();
    log_cmd->add_option("--commit", *commit, "start commit (defaults to HEAD)");
    log_cmd->callback([&, commit] { cmd_log(session, *commit); });
  }

  // chain
  {
    auto* chain_cmd = app.add_subcommand("chain", "clone chain of a staged model");
    auto model_id = std::make_shared<std::string>();
    chain_cmd->add_option("model-id", *model_id)->required();
    chain_cmd->callback([&, model_id] { cmd_chain(session, *model_id); });
  }

  // clone
  {
    auto* clone_cmd = app.add_subcommand("clone", "clone a model chain");
    auto commit = std::make_shared<std::string>();
    auto model_id = std::make_shared<std::string>();
    auto renames = std::make_shared<std::vector<std::string>>();
    auto author = std::make_shared<std::string>();
    auto message = std::make_shared<std::string>();
    auto timestamp = std::make_shared<std::int64_t>(0);
    clone_cmd->add_option("--commit", *commit, "source commit (defaults to HEAD)");
    clone_cmd->add_option("--model", *model_id)->required();
    clone_cmd->add_option("--rename", *renames, "OLD=NEW (repeat per chain member)")
        ->required();
    clone_cmd->add_option("--author", *author)->required();
    clone_cmd->add_option("--message", *message)->required();
    clone_cmd->add_option("--timestamp", *timestamp)->required();
    clone_cmd->callback([&, commit, model_id, renames, author, message, timestamp] {
      cmd_clone(session, *commit, *model_id, *renames, *author, *message,
                *timestamp);
    });
  }

  // merge
  {
    auto* merge_cmd = app.add_subcommand("merge", "three-way merge of two commits");
    auto base = std::make_shared<std::string>();
    auto ours = std::make_shared<std::string>();
    auto theirs = std::make_shared<std::string>();
    auto author = std::make_shared<std::string>();
    auto message = std::make_shared<std::string>();
    auto timestamp = std::make_shared<std::int64_t>(0);
    merge_cmd->add_option("--base", *base)->required();
    merge_cmd->add_option("--ours", *ours)->required();
    merge_cmd->add_option("--theirs", *theirs)->required();
    merge_cmd->add_option("--author", *author)->required();
    merge_cmd->add_option("--message", *message)->required();
    merge_cmd->add_option("--timestamp", *timestamp)->required();
    merge_cmd->callback([&, base, ours, theirs, author, message, timestamp] {
      cmd_merge(session, *base, *ours, *theirs, *author, *message, *timestamp);
    });
  }

  // record
  {
    auto* record_cmd = app.add_subcommand("record", "record a contribution");
    auto model_id = std::make_shared<std::string>();
    auto node_id = std::make_shared<std::string>();
    auto author = std::make_shared<std::string>();
    auto commit = std::make_shared<std::string>();
    auto payload = std::make_shared<std::string>();
    auto payload_file = std::make_shared<std::string>();
    auto upstream = std::make_shared<std::vector<std::string>>();
    record_cmd->add_option("--model", *model_id)->required();
    record_cmd->add_option("--node", *node_id)->required();
    record_cmd->add_option("--author", *author)->required();
    record_cmd->add_option("--commit", *commit, "defaults to HEAD");
    auto* inline_payload =
        record_cmd->add_option("--payload", *payload, "payload bytes");
    record_cmd->add_option("--payload-file", *payload_file)
        ->excludes(inline_payload);
    record_cmd->add_option("--upstream", *upstream, "upstream contribution id");
    record_cmd->callback(
        [&, model_id, node_id, author, commit, payload, payload_file, upstream] {
          cmd_record(session, *model_id, *node_id, *author, *commit, *payload,
                     *payload_file, *upstream);
        });
  }

  // metrics quality|relevancy|influence|rank
  auto* metrics_cmd = app.add_subcommand("metrics", "collaboration metrics");
  metrics_cmd->require_subcommand(1);
  {
    auto* quality_cmd = metrics_cmd->add_subcommand("quality",
                                                    "in-degree of a contribution");
    auto contribution = std::make_shared<std::string>();
    quality_cmd->add_option("contribution", *contribution)->required();
    quality_cmd->callback(
        [&, contribution] { cmd_metrics_quality(session, *contribution); });

    auto* relevancy_cmd =
        metrics_cmd->add_subcommand("relevancy", "per-subject relevancy");
    auto participant = std::make_shared<std::string>();
    auto subject = std::make_shared<std::string>();
    relevancy_cmd->add_option("--participant", *participant)->required();
    relevancy_cmd->add_option("--subject", *subject)->required();
    relevancy_cmd->callback([&, participant, subject] {
      cmd_metrics_relevancy(session, *participant, *subject);
    });

    auto* influence_cmd =
        metrics_cmd->add_subcommand("influence", "influence across subjects");
    auto inf_participant = std::make_shared<std::string>();
    influence_cmd->add_option("--participant", *inf_participant)->required();
    influence_cmd->callback([&, inf_participant] {
      cmd_metrics_influence(session, *inf_participant);
    });

    auto* rank_cmd = metrics_cmd->add_subcommand("rank", "rank participants");
    auto rank_subject = std::make_shared<std::string>();
    rank_cmd->add_option("--subject", *rank_subject,
                         "rank by relevancy for this subject");
    rank_cmd->callback(
        [&, rank_subject] { cmd_metrics_rank(session, *rank_subject); });
  }

  // pipeline validate|run
  auto* pipeline_cmd = app.add_subcommand("pipeline", "proof pipelines");
  pipeline_cmd->require_subcommand(1);
  {
    auto* validate_cmd =
        pipeline_cmd->add_subcommand("validate", "validate a pipeline definition");
    auto file = std::make_shared<std::string>();
    validate_cmd->add_option("--file,-f", *file)->required();
    validate_cmd->callback([&, file] { cmd_pipeline_validate(session, *file); });

    auto* run_cmd = pipeline_cmd->add_subcommand("run", "execute a pipeline");
    auto run_file = std::make_shared<std::string>();
    auto input = std::make_shared<std::string>(std::string("{}"));
    auto input_file = std::make_shared<std::string>();
    auto author = std::make_shared<std::string>();
    run_cmd->add_option("--file,-f", *run_file)->required();
    auto* inline_input = run_cmd->add_option("--input", *input, "payload JSON");
    run_cmd->add_option("--input-file", *input_file)->excludes(inline_input);
    run_cmd->add_option("--author", *author)->required();
    run_cmd->callback([&, run_file, input, input_file, author] {
      cmd_pipeline_run(session, *run_file, *input, *input_file, *author);
    });
  }

  // stats, verify, fixtures
  app.add_subcommand("stats", "object store statistics")
      ->callback([&] { cmd_stats(session); });
  app.add_subcommand("verify", "check store and provenance integrity")
      ->callback([&] { cmd_verify(session); });
  app.add_subcommand("fixtures",
                     "seed the shared-processor example workspace and log")
      ->callback([&] { cmd_fixtures(session); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return e.is_corruption() ? 3 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return session.exit_code;
}
