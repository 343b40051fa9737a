// Copyright 2026 The sparqlbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sparqlbench/app/commands.h"

#include <algorithm>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "json.hpp"
#include "sparqlbench/dataset/dataset.h"
#include "sparqlbench/eval/evaluator.h"
#include "sparqlbench/rdf/turtle.h"
#include "sparqlbench/sparql/parser.h"
#include "sparqlbench/stats/stats.h"
#include "sparqlbench/util/http.h"
#include "sparqlbench/util/text.h"

namespace sparqlbench::app {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

std::vector<int> default_epochs() {
  std::vector<int> e;
  for (int i = 5; i <= 100; i += 5) e.push_back(i);
  return e;
}

namespace {

int to_int(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid " + what + ": '" + s + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    parts.emplace_back(util::trim(s.substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

bool valid_model_name(const std::string& name) {
  return !name.empty() && name != "." && name != ".." &&
         std::all_of(name.begin(), name.end(), [](char c) {
           return std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' || c == '-';
         });
}

translator::TranslatorSpec spec_from_json(const json& j, const fs::path& base) {
  using T = translator::TranslatorSpec::Type;
  if (j.is_string()) {
    auto spec = translator::parse_translator_spec(j.get<std::string>());
    if (spec.type == T::kTranscript && spec.transcript.is_relative()) spec.transcript = base / spec.transcript;
    return spec;
  }
  if (!j.is_object()) throw ConfigError("translator entries must be strings or objects");
  translator::TranslatorSpec spec;
  std::string type = j.value("type", "");
  spec.name = j.value("name", type);
  if (j.contains("timeout_ms")) spec.timeout = std::chrono::milliseconds(j["timeout_ms"].get<long long>());
  if (type == "gold") {
    spec.type = T::kGold;
  } else if (type == "null") {
    spec.type = T::kNull;
  } else if (type == "retrieval") {
    spec.type = T::kRetrieval;
  } else if (type == "transcript") {
    spec.type = T::kTranscript;
    spec.transcript = base / j.at("path").get<std::string>();
  } else if (type == "subprocess") {
    spec.type = T::kSubprocess;
    spec.subprocess.argv = j.at("command").get<std::vector<std::string>>();
    if (j.contains("env")) spec.subprocess.env = j["env"].get<std::map<std::string, std::string>>();
  } else if (type == "http") {
    spec.type = T::kHttp;
    spec.url = j.at("url").get<std::string>();
  } else {
    throw ConfigError("unknown translator type '" + type + "'");
  }
  return spec;
}

ordered_json spec_to_json(const translator::TranslatorSpec& s) {
  using T = translator::TranslatorSpec::Type;
  ordered_json j;
  j["name"] = s.name;
  switch (s.type) {
    case T::kGold: j["type"] = "gold"; break;
    case T::kNull: j["type"] = "null"; break;
    case T::kRetrieval: j["type"] = "retrieval"; break;
    case T::kTranscript:
      j["type"] = "transcript";
      j["path"] = s.transcript.generic_string();
      break;
    case T::kSubprocess:
      j["type"] = "subprocess";
      j["command"] = s.subprocess.argv;
      if (!s.subprocess.env.empty()) j["env"] = s.subprocess.env;
      j["timeout_ms"] = s.timeout.count();
      break;
    case T::kHttp:
      j["type"] = "http";
      j["url"] = s.url;
      j["timeout_ms"] = s.timeout.count();
      break;
  }
  return j;
}

// Loads the dataset and applies config overrides; maps failures to exit codes.
dataset::Dataset load_for_run(const RunConfig& config) {
  dataset::Dataset ds = dataset::load_dataset(config.dataset);
  if (config.expand_paraphrases) ds.expand_paraphrases = *config.expand_paraphrases;
  if (config.backend.empty() || config.backend == "manifest") return ds;
  if (config.backend == "local") {
    if (ds.backend.graph_paths.empty()) throw ConfigError("dataset " + ds.name + " names no local graph");
    ds.backend.kind = dataset::BackendSpec::Kind::kLocal;
  } else if (util::is_http_url(config.backend)) {
    ds.backend.kind = dataset::BackendSpec::Kind::kRemote;
    ds.backend.endpoint.url = config.backend;
  } else {
    throw ConfigError("backend must be 'local', 'manifest' or an http(s) URL");
  }
  return ds;
}

}  // namespace

std::vector<int> parse_epochs(const std::string& text) {
  std::vector<int> epochs;
  if (text.find(':') != std::string::npos) {
    auto parts = split(text, ':');
    if (parts.size() != 3) throw ConfigError("epoch range must be START:STOP:STEP");
    int start = to_int(parts[0], "epoch"), stop = to_int(parts[1], "epoch"), step = to_int(parts[2], "epoch step");
    if (step <= 0) throw ConfigError("epoch step must be positive");
    for (int e = start; e <= stop; e += step) epochs.push_back(e);
  } else {
    for (const auto& p : split(text, ',')) epochs.push_back(to_int(p, "epoch"));
  }
  return epochs;
}

std::vector<std::string> parse_run_ids(const std::string& text) {
  std::string t(util::trim(text));
  if (!t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    int n = to_int(t, "run count");
    if (n < 1) throw ConfigError("run count must be at least 1");
    return dataset::default_run_ids(n);
  }
  return split(t, ',');
}

void check_config(const RunConfig& c) {
  if (c.dataset.empty()) throw ConfigError("no dataset manifest given");
  if (c.translators.empty()) throw ConfigError("no translator given");
  if (c.epochs.empty()) throw ConfigError("epoch schedule is empty");
  for (std::size_t i = 0; i < c.epochs.size(); ++i) {
    if (c.epochs[i] <= 0 || (i > 0 && c.epochs[i] <= c.epochs[i - 1])) {
      throw ConfigError("epoch schedule must be strictly increasing positive integers");
    }
  }
  if (c.run_ids.empty()) throw ConfigError("at least one run id is required");
  std::set<std::string> runs;
  for (const auto& r : c.run_ids) {
    if (!dataset::is_valid_run_id(r)) throw ConfigError("invalid run id '" + r + "'");
    if (!runs.insert(r).second) throw ConfigError("duplicate run id '" + r + "'");
  }
  std::set<std::string> names;
  for (const auto& t : c.translators) {
    if (!valid_model_name(t.name)) throw ConfigError("translator name '" + t.name + "' must match [A-Za-z0-9._-]+");
    if (!names.insert(t.name).second) throw ConfigError("duplicate translator name '" + t.name + "'");
  }
  if (c.out.empty()) throw ConfigError("no output directory given");
  if (c.jobs < 1) throw ConfigError("--jobs must be at least 1");
  if (c.connection_cap < 1) throw ConfigError("connection cap must be at least 1");
}

RunConfig load_run_config(const fs::path& path) {
  std::string text;
  try {
    text = util::read_file(path);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ConfigError(path.string() + ": not a JSON object");
  fs::path base = fs::absolute(path).parent_path();
  RunConfig c;
  c.epochs = default_epochs();
  c.run_ids = dataset::default_run_ids();
  try {
    if (j.contains("dataset")) c.dataset = base / j["dataset"].get<std::string>();
    if (j.contains("backend")) c.backend = j["backend"].get<std::string>();
    if (j.contains("translators")) {
      for (const auto& t : j["translators"]) c.translators.push_back(spec_from_json(t, base));
    }
    if (j.contains("epochs")) {
      c.epochs = j["epochs"].is_string() ? parse_epochs(j["epochs"].get<std::string>())
                                         : j["epochs"].get<std::vector<int>>();
    }
    if (j.contains("runs")) {
      c.run_ids = j["runs"].is_number_integer() ? parse_run_ids(std::to_string(j["runs"].get<int>()))
                                                : j["runs"].get<std::vector<std::string>>();
    }
    if (j.contains("out")) c.out = base / j["out"].get<std::string>();
    if (j.contains("strict_projection")) c.strict_projection = j["strict_projection"].get<bool>();
    if (j.contains("expand_paraphrases")) c.expand_paraphrases = j["expand_paraphrases"].get<bool>();
    if (j.contains("jobs")) c.jobs = j["jobs"].get<int>();
    if (j.contains("connection_cap")) c.connection_cap = j["connection_cap"].get<int>();
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return c;
}

std::string config_to_json(const RunConfig& c) {
  ordered_json j;
  j["dataset"] = c.dataset.generic_string();
  j["backend"] = c.backend.empty() ? "manifest" : c.backend;
  j["translators"] = ordered_json::array();
  for (const auto& t : c.translators) j["translators"].push_back(spec_to_json(t));
  j["epochs"] = c.epochs;
  j["runs"] = c.run_ids;
  j["strict_projection"] = c.strict_projection;
  if (c.expand_paraphrases) j["expand_paraphrases"] = *c.expand_paraphrases;
  j["jobs"] = c.jobs;
  j["connection_cap"] = c.connection_cap;
  return j.dump(2) + "\n";
}

int cmd_validate(const fs::path& manifest, bool strict_projection, std::ostream& out, std::ostream& err) {
  dataset::Dataset ds;
  try {
    ds = dataset::load_dataset(manifest);
  } catch (const dataset::DatasetError& e) {
    for (const auto& p : e.problems()) err << p << "\n";
    return kExitDataFailure;
  }
  std::size_t unsupported = 0;
  std::vector<std::string> failures;
  try {
    exec::Backend backend = dataset::make_backend(ds);
    eval::EvalOptions opts;
    opts.strict_projection = strict_projection;
    eval::Evaluator evaluator(ds, backend, opts);
    evaluator.prepare();
    for (const auto& rec : ds.records) {
      if (rec.unsupported && backend.is_local()) {
        ++unsupported;
        continue;
      }
      unsupported += rec.unsupported;
      eval::EvalOutcome o = evaluator.classify(rec, rec.gold_query);
      if (o.outcome != eval::Outcome::kCorrect) {
        failures.push_back("record " + rec.id + ": " + std::string(eval::to_string(o.outcome)) + " " + o.detail);
      }
    }
  } catch (const eval::GoldUnavailable& e) {
    err << "backend unavailable: " << e.what() << "\n";
    return kExitBackendFailure;
  } catch (const rdf::TurtleError& e) {
    err << "cannot load graph: " << e.what() << "\n";
    return kExitDataFailure;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitDataFailure;
  }
  out << ds.name << ": " << ds.records.size() << " records, " << ds.count(dataset::Split::kTest) << " test ("
      << ds.count(dataset::Split::kTrain) << " train), " << unsupported << " unsupported\n";
  for (const auto& f : failures) err << f << "\n";
  if (!failures.empty()) {
    out << "gold self-test failed for " << failures.size() << " record(s)\n";
    return kExitDataFailure;
  }
  out << "gold self-test passed\n";
  return kExitOk;
}

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    check_config(config);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfigError;
  }
  dataset::Dataset ds;
  std::optional<exec::Backend> backend;
  try {
    ds = load_for_run(config);
    backend = dataset::make_backend(ds);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const dataset::DatasetError& e) {
    for (const auto& p : e.problems()) err << p << "\n";
    return kExitDataFailure;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitDataFailure;
  }

  const fs::path logs = config.out / "logs";
  std::vector<std::unique_ptr<translator::Translator>> translators;
  try {
    for (const auto& spec : config.translators) translators.push_back(translator::make_translator(spec, ds));
  } catch (const std::exception& e) {
    err << "configuration error: cannot start translator: " << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    fs::create_directories(logs);
    RunConfig frozen = config;
    frozen.dataset = fs::absolute(config.dataset).lexically_normal();
    for (auto& t : frozen.translators) {
      if (!t.transcript.empty()) t.transcript = fs::absolute(t.transcript).lexically_normal();
    }
    util::write_file(config.out / "config.json", config_to_json(frozen));

    ordered_json manifest;
    manifest["dataset"] = {{"name", ds.name}, {"sha256", ds.content_hash}, {"query_mode", std::string(dataset::to_string(ds.query_mode))}};
    manifest["backend"] = backend->is_local() ? "local" : backend->describe();
    manifest["translators"] = ordered_json::array();
    for (const auto& t : translators) manifest["translators"].push_back(t->name());
    manifest["schedule"] = config.epochs;
    manifest["runs"] = ordered_json::array();
    for (const auto& r : config.run_ids) manifest["runs"].push_back({{"run", r}, {"seed", dataset::derive_seed(r)}});
    manifest["comparison"] = {
        {"rows", "multiset; set when the gold query uses DISTINCT; sequence when the gold query uses ORDER BY"},
        {"variable_names", "ignored"},
        {"numeric_literals", "compared as terms"},
        {"strict_projection", config.strict_projection},
        {"expand_paraphrases", ds.expand_paraphrases}};
    util::write_file(config.out / "manifest.json", manifest.dump(2) + "\n");

    for (const auto& r : config.run_ids) {
      std::uint32_t seed = dataset::derive_seed(r);
      ordered_json sh;
      sh["run"] = r;
      sh["seed"] = seed;
      sh["order"] = ordered_json::array();
      for (const auto& rec : dataset::shuffle_train(ds, seed)) sh["order"].push_back(rec.id);
      util::write_file(config.out / "shuffles" / (r + ".json"), sh.dump(2) + "\n");
    }

    ordered_json index;
    index["dataset"] = ds.name;
    index["models"] = ordered_json::array();
    for (const auto& t : translators) index["models"].push_back(t->name());
    util::write_file(logs / "index.json", index.dump(2) + "\n");

    eval::EvalOptions opts;
    opts.strict_projection = config.strict_projection;
    opts.connection_cap = config.connection_cap;
    eval::Evaluator evaluator(ds, *backend, opts);
    for (auto& t : translators) {
      for (const auto& r : config.run_ids) {
        eval::RunLogWriter log(logs / t->name() / (r + ".ndjson"));
        int best = 0;
        for (int epoch : config.epochs) {
          auto cp = eval::evaluate_checkpoint(*t, evaluator, r, epoch, &log, config.jobs);
          best = std::max(best, cp.correct_count);
        }
        out << t->name() << " " << r << ": best " << best << "\n";
      }
    }
  } catch (const eval::GoldUnavailable& e) {
    err << "backend unavailable: " << e.what() << "\n";
    return kExitBackendFailure;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitDataFailure;
  }
  std::ostringstream sink;
  int rc = cmd_report(logs, config.out / "reports", sink, err);
  if (rc == kExitOk) out << "reports written to " << (config.out / "reports").string() << "\n";
  return rc;
}

int cmd_report(const fs::path& logs_dir, const fs::path& out_dir, std::ostream& out, std::ostream& err) {
  try {
    json index = json::parse(util::read_file(logs_dir / "index.json"), nullptr, false);
    if (index.is_discarded() || !index.is_object() || !index.contains("models") || !index["models"].is_array()) {
      throw std::runtime_error("logs/index.json is corrupt");
    }
    std::string dataset_name = index.value("dataset", "");
    std::vector<stats::ModelRuns> models;
    for (const auto& m : index["models"]) {
      std::string model = m.get<std::string>();
      if (!valid_model_name(model)) throw std::runtime_error("invalid model name in index: " + model);
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(logs_dir / model)) {
        if (entry.path().extension() == ".ndjson") files.push_back(entry.path());
      }
      std::sort(files.begin(), files.end());
      stats::ModelRuns runs{model, {}};
      for (const auto& f : files) {
        eval::RunRecord rec;
        rec.run_id = f.stem().string();
        if (!dataset::is_valid_run_id(rec.run_id)) throw std::runtime_error("unexpected log file " + f.string());
        rec.seed = dataset::derive_seed(rec.run_id);
        rec.checkpoints = eval::read_run_log(util::read_file(f), model, dataset_name);
        if (rec.checkpoints.empty()) throw std::runtime_error("empty run log " + f.string());
        for (const auto& cp : rec.checkpoints) {
          if (cp.run_id != rec.run_id) throw std::runtime_error("run id mismatch in " + f.string());
        }
        runs.runs.push_back(std::move(rec));
      }
      if (runs.runs.empty()) throw std::runtime_error("no run logs for model " + model);
      models.push_back(std::move(runs));
    }
    if (models.empty()) throw std::runtime_error("no models in " + logs_dir.string());
    stats::emit_reports(models, dataset_name, out_dir);
    out << stats::render_reports(models, dataset_name).summary_md;
  } catch (const std::exception& e) {
    err << "cannot build reports: " << e.what() << "\n";
    return kExitDataFailure;
  }
  return kExitOk;
}

int cmd_seed(const std::vector<std::string>& labels, std::ostream& out, std::ostream& err) {
  for (const auto& l : labels) {
    if (!dataset::is_valid_run_id(l)) {
      err << "invalid run id '" << l << "'\n";
      return kExitConfigError;
    }
  }
  for (const auto& l : labels) out << l << " " << dataset::derive_seed(l) << "\n";
  return kExitOk;
}

int cmd_import_qald(const ImportOptions& o, std::ostream& out, std::ostream& err) {
  json doc;
  try {
    doc = json::parse(util::read_file(o.input));
  } catch (const std::exception& e) {
    err << "cannot read QALD file: " << e.what() << "\n";
    return kExitDataFailure;
  }
  if (!doc.contains("questions") || !doc["questions"].is_array()) {
    err << "QALD file lacks a questions array\n";
    return kExitDataFailure;
  }
  dataset::Dataset ds;
  ds.name = o.name;
  ds.query_mode = dataset::QueryMode::kSelfContained;
  if (o.graphs.empty()) {
    ds.backend.kind = dataset::BackendSpec::Kind::kRemote;
    ds.backend.endpoint.url = o.endpoint;
  } else {
    ds.backend.graph_paths = o.graphs;
  }
  std::size_t skipped = 0;
  for (const auto& q : doc["questions"]) {
    dataset::Record r;
    r.id = q.contains("id") ? (q["id"].is_string() ? q["id"].get<std::string>() : q["id"].dump()) : "";
    if (q.contains("question") && q["question"].is_array()) {
      for (const auto& s : q["question"]) {
        if (s.value("language", "") == o.language && s.contains("string")) r.question = s["string"].get<std::string>();
      }
    }
    if (q.contains("query") && q["query"].is_object() && q["query"].contains("sparql")) {
      r.gold_query = q["query"]["sparql"].get<std::string>();
    }
    if (r.id.empty() || util::trim(r.question).empty() || r.gold_query.empty()) {
      ++skipped;
      continue;
    }
    r.split = dataset::Split::kTest;
    try {
      sparql::parse_query(r.gold_query);
    } catch (const sparql::QueryError&) {
      r.unsupported = true;
    }
    ds.records.push_back(std::move(r));
  }
  std::sort(ds.records.begin(), ds.records.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  try {
    util::write_file(o.output, dataset::manifest_to_json(ds));
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitDataFailure;
  }
  std::size_t unsupported = std::count_if(ds.records.begin(), ds.records.end(), [](const auto& r) { return r.unsupported; });
  out << "imported " << ds.records.size() << " questions (" << unsupported << " unsupported, " << skipped
      << " skipped without " << o.language << " text)\n";
  return kExitOk;
}

int cmd_datagen(const DatagenOptions& o, std::ostream& out, std::ostream& err) {
  try {
    rdf::Graph graph;
    rdf::PrefixMap prefixes;
    const auto& paths = o.pipeline.graph_paths;
    for (std::size_t i = 0; i < paths.size(); ++i) {
      fs::path abs = paths[i].is_absolute() ? paths[i] : o.pipeline.manifest_dir / paths[i];
      rdf::TurtleOptions topts{"file://" + fs::absolute(abs).string(), paths.size() > 1 ? "f" + std::to_string(i) + "_" : ""};
      auto parsed = rdf::parse_turtle(util::read_file(abs), topts);
      graph.insert_all(parsed.graph.triples());
      prefixes.insert(parsed.prefixes.begin(), parsed.prefixes.end());
    }
    datagen::PipelineConfig cfg = o.pipeline;
    if (cfg.generation.prefixes.empty()) cfg.generation.prefixes = prefixes;
    datagen::ChatClient chat(o.chat);
    auto prompts = datagen::PromptTemplates::load(o.prompts_dir);
    datagen::PipelineResult result = datagen::run_pipeline(graph, cfg, chat, prompts);
    util::write_file(o.output, dataset::manifest_to_json(result.dataset));
    for (const auto& r : result.rejected) {
      err << "rejected (" << r.rejection_reason.value_or("?") << "): " << r.question << "\n";
    }
    for (const auto& w : result.warnings) err << "warning: paraphrase of " << w << " equals the question\n";
    out << "wrote " << result.dataset.records.size() << " records (" << result.rejected.size() << " rejected) to "
        << o.output.string() << "\n";
  } catch (const datagen::ChatError& e) {
    err << "chat service failure: " << e.what() << "\n";
    return kExitBackendFailure;
  } catch (const datagen::PromptBudgetExceeded& e) {
    err << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitDataFailure;
  }
  return kExitOk;
}

}  // namespace sparqlbench::app
