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

#include <sstream>

#include "CLI11.hpp"
#include "sparqlbench/app/commands.h"
#include "sparqlbench/dataset/dataset.h"
#include "sparqlbench/util/text.h"

namespace sparqlbench::app {

namespace fs = std::filesystem;

namespace {

void add_run_flags(CLI::App* cmd, std::string& config_path, std::string& dataset, std::vector<std::string>& translators,
                   std::string& backend, std::string& runs, std::string& epochs, std::string& out_dir, int& jobs,
                   bool& lenient, bool& expand) {
  cmd->add_option("--config", config_path, "JSON run configuration");
  cmd->add_option("--dataset", dataset, "Dataset manifest");
  cmd->add_option("--translator", translators,
                  "Translator: gold | null | retrieval | transcript:PATH | cmd:PROGRAM ARGS | URL, "
                  "optionally NAME=SPEC; repeatable");
  cmd->add_option("--backend", backend, "local | manifest | SPARQL endpoint URL");
  cmd->add_option("--runs", runs, "Run ids (R01,R02) or a count");
  cmd->add_option("--epochs", epochs, "Epoch list (5,10) or range START:STOP:STEP");
  cmd->add_option("--out", out_dir, "Output directory");
  cmd->add_option("--jobs", jobs, "Parallel classification workers");
  cmd->add_flag("--lenient-projection", lenient, "Allow projected variables the WHERE clause never binds");
  cmd->add_flag("--expand-paraphrases", expand, "Evaluate paraphrases as separate questions");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Benchmark harness for natural-language to SPARQL translators", "sparqlbench"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "sparqlbench 0.3.0");

  std::string manifest;
  bool lenient = false;
  auto* validate = app.add_subcommand("validate", "Load a dataset and run the gold self-test");
  validate->add_option("manifest", manifest, "Dataset manifest");
  validate->add_option("--dataset", manifest, "Dataset manifest");
  validate->add_flag("--lenient-projection", lenient, "Allow projected variables the WHERE clause never binds");

  std::string config_path, dataset_path, backend, runs, epochs, out_dir;
  std::vector<std::string> translators;
  int jobs = 0;
  bool expand = false;
  auto* run = app.add_subcommand("run", "Evaluate translators over runs and epochs and write reports");
  add_run_flags(run, config_path, dataset_path, translators, backend, runs, epochs, out_dir, jobs, lenient, expand);

  std::string logs_dir, report_out;
  auto* report = app.add_subcommand("report", "Rebuild reports from run logs");
  report->add_option("logs", logs_dir, "Logs directory written by run")->required();
  report->add_option("--out", report_out, "Output directory (default: sibling reports/)");

  std::vector<std::string> labels;
  auto* seed = app.add_subcommand("seed", "Print the seed derived from run labels");
  seed->add_option("labels", labels, "Run labels such as R01")->required();

  ImportOptions import_opts;
  std::string import_in, import_out;
  std::vector<std::string> import_graphs;
  auto* import = app.add_subcommand("import-qald", "Convert a QALD JSON file into a dataset manifest");
  import->add_option("input", import_in, "QALD JSON file")->required();
  import->add_option("--out", import_out, "Manifest to write")->required();
  import->add_option("--name", import_opts.name, "Dataset name");
  import->add_option("--endpoint", import_opts.endpoint, "SPARQL endpoint for the manifest backend");
  import->add_option("--graph", import_graphs, "Use local Turtle graph(s) instead of the endpoint");
  import->add_option("--language", import_opts.language, "Question language to keep");

  std::string dg_graph, dg_out, dg_name, dg_prompts = "prompts", dg_endpoint, dg_model, dg_key_env, dg_replay,
                                           dg_record;
  std::size_t dg_candidates = 20;
  double dg_test_fraction = 0.25;
  bool dg_no_paraphrase = false;
  auto* gen = app.add_subcommand("datagen", "Generate, verify and paraphrase a dataset with a chat model");
  gen->add_option("--graph", dg_graph, "Turtle graph")->required();
  gen->add_option("--out", dg_out, "Manifest to write")->required();
  gen->add_option("--name", dg_name, "Dataset name")->required();
  gen->add_option("--prompts", dg_prompts, "Directory with generate.txt and paraphrase.txt");
  gen->add_option("--endpoint", dg_endpoint, "Chat-completions URL");
  gen->add_option("--model", dg_model, "Chat model identifier");
  gen->add_option("--api-key-env", dg_key_env, "Environment variable holding the API key");
  gen->add_option("--replay", dg_replay, "Replay a recorded transcript instead of calling the service");
  gen->add_option("--record", dg_record, "Append live exchanges to this transcript");
  gen->add_option("--candidates", dg_candidates, "Number of tuples to request");
  gen->add_option("--test-fraction", dg_test_fraction, "Share of records placed in the test split");
  gen->add_flag("--no-paraphrase", dg_no_paraphrase, "Skip the paraphrase step");

  std::vector<std::string> argv;
  argv.push_back("sparqlbench");
  argv.insert(argv.end(), args.begin(), args.end());
  std::vector<const char*> cargv;
  for (const auto& a : argv) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (*validate) {
      if (manifest.empty()) throw ConfigError("validate needs a dataset manifest");
      return cmd_validate(manifest, !lenient, out, err);
    }
    if (*seed) return cmd_seed(labels, out, err);
    if (*report) {
      fs::path logs(logs_dir);
      fs::path dest = report_out.empty() ? logs.parent_path() / "reports" : fs::path(report_out);
      return cmd_report(logs, dest, out, err);
    }
    if (*import) {
      import_opts.input = import_in;
      import_opts.output = import_out;
      for (const auto& g : import_graphs) import_opts.graphs.push_back(g);
      return cmd_import_qald(import_opts, out, err);
    }
    if (*gen) {
      DatagenOptions o;
      o.chat.endpoint = dg_endpoint;
      o.chat.model = dg_model;
      o.chat.api_key_env = dg_key_env;
      if (!dg_replay.empty()) o.chat.replay = dg_replay;
      if (!dg_record.empty()) o.chat.record = dg_record;
      fs::path out_path(dg_out);
      fs::path manifest_dir = fs::absolute(out_path).parent_path();
      fs::path graph = fs::absolute(dg_graph);
      o.pipeline.dataset_name = dg_name;
      o.pipeline.manifest_dir = manifest_dir;
      o.pipeline.graph_paths = {graph.lexically_relative(manifest_dir)};
      o.pipeline.candidates = dg_candidates;
      o.pipeline.test_fraction = dg_test_fraction;
      o.pipeline.paraphrase = !dg_no_paraphrase;
      o.prompts_dir = dg_prompts;
      o.output = out_path;
      return cmd_datagen(o, out, err);
    }
    if (*run) {
      RunConfig c;
      if (!config_path.empty()) {
        c = load_run_config(config_path);
      } else {
        c.epochs = default_epochs();
        c.run_ids = dataset::default_run_ids();
      }
      if (!dataset_path.empty()) c.dataset = dataset_path;
      if (!translators.empty()) {
        c.translators.clear();
        for (const auto& t : translators) c.translators.push_back(translator::parse_translator_spec(t));
      }
      if (!backend.empty()) c.backend = backend;
      if (!runs.empty()) c.run_ids = parse_run_ids(runs);
      if (!epochs.empty()) c.epochs = parse_epochs(epochs);
      if (!out_dir.empty()) c.out = out_dir;
      if (jobs != 0) c.jobs = jobs;
      if (lenient) c.strict_projection = false;
      if (expand) c.expand_paraphrases = true;
      return cmd_run(c, out, err);
    }
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}

}  // namespace sparqlbench::app
