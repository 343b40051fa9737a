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

#ifndef SPARQLBENCH_APP_COMMANDS_H_
#define SPARQLBENCH_APP_COMMANDS_H_

#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparqlbench/datagen/datagen.h"
#include "sparqlbench/translator/translator.h"

namespace sparqlbench::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitDataFailure = 1,
  kExitConfigError = 2,
  kExitBackendFailure = 3,
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::filesystem::path dataset;
  // "local", an http(s) endpoint URL, or empty for the manifest's backend.
  std::string backend;
  std::vector<translator::TranslatorSpec> translators;
  std::vector<int> epochs;  // defaults to 5..100 step 5
  std::vector<std::string> run_ids;  // defaults to R01..R10
  std::filesystem::path out;
  bool strict_projection = true;
  std::optional<bool> expand_paraphrases;
  int jobs = 1;
  int connection_cap = 4;
};

std::vector<int> default_epochs();
// "5,10,20" or "START:STOP:STEP" (inclusive).
std::vector<int> parse_epochs(const std::string& text);
// "R01,R03" or a count N meaning R01..RNN.
std::vector<std::string> parse_run_ids(const std::string& text);
void check_config(const RunConfig& config);

// Reads a JSON configuration file; relative paths resolve against its directory.
RunConfig load_run_config(const std::filesystem::path& path);
std::string config_to_json(const RunConfig& config);

int cmd_validate(const std::filesystem::path& manifest, bool strict_projection, std::ostream& out,
                 std::ostream& err);

// Writes <out>/config.json, manifest.json, shuffles/<run>.json,
// logs/index.json, logs/<model>/<run>.ndjson and reports/.
int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Rebuilds the report files from a logs directory alone.
int cmd_report(const std::filesystem::path& logs_dir, const std::filesystem::path& out_dir, std::ostream& out,
               std::ostream& err);

int cmd_seed(const std::vector<std::string>& labels, std::ostream& out, std::ostream& err);

struct ImportOptions {
  std::filesystem::path input;
  std::filesystem::path output;
  std::string name = "qald10";
  std::string endpoint = "https://query.wikidata.org/sparql";
  std::vector<std::filesystem::path> graphs;  // local backend instead of the endpoint
  std::string language = "en";
};
int cmd_import_qald(const ImportOptions& options, std::ostream& out, std::ostream& err);

struct DatagenOptions {
  datagen::ChatClientConfig chat;
  datagen::PipelineConfig pipeline;
  std::filesystem::path prompts_dir;
  std::filesystem::path output;  // manifest path
};
int cmd_datagen(const DatagenOptions& options, std::ostream& out, std::ostream& err);

// Full command line, argv[0] excluded.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sparqlbench::app

#endif  // SPARQLBENCH_APP_COMMANDS_H_
