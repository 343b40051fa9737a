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

#ifndef SPARQLBENCH_DATAGEN_DATAGEN_H_
#define SPARQLBENCH_DATAGEN_DATAGEN_H_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparqlbench/dataset/dataset.h"
#include "sparqlbench/rdf/graph.h"

namespace sparqlbench::datagen {

struct ChatClientConfig {
  std::string endpoint;  // full chat-completions URL
  std::string model;
  std::string api_key_env;  // name of the variable holding the key; may be empty
  double temperature = 0.0;
  int max_retries = 2;
  std::optional<std::filesystem::path> replay;  // when set, no network traffic
  std::optional<std::filesystem::path> record;  // append exchanges here
  std::chrono::milliseconds timeout{120000};
};

struct ChatMessage {
  std::string role;
  std::string content;
};

// Transport, authentication, HTTP status or exhausted replay.
class ChatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PromptBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Chat-completions client. Replay transcripts are NDJSON lines
// {"request": {...}, "response": {...}} consumed in order.
class ChatClient {
 public:
  explicit ChatClient(ChatClientConfig config);
  // Returns choices[0].message.content.
  std::string complete(const std::vector<ChatMessage>& messages);
  const ChatClientConfig& config() const { return config_; }

 private:
  std::string request_body(const std::vector<ChatMessage>& messages) const;
  ChatClientConfig config_;
  std::vector<std::string> replay_lines_;
  std::size_t replay_pos_ = 0;
};

struct PromptTemplates {
  std::string generate;    // placeholders: {{n}}, {{graph}}
  std::string paraphrase;  // placeholder: {{question}}
  // Reads generate.txt and paraphrase.txt; lines starting with '#' are dropped.
  static PromptTemplates load(const std::filesystem::path& dir);
};

std::string fill_template(std::string text, const std::vector<std::pair<std::string, std::string>>& values);

struct GenerationCandidate {
  std::string question;
  std::string query;
  std::vector<std::string> expected;  // as returned by the model
  bool verified = false;
  std::optional<std::string> rejection_reason;  // ParseError | ExecError | EmptyResult | ValueMismatch
  std::string rejection_detail;
};

// Parses the JSON array in a model reply (code fences tolerated). Returns
// nullopt when the reply holds no well-formed array of tuples.
std::optional<std::vector<GenerationCandidate>> parse_candidates(const std::string& reply);

struct GenerationOptions {
  std::size_t triple_cap = 2000;
  rdf::PrefixMap prefixes;  // used to render the graph and to resolve queries
};

std::vector<GenerationCandidate> generate_candidates(const rdf::Graph& graph, std::size_t n, ChatClient& chat,
                                                     const PromptTemplates& prompts,
                                                     const GenerationOptions& options);

// Comparable form of a value: trimmed, quotes, angle brackets, datatype and
// language suffixes removed, prefixed names expanded.
std::string normalize_value(std::string_view text, const rdf::PrefixMap& prefixes);

GenerationCandidate verify_candidate(GenerationCandidate candidate, const rdf::Graph& graph,
                                     const rdf::PrefixMap& prefixes);

struct ParaphraseResult {
  std::vector<dataset::Record> records;
  std::vector<std::string> warnings;  // ids whose paraphrase still equals the question
};

// Thrown on transport failure; carries the records completed so far.
class ParaphraseAborted : public ChatError {
 public:
  ParaphraseAborted(const std::string& message, ParaphraseResult partial);
  const ParaphraseResult& partial() const { return partial_; }

 private:
  ParaphraseResult partial_;
};

ParaphraseResult paraphrase_all(std::vector<dataset::Record> records, ChatClient& chat,
                                const PromptTemplates& prompts);

struct PipelineConfig {
  std::string dataset_name;
  std::vector<std::filesystem::path> graph_paths;  // as they should appear in the manifest
  std::filesystem::path manifest_dir;              // where the manifest will live
  std::size_t candidates = 20;
  double test_fraction = 0.25;
  std::string id_prefix = "q";
  bool paraphrase = true;
  GenerationOptions generation;
};

struct PipelineResult {
  dataset::Dataset dataset;
  std::vector<GenerationCandidate> rejected;
  std::vector<std::string> warnings;
};

// generate -> verify -> paraphrase -> manifest. Records keep generation order;
// the last `test_fraction` of them form the test split.
PipelineResult run_pipeline(const rdf::Graph& graph, const PipelineConfig& config, ChatClient& chat,
                            const PromptTemplates& prompts);

}  // namespace sparqlbench::datagen

#endif  // SPARQLBENCH_DATAGEN_DATAGEN_H_
