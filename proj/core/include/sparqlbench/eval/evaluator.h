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

#ifndef SPARQLBENCH_EVAL_EVALUATOR_H_
#define SPARQLBENCH_EVAL_EVALUATOR_H_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sparqlbench/dataset/dataset.h"
#include "sparqlbench/exec/remote.h"
#include "sparqlbench/exec/solution_table.h"
#include "sparqlbench/translator/translator.h"

namespace sparqlbench::eval {

enum class Outcome {
  kCorrect,
  kParseError,
  kUnsupportedFeature,
  kTranslatorError,
  kExecError,
  kEmptyMismatch,
  kCountZeroOnEmpty,
  kWrongBindings,
};

inline constexpr Outcome kAllOutcomes[] = {
    Outcome::kCorrect,   Outcome::kParseError,    Outcome::kUnsupportedFeature, Outcome::kTranslatorError,
    Outcome::kExecError, Outcome::kEmptyMismatch, Outcome::kCountZeroOnEmpty,   Outcome::kWrongBindings,
};

std::string_view to_string(Outcome outcome);
std::optional<Outcome> outcome_from_string(std::string_view name);

struct EvalOutcome {
  Outcome outcome = Outcome::kCorrect;
  std::string detail;
  friend bool operator==(const EvalOutcome&, const EvalOutcome&) = default;
};

// Prepends PREFIX declarations from the preamble that the text does not
// declare itself (ambient-prefixes mode); identity in self-contained mode.
std::string assemble_query(std::string_view generated, const dataset::Dataset& dataset);

struct Comparison {
  bool equal = false;
  std::string detail;  // empty when equal
};

// Boolean tables compare by value. Bindings tables compare positionally with
// variable names ignored: as sequences when gold is ordered, otherwise as
// multisets (as sets when `set_semantics`).
Comparison compare_solutions(const exec::SolutionTable& gold, const exec::SolutionTable& generated,
                             bool set_semantics = false);

// The gold query cannot be run because the backend is unreachable.
class GoldUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EvalOptions {
  bool strict_projection = true;
  // Upper bound on concurrent remote requests.
  int connection_cap = 4;
};

// Judges generated queries for one dataset and backend. Gold results are
// computed once and cached.
class Evaluator {
 public:
  Evaluator(const dataset::Dataset& dataset, exec::Backend backend, EvalOptions options = {});

  const dataset::Dataset& dataset() const { return dataset_; }
  const exec::Backend& backend() const { return backend_; }
  const EvalOptions& options() const { return options_; }

  // Executes every gold query not yet cached. Throws GoldUnavailable on
  // transport failure of a remote backend.
  void prepare();

  EvalOutcome classify(const dataset::Record& record, std::string_view generated);
  EvalOutcome classify_error(const translator::TranslatorError& error) const;

 private:
  struct GoldResult {
    std::optional<exec::SolutionTable> table;
    std::string error;
    bool distinct = false;
  };
  const GoldResult& gold(const dataset::Record& record);
  GoldResult run_gold(const dataset::Record& record);

  const dataset::Dataset& dataset_;
  exec::Backend backend_;
  EvalOptions options_;
  std::mutex gold_mu_;
  std::map<std::string, GoldResult> gold_;
};

struct ItemResult {
  std::string question_id;
  EvalOutcome result;
  std::optional<std::string> generated_query;  // absent on translator errors
  friend bool operator==(const ItemResult&, const ItemResult&) = default;
};

struct CheckpointEval {
  std::string run_id;
  std::string translator;
  std::string dataset;
  int epoch = 0;
  std::vector<ItemResult> outcomes;  // sorted by question id
  int correct_count = 0;

  std::map<Outcome, int> tally() const;
};

struct RunRecord {
  std::string run_id;
  std::uint32_t seed = 0;
  std::vector<CheckpointEval> checkpoints;  // ascending epoch
};

// One NDJSON line per outcome.
std::string log_line(const CheckpointEval& checkpoint, const ItemResult& item);

// Appends outcome lines to one run log. Single writer.
class RunLogWriter {
 public:
  explicit RunLogWriter(const std::filesystem::path& path);
  void append(const CheckpointEval& checkpoint);

 private:
  std::ofstream out_;
  std::filesystem::path path_;
};

// Parses a run log back into checkpoints (ascending epoch).
std::vector<CheckpointEval> read_run_log(std::string_view ndjson, const std::string& translator,
                                         const std::string& dataset);

// Translates every evaluation item serially, then classifies with up to `jobs`
// workers; results are merged by question id. Appends to `log` before returning.
CheckpointEval evaluate_checkpoint(translator::Translator& translator, Evaluator& evaluator,
                                   const std::string& run_id, std::optional<int> epoch,
                                   RunLogWriter* log = nullptr, int jobs = 1);

}  // namespace sparqlbench::eval

#endif  // SPARQLBENCH_EVAL_EVALUATOR_H_
