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

#include "sparqlbench/eval/evaluator.h"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <regex>
#include <set>
#include <thread>

#include "json.hpp"
#include "sparqlbench/exec/local_engine.h"
#include "sparqlbench/sparql/parser.h"
#include "sparqlbench/util/text.h"

namespace sparqlbench::eval {

using exec::SolutionTable;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr std::string_view kOutcomeNames[] = {
    "Correct", "ParseError", "UnsupportedFeature", "TranslatorError",
    "ExecError", "EmptyMismatch", "CountZeroOnEmpty", "WrongBindings",
};

const std::regex& declared_prefix_re() {
  static const std::regex re(R"((?:^|[^A-Za-z0-9_])PREFIX\s+([A-Za-z][A-Za-z0-9_.\-]*)?\s*:)",
                             std::regex::icase | std::regex::ECMAScript);
  return re;
}

bool mentions(std::string_view text, const char* pattern) {
  std::regex re(pattern, std::regex::icase | std::regex::ECMAScript);
  return std::regex_search(text.begin(), text.end(), re);
}

std::vector<exec::Row> sorted_rows(std::vector<exec::Row> rows, bool dedup) {
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return exec::compare_rows(a, b) < 0; });
  if (dedup) {
    rows.erase(std::unique(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return exec::compare_rows(a, b) == 0; }),
               rows.end());
  }
  return rows;
}

bool is_zero_count(const SolutionTable& t) {
  if (t.is_boolean() || t.header.size() != 1 || t.rows.size() != 1 || !t.rows[0][0]) return false;
  const rdf::Term& v = *t.rows[0][0];
  return v.is_numeric() && v.numeric_value() && *v.numeric_value() == 0;
}

}  // namespace

std::string_view to_string(Outcome outcome) { return kOutcomeNames[static_cast<int>(outcome)]; }

std::optional<Outcome> outcome_from_string(std::string_view name) {
  for (Outcome o : kAllOutcomes) {
    if (to_string(o) == name) return o;
  }
  return std::nullopt;
}

std::string assemble_query(std::string_view generated, const dataset::Dataset& dataset) {
  if (dataset.query_mode == dataset::QueryMode::kSelfContained) return std::string(generated);
  std::set<std::string> declared;
  std::string text(generated);
  for (auto it = std::sregex_iterator(text.begin(), text.end(), declared_prefix_re()); it != std::sregex_iterator(); ++it) {
    declared.insert((*it)[1].str());
  }
  std::string preamble;
  for (const auto& [prefix, iri] : dataset.prefix_preamble) {
    if (!declared.count(prefix)) preamble += "PREFIX " + prefix + ": <" + iri + ">\n";
  }
  return preamble + text;
}

Comparison compare_solutions(const SolutionTable& gold, const SolutionTable& generated, bool set_semantics) {
  if (gold.is_boolean() || generated.is_boolean()) {
    if (gold.is_boolean() != generated.is_boolean()) {
      return {false, std::string("result kind ") + (gold.is_boolean() ? "boolean" : "bindings") + " vs " +
                         (generated.is_boolean() ? "boolean" : "bindings")};
    }
    if (gold.boolean != generated.boolean) {
      return {false, std::string("boolean ") + (gold.boolean ? "true" : "false") + " vs " +
                         (generated.boolean ? "true" : "false")};
    }
    return {true, ""};
  }
  if (gold.header.size() != generated.header.size()) {
    return {false, "column count " + std::to_string(gold.header.size()) + " vs " + std::to_string(generated.header.size())};
  }
  if (gold.ordered) {
    if (gold.rows.size() != generated.rows.size()) {
      return {false, "row count " + std::to_string(gold.rows.size()) + " vs " + std::to_string(generated.rows.size())};
    }
    for (std::size_t i = 0; i < gold.rows.size(); ++i) {
      if (exec::compare_rows(gold.rows[i], generated.rows[i]) != 0) return {false, "row " + std::to_string(i) + " differs"};
    }
    return {true, ""};
  }
  auto a = sorted_rows(gold.rows, set_semantics);
  auto b = sorted_rows(generated.rows, set_semantics);
  if (a.size() != b.size()) {
    return {false, std::string(set_semantics ? "distinct row count " : "row count ") + std::to_string(a.size()) +
                       " vs " + std::to_string(b.size())};
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (exec::compare_rows(a[i], b[i]) != 0) return {false, "rows differ as multisets"};
  }
  return {true, ""};
}

Evaluator::Evaluator(const dataset::Dataset& dataset, exec::Backend backend, EvalOptions options)
    : dataset_(dataset), backend_(std::move(backend)), options_(options) {}

Evaluator::GoldResult Evaluator::run_gold(const dataset::Record& record) {
  GoldResult g;
  std::string text = assemble_query(record.gold_query, dataset_);
  sparql::ParseOptions po;
  po.strict_projection = options_.strict_projection;
  std::optional<sparql::QueryAst> ast;
  try {
    ast = sparql::parse_query(text, po);
  } catch (const sparql::QueryError& e) {
    if (backend_.is_local()) {
      g.error = std::string("gold not executable: ") + e.what();
      return g;
    }
  }
  g.distinct = ast ? ast->distinct : mentions(text, R"(SELECT\s+DISTINCT)");
  try {
    if (backend_.is_local()) {
      g.table = exec::evaluate_local(*ast, backend_.graph());
    } else {
      bool ordered = ast ? !ast->order_by.empty() : mentions(text, R"(ORDER\s+BY)");
      g.table = exec::execute_remote(text, backend_.endpoint(), ordered);
    }
  } catch (const exec::TransportFailure& e) {
    throw GoldUnavailable(std::string("gold query for ") + record.id + ": " + e.what());
  } catch (const exec::RemoteTimeout& e) {
    throw GoldUnavailable(std::string("gold query for ") + record.id + ": " + e.what());
  } catch (const std::exception& e) {
    g.error = std::string("gold not executable: ") + e.what();
  }
  return g;
}

const Evaluator::GoldResult& Evaluator::gold(const dataset::Record& record) {
  std::lock_guard<std::mutex> lock(gold_mu_);
  auto it = gold_.find(record.id);
  if (it == gold_.end()) it = gold_.emplace(record.id, run_gold(record)).first;
  return it->second;
}

void Evaluator::prepare() {
  for (const dataset::Record* r : dataset_.split(dataset::Split::kTest)) gold(*r);
}

EvalOutcome Evaluator::classify_error(const translator::TranslatorError& error) const {
  return {Outcome::kTranslatorError, std::string(translator::to_string(error.kind())) + ": " + error.what()};
}

EvalOutcome Evaluator::classify(const dataset::Record& record, std::string_view generated) {
  std::string text = assemble_query(generated, dataset_);
  sparql::ParseOptions po;
  po.strict_projection = options_.strict_projection;
  std::optional<sparql::QueryAst> ast;
  try {
    ast = sparql::parse_query(text, po);
  } catch (const sparql::UnsupportedFeature& e) {
    if (backend_.is_local()) return {Outcome::kUnsupportedFeature, e.construct()};
  } catch (const sparql::UnknownPrefix& e) {
    return {Outcome::kParseError, "unknown prefix '" + e.prefix() + "'"};
  } catch (const sparql::QueryError& e) {
    return {Outcome::kParseError, e.what()};
  }

  SolutionTable result;
  try {
    if (backend_.is_local()) {
      result = exec::evaluate_local(*ast, backend_.graph());
    } else {
      bool ordered = ast ? !ast->order_by.empty() : mentions(text, R"(ORDER\s+BY)");
      result = exec::execute_remote(text, backend_.endpoint(), ordered);
    }
  } catch (const std::exception& e) {
    return {Outcome::kExecError, e.what()};
  }

  const GoldResult& g = gold(record);
  if (!g.table) return {Outcome::kExecError, g.error};
  Comparison cmp = compare_solutions(*g.table, result, g.distinct);
  if (cmp.equal) return {Outcome::kCorrect, ""};

  bool gold_nonempty = !g.table->is_boolean() && !g.table->rows.empty();
  bool count_only = ast ? ast->projects_only_count() : result.header.size() == 1;
  if (gold_nonempty && count_only && is_zero_count(result)) {
    return {Outcome::kCountZeroOnEmpty, "COUNT returned 0; " + cmp.detail};
  }
  if (gold_nonempty && !result.is_boolean() && result.rows.empty()) return {Outcome::kEmptyMismatch, cmp.detail};
  return {Outcome::kWrongBindings, cmp.detail};
}

std::map<Outcome, int> CheckpointEval::tally() const {
  std::map<Outcome, int> t;
  for (Outcome o : kAllOutcomes) t[o] = 0;
  for (const auto& item : outcomes) ++t[item.result.outcome];
  return t;
}

std::string log_line(const CheckpointEval& cp, const ItemResult& item) {
  ordered_json j;
  j["run"] = cp.run_id;
  j["epoch"] = cp.epoch;
  j["question_id"] = item.question_id;
  j["outcome"] = std::string(to_string(item.result.outcome));
  j["detail"] = item.result.detail;
  j["generated_query"] = item.generated_query ? ordered_json(*item.generated_query) : ordered_json(nullptr);
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

RunLogWriter::RunLogWriter(const std::filesystem::path& path) : path_(path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  out_.open(path, std::ios::binary | std::ios::trunc);
  if (!out_) throw std::runtime_error("cannot open run log " + path.string());
}

void RunLogWriter::append(const CheckpointEval& checkpoint) {
  for (const auto& item : checkpoint.outcomes) out_ << log_line(checkpoint, item) << '\n';
  out_.flush();
  if (!out_) throw std::runtime_error("cannot write run log " + path_.string());
}

std::vector<CheckpointEval> read_run_log(std::string_view ndjson, const std::string& translator,
                                         const std::string& dataset) {
  std::map<int, CheckpointEval> by_epoch;
  std::size_t lineno = 0;
  for (const std::string& line : util::split_lines(ndjson)) {
    ++lineno;
    if (util::trim(line).empty()) continue;
    auto fail = [&](const std::string& why) {
      throw std::runtime_error("corrupt run log line " + std::to_string(lineno) + ": " + why);
    };
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) fail("not a JSON object");
    for (const char* key : {"run", "question_id", "outcome", "detail"}) {
      if (!j.contains(key) || !j[key].is_string()) fail(std::string("missing string field ") + key);
    }
    if (!j.contains("epoch") || !j["epoch"].is_number_integer()) fail("missing integer epoch");
    auto outcome = outcome_from_string(j["outcome"].get<std::string>());
    if (!outcome) fail("unknown outcome " + j["outcome"].get<std::string>());
    int epoch = j["epoch"].get<int>();
    CheckpointEval& cp = by_epoch[epoch];
    if (cp.run_id.empty()) {
      cp.run_id = j["run"].get<std::string>();
      cp.translator = translator;
      cp.dataset = dataset;
      cp.epoch = epoch;
    } else if (cp.run_id != j["run"].get<std::string>()) {
      fail("mixed run ids");
    }
    ItemResult item;
    item.question_id = j["question_id"].get<std::string>();
    item.result = {*outcome, j["detail"].get<std::string>()};
    if (j.contains("generated_query") && j["generated_query"].is_string()) {
      item.generated_query = j["generated_query"].get<std::string>();
    }
    if (*outcome == Outcome::kCorrect) ++cp.correct_count;
    cp.outcomes.push_back(std::move(item));
  }
  std::vector<CheckpointEval> out;
  for (auto& [epoch, cp] : by_epoch) {
    std::sort(cp.outcomes.begin(), cp.outcomes.end(), [](const auto& a, const auto& b) { return a.question_id < b.question_id; });
    out.push_back(std::move(cp));
  }
  return out;
}

CheckpointEval evaluate_checkpoint(translator::Translator& translator, Evaluator& evaluator,
                                   const std::string& run_id, std::optional<int> epoch, RunLogWriter* log,
                                   int jobs) {
  const dataset::Dataset& ds = evaluator.dataset();
  auto items = dataset::evaluation_items(ds);
  if (items.empty()) throw std::invalid_argument("dataset " + ds.name + " has an empty test split");
  evaluator.prepare();

  CheckpointEval cp;
  cp.run_id = run_id;
  cp.translator = translator.name();
  cp.dataset = ds.name;
  cp.epoch = epoch.value_or(0);
  cp.outcomes.resize(items.size());

  std::vector<std::optional<translator::TranslatorError>> errors(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    cp.outcomes[i].question_id = items[i].id;
    try {
      cp.outcomes[i].generated_query = translator.translate({items[i].id, items[i].question, ds.name, epoch});
    } catch (const translator::TranslatorError& e) {
      errors[i] = e;
    }
  }

  auto work = [&](std::size_t i) {
    cp.outcomes[i].result = errors[i] ? evaluator.classify_error(*errors[i])
                                      : evaluator.classify(*items[i].record, *cp.outcomes[i].generated_query);
  };
  int workers = std::max(1, jobs);
  if (!evaluator.backend().is_local()) workers = std::min(workers, std::max(1, evaluator.options().connection_cap));
  if (workers == 1) {
    for (std::size_t i = 0; i < items.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        try {
          for (std::size_t i; (i = next.fetch_add(1)) < items.size();) work(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }
  for (const auto& item : cp.outcomes) cp.correct_count += item.result.outcome == Outcome::kCorrect;
  if (log) log->append(cp);
  return cp;
}

}  // namespace sparqlbench::eval
