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

#include "sparqlbench/datagen/datagen.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include "json.hpp"
#include "sparqlbench/exec/local_engine.h"
#include "sparqlbench/rdf/turtle.h"
#include "sparqlbench/sparql/parser.h"
#include "sparqlbench/util/http.h"
#include "sparqlbench/util/text.h"

namespace sparqlbench::datagen {

using nlohmann::json;
using nlohmann::ordered_json;

ChatClient::ChatClient(ChatClientConfig config) : config_(std::move(config)) {
  if (config_.replay) {
    for (auto& line : util::split_lines(util::read_file(*config_.replay))) {
      if (!util::trim(line).empty()) replay_lines_.push_back(std::move(line));
    }
  } else if (!util::is_http_url(config_.endpoint)) {
    throw std::invalid_argument("chat endpoint must be an http(s) URL when no replay transcript is given");
  }
}

std::string ChatClient::request_body(const std::vector<ChatMessage>& messages) const {
  ordered_json body;
  body["model"] = config_.model;
  body["temperature"] = config_.temperature;
  body["messages"] = ordered_json::array();
  for (const auto& m : messages) body["messages"].push_back({{"role", m.role}, {"content", m.content}});
  return body.dump();
}

namespace {

std::string reply_content(const json& response) {
  try {
    return response.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception&) {
    throw ChatError("chat response lacks choices[0].message.content");
  }
}

}  // namespace

std::string ChatClient::complete(const std::vector<ChatMessage>& messages) {
  std::string body = request_body(messages);
  if (config_.replay) {
    if (replay_pos_ >= replay_lines_.size()) throw ChatError("replay transcript exhausted");
    json entry = json::parse(replay_lines_[replay_pos_++], nullptr, false);
    if (entry.is_discarded() || !entry.contains("response")) {
      throw ChatError("replay line " + std::to_string(replay_pos_) + " lacks a response");
    }
    return reply_content(entry["response"]);
  }

  util::HttpRequest req;
  req.url = config_.endpoint;
  req.body = body;
  req.content_type = "application/json";
  req.timeout = config_.timeout;
  if (!config_.api_key_env.empty()) {
    const char* key = std::getenv(config_.api_key_env.c_str());
    if (!key || !*key) throw ChatError("environment variable " + config_.api_key_env + " is not set");
    req.headers["Authorization"] = std::string("Bearer ") + key;
  }
  util::HttpResponse resp;
  try {
    resp = util::http_post(req);
  } catch (const util::TransportError& e) {
    throw ChatError(std::string("chat transport: ") + e.what());
  }
  if (resp.status == 401 || resp.status == 403) throw ChatError("chat endpoint rejected the credentials");
  if (resp.status < 200 || resp.status >= 300) throw ChatError("chat endpoint returned HTTP " + std::to_string(resp.status));
  json parsed = json::parse(resp.body, nullptr, false);
  if (parsed.is_discarded()) throw ChatError("chat endpoint returned non-JSON");
  if (config_.record) {
    std::ofstream out(*config_.record, std::ios::app | std::ios::binary);
    ordered_json entry;
    entry["request"] = json::parse(body);
    entry["response"] = parsed;
    out << entry.dump() << '\n';
  }
  return reply_content(parsed);
}

PromptTemplates PromptTemplates::load(const std::filesystem::path& dir) {
  auto read = [&](const char* name) {
    std::string out;
    for (const auto& line : util::split_lines(util::read_file(dir / name))) {
      if (!line.starts_with("#")) out += line + "\n";
    }
    return std::string(util::trim(out));
  };
  return {read("generate.txt"), read("paraphrase.txt")};
}

std::string fill_template(std::string text, const std::vector<std::pair<std::string, std::string>>& values) {
  for (const auto& [key, value] : values) text = util::replace_all(std::move(text), "{{" + key + "}}", value);
  return text;
}

std::optional<std::vector<GenerationCandidate>> parse_candidates(const std::string& reply) {
  auto open = reply.find('[');
  auto close = reply.rfind(']');
  if (open == std::string::npos || close == std::string::npos || close < open) return std::nullopt;
  json arr = json::parse(reply.substr(open, close - open + 1), nullptr, false);
  if (arr.is_discarded() || !arr.is_array()) return std::nullopt;
  std::vector<GenerationCandidate> out;
  for (const auto& t : arr) {
    if (!t.is_object() || !t.contains("question") || !t.contains("query") || !t.contains("expected")) return std::nullopt;
    if (!t["question"].is_string() || !t["query"].is_string()) return std::nullopt;
    GenerationCandidate c;
    c.question = t["question"].get<std::string>();
    c.query = t["query"].get<std::string>();
    auto add = [&](const json& v) {
      c.expected.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    };
    if (t["expected"].is_array()) {
      for (const auto& v : t["expected"]) add(v);
    } else {
      add(t["expected"]);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<GenerationCandidate> generate_candidates(const rdf::Graph& graph, std::size_t n, ChatClient& chat,
                                                     const PromptTemplates& prompts,
                                                     const GenerationOptions& options) {
  if (graph.size() > options.triple_cap) {
    throw PromptBudgetExceeded("graph has " + std::to_string(graph.size()) + " triples; the prompt cap is " +
                               std::to_string(options.triple_cap));
  }
  std::string prompt = fill_template(prompts.generate, {{"n", std::to_string(n)},
                                                        {"graph", rdf::serialize_turtle(graph, options.prefixes)}});
  for (int attempt = 0; attempt <= chat.config().max_retries; ++attempt) {
    auto parsed = parse_candidates(chat.complete({{"user", prompt}}));
    if (parsed) {
      if (parsed->size() > n) parsed->resize(n);
      return *parsed;
    }
  }
  return {};
}

std::string normalize_value(std::string_view text, const rdf::PrefixMap& prefixes) {
  std::string v(util::trim(text));
  if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'')) {
    auto close = v.rfind(v.front());
    if (close > 0) return std::string(util::trim(v.substr(1, close - 1)));
  }
  if (v.size() >= 2 && v.front() == '<' && v.back() == '>') return v.substr(1, v.size() - 2);
  if (auto colon = v.find(':'); colon != std::string::npos && v.find(' ') == std::string::npos) {
    auto it = prefixes.find(v.substr(0, colon));
    if (it != prefixes.end()) return it->second + v.substr(colon + 1);
  }
  return v;
}

GenerationCandidate verify_candidate(GenerationCandidate c, const rdf::Graph& graph, const rdf::PrefixMap& prefixes) {
  auto reject = [&](const char* reason, std::string detail) {
    c.verified = false;
    c.rejection_reason = reason;
    c.rejection_detail = std::move(detail);
    return c;
  };
  sparql::ParseOptions po;
  po.ambient_prefixes = &prefixes;
  exec::SolutionTable table;
  try {
    table = exec::evaluate_local(sparql::parse_query(c.query, po), graph);
  } catch (const sparql::QueryError& e) {
    return reject("ParseError", e.what());
  } catch (const std::exception& e) {
    return reject("ExecError", e.what());
  }
  std::vector<std::string> got;
  if (table.is_boolean()) {
    got.push_back(table.boolean ? "true" : "false");
  } else {
    for (const auto& row : table.rows) {
      for (const auto& cell : row) {
        if (!cell) continue;
        got.push_back(cell->kind() == rdf::Term::Kind::kBlank ? "_:" + cell->value()
                                                              : std::string(util::trim(cell->value())));
      }
    }
  }
  std::vector<std::string> want;
  for (const auto& e : c.expected) want.push_back(normalize_value(e, prefixes));
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  if (got.empty() && !want.empty()) return reject("EmptyResult", "query returned no values");
  if (got != want) {
    return reject("ValueMismatch", "expected " + std::to_string(want.size()) + " value(s), query returned " +
                                       std::to_string(got.size()));
  }
  c.verified = true;
  c.rejection_reason.reset();
  c.rejection_detail.clear();
  return c;
}

ParaphraseAborted::ParaphraseAborted(const std::string& message, ParaphraseResult partial)
    : ChatError(message), partial_(std::move(partial)) {}

ParaphraseResult paraphrase_all(std::vector<dataset::Record> records, ChatClient& chat,
                                const PromptTemplates& prompts) {
  ParaphraseResult result;
  for (auto& rec : records) {
    auto ask = [&] {
      std::string reply(util::trim(chat.complete({{"user", fill_template(prompts.paraphrase, {{"question", rec.question}})}})));
      if (reply.size() >= 2 && reply.front() == '"' && reply.back() == '"') reply = reply.substr(1, reply.size() - 2);
      return reply;
    };
    try {
      std::string p = ask();
      if (util::to_lower(p) == util::to_lower(rec.question)) {
        p = ask();
        if (util::to_lower(p) == util::to_lower(rec.question)) result.warnings.push_back(rec.id);
      }
      rec.paraphrase = p;
    } catch (const ChatError& e) {
      throw ParaphraseAborted(e.what(), std::move(result));
    }
    result.records.push_back(rec);
  }
  return result;
}

PipelineResult run_pipeline(const rdf::Graph& graph, const PipelineConfig& config, ChatClient& chat,
                            const PromptTemplates& prompts) {
  PipelineResult out;
  const rdf::PrefixMap& prefixes = config.generation.prefixes;
  std::vector<dataset::Record> accepted;
  for (auto& cand : generate_candidates(graph, config.candidates, chat, prompts, config.generation)) {
    GenerationCandidate v = verify_candidate(std::move(cand), graph, prefixes);
    if (!v.verified) {
      out.rejected.push_back(std::move(v));
      continue;
    }
    dataset::Record r;
    char id[32];
    std::snprintf(id, sizeof id, "%03zu", accepted.size() + 1);
    r.id = config.id_prefix + id;
    r.question = v.question;
    r.gold_query = v.query;
    accepted.push_back(std::move(r));
  }
  auto n_test = static_cast<std::size_t>(std::llround(static_cast<double>(accepted.size()) * config.test_fraction));
  for (std::size_t i = 0; i < accepted.size(); ++i) {
    accepted[i].split = i + n_test >= accepted.size() ? dataset::Split::kTest : dataset::Split::kTrain;
  }
  if (config.paraphrase) {
    auto p = paraphrase_all(std::move(accepted), chat, prompts);
    accepted = std::move(p.records);
    out.warnings = std::move(p.warnings);
  }
  dataset::Dataset& ds = out.dataset;
  ds.name = config.dataset_name;
  ds.prefix_preamble = prefixes;
  ds.query_mode = prefixes.empty() ? dataset::QueryMode::kSelfContained : dataset::QueryMode::kAmbientPrefixes;
  ds.backend.graph_paths = config.graph_paths;
  ds.records = std::move(accepted);
  return out;
}

}  // namespace sparqlbench::datagen
