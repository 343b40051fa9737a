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

#include "sparqlbench/translator/translator.h"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "sparqlbench/util/http.h"
#include "sparqlbench/util/text.h"

namespace sparqlbench::translator {

using nlohmann::json;
using nlohmann::ordered_json;

TranslatorError::TranslatorError(Kind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

std::string_view to_string(TranslatorError::Kind kind) {
  switch (kind) {
    case TranslatorError::Kind::kTimeout: return "timeout";
    case TranslatorError::Kind::kProcessExited: return "process-exited";
    case TranslatorError::Kind::kProtocolViolation: return "protocol-violation";
    case TranslatorError::Kind::kTransport: return "transport";
    case TranslatorError::Kind::kReported: return "reported";
    case TranslatorError::Kind::kNoAnswer: return "no-answer";
  }
  return "unknown";
}

std::string encode_request(const Request& request) {
  ordered_json j;
  j["id"] = request.id;
  j["question"] = request.question;
  j["dataset"] = request.dataset;
  if (request.epoch) j["epoch"] = *request.epoch;
  return j.dump();
}

std::string decode_response(std::string_view line, const std::string& expected_id) {
  using K = TranslatorError::Kind;
  json j = json::parse(line.begin(), line.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    std::string excerpt(line.substr(0, 80));
    throw TranslatorError(K::kProtocolViolation, "response is not a JSON object: " + excerpt);
  }
  auto id = j.find("id");
  if (id == j.end() || !id->is_string()) throw TranslatorError(K::kProtocolViolation, "response lacks a string id");
  if (id->get<std::string>() != expected_id) {
    throw TranslatorError(K::kProtocolViolation,
                          "response id '" + id->get<std::string>() + "' does not match request '" + expected_id + "'");
  }
  auto query = j.find("query");
  auto error = j.find("error");
  if ((query == j.end()) == (error == j.end())) {
    throw TranslatorError(K::kProtocolViolation, "response must carry exactly one of query, error");
  }
  if (error != j.end()) {
    if (!error->is_string()) throw TranslatorError(K::kProtocolViolation, "error must be a string");
    throw TranslatorError(K::kReported, error->get<std::string>());
  }
  if (!query->is_string()) throw TranslatorError(K::kProtocolViolation, "query must be a string");
  return std::string(util::trim(query->get_ref<const std::string&>()));
}

Translator::Translator(std::string name) : name_(std::move(name)) {
  if (name_.empty()) throw std::invalid_argument("translator name must be non-empty");
}

GoldOracle::GoldOracle(std::string name, const dataset::Dataset& dataset) : Translator(std::move(name)) {
  for (const auto& r : dataset.records) gold_[r.id] = r.gold_query;
}

std::string GoldOracle::translate(const Request& request) {
  std::string id = request.id;
  if (id.size() > 2 && id.ends_with("#p")) id.resize(id.size() - 2);
  auto it = gold_.find(id);
  if (it == gold_.end()) throw TranslatorError(TranslatorError::Kind::kNoAnswer, "no record with id " + request.id);
  return std::string(util::trim(it->second));
}

NullTranslator::NullTranslator(std::string name) : Translator(std::move(name)) {}

std::string NullTranslator::translate(const Request& request) { return std::string(util::trim(request.question)); }

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : text) {
    unsigned char u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || u >= 0x80) {
      cur.push_back(u < 0x80 ? static_cast<char>(std::tolower(u)) : c);
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::set<std::string> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  if (sa.empty() && sb.empty()) return 0.0;
  std::size_t inter = 0;
  for (const auto& t : sa) inter += sb.count(t);
  return static_cast<double>(inter) / static_cast<double>(sa.size() + sb.size() - inter);
}

std::string retrieval_baseline(const std::vector<dataset::Record>& train, std::string_view question) {
  if (train.empty()) throw std::invalid_argument("retrieval baseline needs a non-empty training split");
  auto q = tokenize(question);
  const dataset::Record* best = nullptr;
  double best_score = -1.0;
  for (const auto& r : train) {
    double s = jaccard(q, tokenize(r.question));
    if (s > best_score || (s == best_score && r.id < best->id)) {
      best = &r;
      best_score = s;
    }
  }
  return best->gold_query;
}

RetrievalTranslator::RetrievalTranslator(std::string name, std::vector<dataset::Record> train)
    : Translator(std::move(name)), train_(std::move(train)) {
  if (train_.empty()) throw std::invalid_argument("retrieval translator needs training records");
}

std::string RetrievalTranslator::translate(const Request& request) {
  return std::string(util::trim(retrieval_baseline(train_, request.question)));
}

TranscriptTranslator::TranscriptTranslator(std::string name, const std::filesystem::path& path)
    : TranscriptTranslator(std::move(name), util::read_file(path), path.string()) {}

std::unique_ptr<TranscriptTranslator> TranscriptTranslator::from_text(std::string name, std::string_view ndjson) {
  return std::unique_ptr<TranscriptTranslator>(new TranscriptTranslator(std::move(name), ndjson, "<memory>"));
}

TranscriptTranslator::TranscriptTranslator(std::string name, std::string_view ndjson, const std::string& source)
    : Translator(std::move(name)) {
  std::size_t lineno = 0;
  for (const std::string& raw : util::split_lines(ndjson)) {
    ++lineno;
    if (util::trim(raw).empty()) continue;
    auto where = [&] { return source + ":" + std::to_string(lineno) + ": "; };
    json j = json::parse(raw, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("id") || !j["id"].is_string()) {
      throw std::runtime_error(where() + "transcript line must be an object with a string id");
    }
    int epoch = -1;
    if (auto e = j.find("epoch"); e != j.end() && !e->is_null()) {
      if (!e->is_number_integer()) throw std::runtime_error(where() + "epoch must be an integer");
      epoch = e->get<int>();
    }
    Entry entry;
    if (auto q = j.find("query"); q != j.end() && q->is_string()) {
      entry.query = q->get<std::string>();
    } else if (auto err = j.find("error"); err != j.end() && err->is_string()) {
      entry.error = err->get<std::string>();
    } else {
      throw std::runtime_error(where() + "transcript line needs a string query or error");
    }
    auto key = std::make_pair(j["id"].get<std::string>(), epoch);
    if (!entries_.emplace(key, std::move(entry)).second) {
      throw std::runtime_error(where() + "duplicate transcript entry for " + key.first);
    }
  }
}

std::string TranscriptTranslator::translate(const Request& request) {
  auto it = entries_.end();
  if (request.epoch) it = entries_.find({request.id, *request.epoch});
  if (it == entries_.end()) it = entries_.find({request.id, -1});
  if (it == entries_.end()) {
    throw TranslatorError(TranslatorError::Kind::kNoAnswer, "transcript has no entry for " + request.id);
  }
  if (!it->second.query) throw TranslatorError(TranslatorError::Kind::kReported, it->second.error);
  return std::string(util::trim(*it->second.query));
}

HttpTranslator::HttpTranslator(std::string name, std::string url, std::chrono::milliseconds timeout)
    : Translator(std::move(name)), url_(std::move(url)), timeout_(timeout) {
  if (!util::is_http_url(url_)) throw std::invalid_argument("translator URL must be http(s): " + url_);
  while (!url_.empty() && url_.back() == '/') url_.pop_back();
  if (!url_.ends_with("/translate")) url_ += "/translate";
}

std::string HttpTranslator::translate(const Request& request) {
  util::HttpRequest req;
  req.url = url_;
  req.body = encode_request(request);
  req.content_type = "application/json";
  req.timeout = timeout_;
  util::HttpResponse resp;
  try {
    resp = util::http_post(req);
  } catch (const util::TimeoutError& e) {
    throw TranslatorError(TranslatorError::Kind::kTimeout, e.what());
  } catch (const util::TransportError& e) {
    throw TranslatorError(TranslatorError::Kind::kTransport, e.what());
  }
  if (resp.status < 200 || resp.status >= 300) {
    // Error bodies that follow the protocol are reported as such.
    json j = json::parse(resp.body, nullptr, false);
    if (!j.is_discarded() && j.is_object() && j.contains("error") && j["error"].is_string()) {
      throw TranslatorError(TranslatorError::Kind::kReported, j["error"].get<std::string>());
    }
    throw TranslatorError(TranslatorError::Kind::kTransport, "translator returned HTTP " + std::to_string(resp.status));
  }
  return decode_response(resp.body, request.id);
}

TranslatorSpec parse_translator_spec(std::string_view text) {
  TranslatorSpec spec;
  std::string body(util::trim(text));
  std::string name;
  if (auto eq = body.find('='); eq != std::string::npos && body.find(':') > eq) {
    name = body.substr(0, eq);
    body = body.substr(eq + 1);
  }
  using T = TranslatorSpec::Type;
  if (body == "gold") {
    spec.type = T::kGold;
  } else if (body == "null") {
    spec.type = T::kNull;
  } else if (body == "retrieval") {
    spec.type = T::kRetrieval;
  } else if (body.starts_with("transcript:")) {
    spec.type = T::kTranscript;
    spec.transcript = body.substr(11);
    if (name.empty()) name = spec.transcript.stem().string();
  } else if (body.starts_with("cmd:")) {
    spec.type = T::kSubprocess;
    std::string rest = body.substr(4);
    std::size_t i = 0;
    while (i < rest.size()) {
      while (i < rest.size() && std::isspace(static_cast<unsigned char>(rest[i]))) ++i;
      std::size_t j = i;
      while (j < rest.size() && !std::isspace(static_cast<unsigned char>(rest[j]))) ++j;
      if (j > i) spec.subprocess.argv.push_back(rest.substr(i, j - i));
      i = j;
    }
    if (spec.subprocess.argv.empty()) throw std::invalid_argument("cmd: translator needs a program");
    if (name.empty()) name = std::filesystem::path(spec.subprocess.argv[0]).filename().string();
  } else if (util::is_http_url(body)) {
    spec.type = T::kHttp;
    spec.url = body;
    if (name.empty()) name = "http";
  } else {
    throw std::invalid_argument("unrecognized translator spec: " + std::string(text));
  }
  if (name.empty()) name = body;
  spec.name = name;
  return spec;
}

std::unique_ptr<Translator> make_translator(const TranslatorSpec& spec, const dataset::Dataset& dataset) {
  using T = TranslatorSpec::Type;
  switch (spec.type) {
    case T::kGold: return std::make_unique<GoldOracle>(spec.name, dataset);
    case T::kNull: return std::make_unique<NullTranslator>(spec.name);
    case T::kRetrieval: {
      std::vector<dataset::Record> train;
      for (const auto* r : dataset.split(dataset::Split::kTrain)) train.push_back(*r);
      std::sort(train.begin(), train.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
      return std::make_unique<RetrievalTranslator>(spec.name, std::move(train));
    }
    case T::kTranscript: return std::make_unique<TranscriptTranslator>(spec.name, spec.transcript);
    case T::kSubprocess: {
      SubprocessOptions opts = spec.subprocess;
      opts.timeout = spec.timeout;
      return std::make_unique<SubprocessTranslator>(spec.name, std::move(opts));
    }
    case T::kHttp: return std::make_unique<HttpTranslator>(spec.name, spec.url, spec.timeout);
  }
  throw std::logic_error("unhandled translator type");
}

}  // namespace sparqlbench::translator
