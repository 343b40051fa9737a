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

#include "sparqlbench/exec/remote.h"

#include <thread>

#include "json.hpp"
#include "sparqlbench/util/http.h"

namespace sparqlbench::exec {

using nlohmann::json;

HttpStatusError::HttpStatusError(int status, const std::string& body_excerpt)
    : RemoteError("endpoint returned HTTP " + std::to_string(status) +
                  (body_excerpt.empty() ? "" : ": " + body_excerpt)),
      status_(status) {}

MalformedResults::MalformedResults(std::string json_path, const std::string& message)
    : RemoteError("malformed SPARQL results at " + json_path + ": " + message), path_(std::move(json_path)) {}

Backend Backend::local(std::shared_ptr<const rdf::Graph> graph) {
  Backend b;
  b.target_ = std::move(graph);
  return b;
}

Backend Backend::remote(RemoteEndpoint endpoint) {
  if (!util::is_http_url(endpoint.url)) {
    throw std::invalid_argument("endpoint URL must be absolute http(s): " + endpoint.url);
  }
  Backend b;
  b.target_ = std::move(endpoint);
  return b;
}

const rdf::Graph& Backend::graph() const {
  return *std::get<std::shared_ptr<const rdf::Graph>>(target_);
}

const RemoteEndpoint& Backend::endpoint() const { return std::get<RemoteEndpoint>(target_); }

std::string Backend::describe() const { return is_local() ? "local" : endpoint().url; }

namespace {

rdf::Term binding_term(const json& cell, const std::string& path) {
  if (!cell.is_object()) throw MalformedResults(path, "binding is not an object");
  auto type = cell.find("type");
  auto value = cell.find("value");
  if (type == cell.end() || !type->is_string()) throw MalformedResults(path + ".type", "missing type");
  if (value == cell.end() || !value->is_string()) throw MalformedResults(path + ".value", "missing value");
  const std::string& t = type->get_ref<const std::string&>();
  std::string v = value->get<std::string>();
  if (t == "uri") return rdf::Term::iri(std::move(v));
  if (t == "bnode") return rdf::Term::blank(std::move(v));
  if (t == "literal" || t == "typed-literal") {
    auto lang = cell.find("xml:lang");
    auto dt = cell.find("datatype");
    if (lang != cell.end() && dt != cell.end() && dt->get<std::string>() != rdf::kRdfLangString) {
      throw MalformedResults(path, "literal has both xml:lang and datatype");
    }
    if (lang != cell.end()) {
      if (!lang->is_string()) throw MalformedResults(path + ".xml:lang", "not a string");
      return rdf::Term::lang_literal(std::move(v), lang->get<std::string>());
    }
    if (dt != cell.end()) {
      if (!dt->is_string()) throw MalformedResults(path + ".datatype", "not a string");
      return rdf::Term::typed(std::move(v), dt->get<std::string>());
    }
    return rdf::Term::literal(std::move(v));
  }
  throw MalformedResults(path + ".type", "unknown term type '" + t + "'");
}

json term_json(const rdf::Term& t) {
  switch (t.kind()) {
    case rdf::Term::Kind::kIri: return {{"type", "uri"}, {"value", t.value()}};
    case rdf::Term::Kind::kBlank: return {{"type", "bnode"}, {"value", t.value()}};
    case rdf::Term::Kind::kLiteral: {
      json j = {{"type", "literal"}, {"value", t.value()}};
      if (!t.language().empty()) j["xml:lang"] = t.language();
      if (!t.datatype().empty()) j["datatype"] = t.datatype();
      return j;
    }
  }
  return {};
}

}  // namespace

SolutionTable parse_results_json(std::string_view document, bool ordered) {
  json doc = json::parse(document.begin(), document.end(), nullptr, false);
  if (doc.is_discarded()) throw MalformedResults("$", "not valid JSON");
  if (!doc.is_object()) throw MalformedResults("$", "top level is not an object");
  std::vector<std::string> header;
  auto head = doc.find("head");
  if (head == doc.end() || !head->is_object()) throw MalformedResults("$.head", "missing head object");
  if (auto vars = head->find("vars"); vars != head->end()) {
    if (!vars->is_array()) throw MalformedResults("$.head.vars", "not an array");
    for (std::size_t i = 0; i < vars->size(); ++i) {
      if (!(*vars)[i].is_string()) throw MalformedResults("$.head.vars[" + std::to_string(i) + "]", "not a string");
      header.push_back((*vars)[i].get<std::string>());
    }
  }
  if (auto boolean = doc.find("boolean"); boolean != doc.end()) {
    if (!boolean->is_boolean()) throw MalformedResults("$.boolean", "not a boolean");
    return SolutionTable::ask(boolean->get<bool>());
  }
  auto results = doc.find("results");
  if (results == doc.end() || !results->is_object()) throw MalformedResults("$.results", "missing results object");
  auto bindings = results->find("bindings");
  if (bindings == results->end() || !bindings->is_array()) {
    throw MalformedResults("$.results.bindings", "missing bindings array");
  }
  std::vector<Row> rows;
  rows.reserve(bindings->size());
  for (std::size_t i = 0; i < bindings->size(); ++i) {
    const json& b = (*bindings)[i];
    std::string path = "$.results.bindings[" + std::to_string(i) + "]";
    if (!b.is_object()) throw MalformedResults(path, "not an object");
    Row row(header.size());
    for (auto it = b.begin(); it != b.end(); ++it) {
      auto col = std::find(header.begin(), header.end(), it.key());
      if (col == header.end()) throw MalformedResults(path + "." + it.key(), "variable not declared in head.vars");
      row[static_cast<std::size_t>(col - header.begin())] = binding_term(it.value(), path + "." + it.key());
    }
    rows.push_back(std::move(row));
  }
  return SolutionTable::bindings(std::move(header), std::move(rows), ordered);
}

std::string results_to_json(const SolutionTable& table) {
  json doc;
  if (table.is_boolean()) {
    doc["head"] = json::object();
    doc["boolean"] = table.boolean;
    return doc.dump();
  }
  doc["head"]["vars"] = table.header;
  json bindings = json::array();
  for (const Row& r : table.rows) {
    json b = json::object();
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (r[i]) b[table.header[i]] = term_json(*r[i]);
    }
    bindings.push_back(std::move(b));
  }
  doc["results"]["bindings"] = std::move(bindings);
  return doc.dump();
}

SolutionTable execute_remote(const std::string& query_text, const RemoteEndpoint& endpoint, bool ordered) {
  util::HttpRequest request;
  request.url = endpoint.url;
  request.body = "query=" + util::form_encode(query_text);
  request.content_type = "application/x-www-form-urlencoded";
  request.headers = endpoint.headers;
  request.headers["Accept"] = "application/sparql-results+json";
  request.timeout = endpoint.timeout;

  auto delay = endpoint.backoff;
  for (int attempt = 0;; ++attempt) {
    try {
      util::HttpResponse response = util::http_post(request);
      if (response.status < 200 || response.status >= 300) {
        throw HttpStatusError(response.status, response.body.substr(0, 200));
      }
      return parse_results_json(response.body, ordered);
    } catch (const util::TimeoutError& e) {
      if (attempt >= endpoint.retries) throw RemoteTimeout(e.what());
    } catch (const util::TransportError& e) {
      if (attempt >= endpoint.retries) throw TransportFailure(e.what());
    }
    std::this_thread::sleep_for(delay);
    delay *= 2;
  }
}

}  // namespace sparqlbench::exec
