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

#ifndef SPARQLBENCH_EXEC_REMOTE_H_
#define SPARQLBENCH_EXEC_REMOTE_H_

#include <chrono>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "sparqlbench/exec/solution_table.h"
#include "sparqlbench/rdf/graph.h"

namespace sparqlbench::exec {

// Base for every failure of the remote execution path.
class RemoteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TransportFailure : public RemoteError {
 public:
  using RemoteError::RemoteError;
};

class RemoteTimeout : public RemoteError {
 public:
  using RemoteError::RemoteError;
};

class HttpStatusError : public RemoteError {
 public:
  HttpStatusError(int status, const std::string& body_excerpt);
  int status() const { return status_; }

 private:
  int status_;
};

class MalformedResults : public RemoteError {
 public:
  MalformedResults(std::string json_path, const std::string& message);
  const std::string& json_path() const { return path_; }

 private:
  std::string path_;
};

struct RemoteEndpoint {
  std::string url;  // absolute http(s)
  std::chrono::seconds timeout{30};
  int retries = 2;
  std::map<std::string, std::string> headers;
  // First retry delay; doubles per attempt.
  std::chrono::milliseconds backoff{1000};
};

// Where queries run: an in-memory graph or a SPARQL endpoint.
class Backend {
 public:
  static Backend local(std::shared_ptr<const rdf::Graph> graph);
  static Backend remote(RemoteEndpoint endpoint);

  bool is_local() const { return std::holds_alternative<std::shared_ptr<const rdf::Graph>>(target_); }
  const rdf::Graph& graph() const;
  const RemoteEndpoint& endpoint() const;

  // "local" or the endpoint URL; recorded in run manifests.
  std::string describe() const;

 private:
  std::variant<std::shared_ptr<const rdf::Graph>, RemoteEndpoint> target_;
};

// SPARQL 1.1 Query Results JSON to a table. Throws MalformedResults naming the
// JSON path of the first offending element.
SolutionTable parse_results_json(std::string_view document, bool ordered = false);

// Inverse of parse_results_json, used by fixtures and test servers.
std::string results_to_json(const SolutionTable& table);

// POSTs the query (form-encoded) with an Accept header for results JSON.
// Transport failures and timeouts are retried with exponential backoff;
// HTTP status errors and malformed bodies are not.
SolutionTable execute_remote(const std::string& query_text, const RemoteEndpoint& endpoint,
                             bool ordered = false);

}  // namespace sparqlbench::exec

#endif  // SPARQLBENCH_EXEC_REMOTE_H_
