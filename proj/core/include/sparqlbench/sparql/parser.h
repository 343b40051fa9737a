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

#ifndef SPARQLBENCH_SPARQL_PARSER_H_
#define SPARQLBENCH_SPARQL_PARSER_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sparqlbench/rdf/term.h"
#include "sparqlbench/sparql/ast.h"

namespace sparqlbench::sparql {

// Base of every error parse_query can raise. Nothing else escapes the parser.
class QueryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The text is not valid in the grammar.
class SyntaxError : public QueryError {
 public:
  SyntaxError(std::size_t offset, const std::string& message);
  std::size_t offset() const { return offset_; }
  const std::string& detail() const { return detail_; }

 private:
  std::size_t offset_;
  std::string detail_;
};

// A projected variable (or COUNT argument) is never bound by the WHERE clause.
class ProjectionUnbound : public SyntaxError {
 public:
  ProjectionUnbound(std::size_t offset, const std::string& variable);
  const std::string& variable() const { return variable_; }

 private:
  std::string variable_;
};

// Recognized SPARQL 1.1 beyond the supported subset.
class UnsupportedFeature : public QueryError {
 public:
  explicit UnsupportedFeature(const std::string& construct);
  const std::string& construct() const { return construct_; }

 private:
  std::string construct_;
};

class UnknownPrefix : public QueryError {
 public:
  explicit UnknownPrefix(const std::string& prefix);
  const std::string& prefix() const { return prefix_; }

 private:
  std::string prefix_;
};

struct ParseOptions {
  // Consulted for prefixes the query prologue does not declare.
  const rdf::PrefixMap* ambient_prefixes = nullptr;
  // Reject projected variables that the WHERE clause never binds.
  bool strict_projection = true;
};

QueryAst parse_query(std::string_view text, const ParseOptions& options = {});

// Deterministic text that parses back to an equal AST.
std::string serialize_query(const QueryAst& ast);
std::string serialize_expression(const Expression& expr);

}  // namespace sparqlbench::sparql

#endif  // SPARQLBENCH_SPARQL_PARSER_H_
