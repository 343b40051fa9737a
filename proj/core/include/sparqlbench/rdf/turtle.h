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

#ifndef SPARQLBENCH_RDF_TURTLE_H_
#define SPARQLBENCH_RDF_TURTLE_H_

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sparqlbench/rdf/graph.h"

namespace sparqlbench::rdf {

class TurtleError : public std::runtime_error {
 public:
  enum class Code { kSyntax, kUndefinedPrefix, kInvalidIri, kUnsupported, kIo };

  TurtleError(Code code, std::size_t line, std::size_t column, const std::string& message);

  Code code() const { return code_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& detail() const { return detail_; }

 private:
  Code code_;
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

struct TurtleOptions {
  // Base IRI for resolving relative references.
  std::optional<std::string> base;
  // Prepended to every blank node label in the document. Used when several
  // documents are merged into one graph.
  std::string blank_node_prefix;
};

struct ParsedTurtle {
  Graph graph;
  PrefixMap prefixes;
};

// Parses a Turtle document. Collections are rejected. Numeric shorthand is
// normalized to xsd:integer / xsd:decimal / xsd:double typed literals.
ParsedTurtle parse_turtle(std::string_view text, const TurtleOptions& options = {});

// Writes the graph as Turtle: prefix declarations from `prefixes`, then one
// subject block per subject in canonical order.
std::string serialize_turtle(const Graph& graph, const PrefixMap& prefixes);

// Loads a file, or every *.ttl file of a directory (sorted by name), into one
// graph. Blank node labels are prefixed per file when more than one file is
// merged.
Graph load_graph(const std::filesystem::path& path);
Graph load_graphs(const std::vector<std::filesystem::path>& paths);

// RFC 3986 reference resolution.
std::string resolve_iri(std::string_view base, std::string_view reference);
bool is_absolute_iri(std::string_view iri);

}  // namespace sparqlbench::rdf

#endif  // SPARQLBENCH_RDF_TURTLE_H_
