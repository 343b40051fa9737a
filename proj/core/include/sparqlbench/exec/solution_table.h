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

#ifndef SPARQLBENCH_EXEC_SOLUTION_TABLE_H_
#define SPARQLBENCH_EXEC_SOLUTION_TABLE_H_

#include <optional>
#include <string>
#include <vector>

#include "sparqlbench/rdf/term.h"

namespace sparqlbench::exec {

using Cell = std::optional<rdf::Term>;
using Row = std::vector<Cell>;

// Result of executing a query. Bindings tables have one cell per header
// column in every row; boolean tables (ASK) have neither header nor rows.
struct SolutionTable {
  enum class Kind { kBindings, kBoolean };

  Kind kind = Kind::kBindings;
  std::vector<std::string> header;
  std::vector<Row> rows;
  bool boolean = false;
  // Set iff the producing query had ORDER BY.
  bool ordered = false;

  static SolutionTable bindings(std::vector<std::string> header, std::vector<Row> rows, bool ordered = false);
  static SolutionTable ask(bool value);

  bool is_boolean() const { return kind == Kind::kBoolean; }
  // Throws std::logic_error if an invariant is violated.
  void check() const;

  friend bool operator==(const SolutionTable&, const SolutionTable&) = default;
};

// Total order used for ORDER BY and for normalizing bag comparisons:
// absent < blank < IRI < literal. IRIs compare by code point. Numeric
// literals precede other literals and compare by value; remaining ties and
// all other literals compare by datatype IRI, lexical form and language tag.
// compare_cells(a, b) == 0 iff a and b are the same term.
int compare_cells(const Cell& a, const Cell& b);
int compare_rows(const Row& a, const Row& b);

// Human-readable rendering of a table, one row per line.
std::string to_string(const SolutionTable& table);

}  // namespace sparqlbench::exec

#endif  // SPARQLBENCH_EXEC_SOLUTION_TABLE_H_
