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

#ifndef SPARQLBENCH_EXEC_LOCAL_ENGINE_H_
#define SPARQLBENCH_EXEC_LOCAL_ENGINE_H_

#include <stdexcept>

#include "sparqlbench/exec/solution_table.h"
#include "sparqlbench/rdf/graph.h"
#include "sparqlbench/sparql/ast.h"

namespace sparqlbench::exec {

// Internal inconsistency while evaluating a query that passed the parser.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Evaluates a parsed query against an in-memory graph. Basic graph patterns
// are solved by backtracking over Graph::match, executing the pattern with
// the most bound components first. Solutions are sorted canonically before
// solution modifiers, so the result is independent of join order.
SolutionTable evaluate_local(const sparql::QueryAst& ast, const rdf::Graph& graph);

}  // namespace sparqlbench::exec

#endif  // SPARQLBENCH_EXEC_LOCAL_ENGINE_H_
