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

#ifndef SPARQLBENCH_TESTS_HELPERS_RANDOM_INSTANCES_H_
#define SPARQLBENCH_TESTS_HELPERS_RANDOM_INSTANCES_H_

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sparqlbench/exec/solution_table.h"
#include "sparqlbench/rdf/graph.h"
#include "sparqlbench/sparql/ast.h"

namespace sparqlbench::testing {

using Rng = std::mt19937_64;

// Vocabulary the random graphs and queries draw from.
std::vector<rdf::Term> subject_pool();
std::vector<rdf::Term> predicate_pool();
std::vector<rdf::Term> object_pool();

rdf::Graph random_graph(Rng& rng, std::size_t max_triples);

// SELECT queries over at most three required patterns, with optional
// OPTIONAL, FILTER, DISTINCT and COUNT(*). Always valid under strict projection.
sparql::QueryAst random_query(Rng& rng);

// Rows rendered as N-Triples strings ("" for an absent cell).
using RenderedRows = std::vector<std::vector<std::string>>;

// Brute force: enumerate every assignment of the query variables over the
// graph's terms and keep the ones satisfying all patterns. Rows are sorted.
RenderedRows oracle_evaluate(const sparql::QueryAst& query, const rdf::Graph& graph);

RenderedRows render_sorted(const exec::SolutionTable& table);

// Random bindings table with `columns` columns.
exec::SolutionTable random_table(Rng& rng, std::size_t columns, std::size_t max_rows);

}  // namespace sparqlbench::testing

#endif  // SPARQLBENCH_TESTS_HELPERS_RANDOM_INSTANCES_H_
