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

#include <benchmark/benchmark.h>

#include <filesystem>
#include <string>

#include "sparqlbench/dataset/dataset.h"
#include "sparqlbench/eval/evaluator.h"
#include "sparqlbench/exec/local_engine.h"
#include "sparqlbench/rdf/turtle.h"
#include "sparqlbench/sparql/parser.h"
#include "sparqlbench/util/text.h"

namespace fs = std::filesystem;
using namespace sparqlbench;

namespace {

const fs::path kData = SPARQLBENCH_BENCH_DATA_DIR;

const char* kQuery =
    "PREFIX foaf: <http://xmlns.com/foaf/0.1/> "
    "SELECT DISTINCT ?person ?name WHERE { ?person foaf:surname ?name . "
    "OPTIONAL { ?person foaf:firstName ?first } FILTER(?name != \"Tanner\") } ORDER BY ?name LIMIT 10";

void BM_ParseQuery(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sparql::parse_query(kQuery));
}
BENCHMARK(BM_ParseQuery);

void BM_ParseTurtle(benchmark::State& state) {
  std::string text = util::read_file(kData / "coypu" / "graph.ttl");
  for (auto _ : state) benchmark::DoNotOptimize(rdf::parse_turtle(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseTurtle);

void BM_GoldQueries(benchmark::State& state) {
  auto ds = dataset::load_dataset(kData / "coypu" / "manifest.json");
  auto backend = dataset::make_backend(ds);
  std::vector<sparql::QueryAst> queries;
  for (const auto& r : ds.records) queries.push_back(sparql::parse_query(eval::assemble_query(r.gold_query, ds)));
  for (auto _ : state) {
    for (const auto& q : queries) benchmark::DoNotOptimize(exec::evaluate_local(q, backend.graph()));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * queries.size()));
}
BENCHMARK(BM_GoldQueries);

void BM_ShuffleIndices(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(dataset::shuffle_indices(static_cast<std::size_t>(state.range(0)), 99975818));
}
BENCHMARK(BM_ShuffleIndices)->Arg(128)->Arg(4096);

}  // namespace
BENCHMARK_MAIN();
