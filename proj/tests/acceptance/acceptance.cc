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

// Acceptance suite. Prints one PASS/FAIL line per primary criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "published_stats.h"
#include "random_instances.h"
#include "sparqlbench/app/commands.h"
#include "sparqlbench/dataset/dataset.h"
#include "sparqlbench/eval/evaluator.h"
#include "sparqlbench/exec/local_engine.h"
#include "sparqlbench/sparql/parser.h"
#include "sparqlbench/stats/stats.h"
#include "sparqlbench/translator/translator.h"
#include "sparqlbench/util/text.h"

namespace fs = std::filesystem;
using namespace sparqlbench;
using nlohmann::json;

namespace {

const fs::path kData = SPARQLBENCH_TEST_DATA_DIR;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<Verdict()> body;
};

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("sparqlbench_acceptance_" + name);
  fs::remove_all(dir);
  return dir;
}

std::map<std::string, std::string> tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), root).generic_string()] = util::read_file(e.path());
  }
  return files;
}

int run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = app::run_cli(args, out, err);
  if (code != app::kExitOk) std::cerr << err.str();
  return code;
}

Verdict seeds() {
  Verdict v;
  auto r01 = dataset::derive_seed("R01");
  auto r02 = dataset::derive_seed("R02");
  v.require(r01 == 99975818u, "R01 -> " + std::to_string(r01));
  v.require(r02 == 56899599u, "R02 -> " + std::to_string(r02));
  if (v.pass) v.detail = "R01=99975818 R02=56899599";
  return v;
}

Verdict percents() {
  Verdict v;
  auto rows = testing::load_published_stats();
  v.require(rows.size() == 12, "expected 12 published rows, found " + std::to_string(rows.size()));
  double worst = 0;
  for (const auto& r : rows) {
    auto p = stats::std_dev_percent(std::stod(r.average), std::stod(r.std_dev));
    v.require(p.has_value(), r.dataset + "/" + r.model + ": no percent");
    if (!p) continue;
    double diff = std::fabs(*p - std::stod(r.percent));
    worst = std::max(worst, diff);
    v.require(diff <= 0.06, r.dataset + "/" + r.model + ": " + util::format_fixed(*p, 4) + " vs " + r.percent);
  }
  if (v.pass) v.detail = "12 rows, max deviation " + util::format_fixed(worst, 4);
  return v;
}

Verdict taxonomy() {
  Verdict v;
  auto ds = dataset::load_dataset(kData / "qald10" / "manifest.json");
  eval::Evaluator ev(ds, dataset::make_backend(ds));
  translator::TranscriptTranslator t("M2M100", kData / "qald10" / "transcripts" / "M2M100.ndjson");
  auto cp = eval::evaluate_checkpoint(t, ev, "R01", std::nullopt);
  auto tally = cp.tally();
  using O = eval::Outcome;
  int total = static_cast<int>(cp.outcomes.size());
  int rejected = tally[O::kParseError] + tally[O::kUnsupportedFeature];
  int executed = total - rejected - tally[O::kTranslatorError];
  v.require(total == 394, "total " + std::to_string(total));
  v.require(rejected == 290, "parse/unsupported " + std::to_string(rejected));
  v.require(executed == 104, "executed " + std::to_string(executed));
  v.require(tally[O::kEmptyMismatch] == 51, "EmptyMismatch " + std::to_string(tally[O::kEmptyMismatch]));
  v.require(tally[O::kCountZeroOnEmpty] == 50, "CountZeroOnEmpty " + std::to_string(tally[O::kCountZeroOnEmpty]));
  v.require(tally[O::kWrongBindings] == 3, "WrongBindings " + std::to_string(tally[O::kWrongBindings]));
  v.require(tally[O::kCorrect] == 0, "Correct " + std::to_string(tally[O::kCorrect]));
  if (v.pass) v.detail = "394 = 290 rejected + 104 executed (51/50/3), 0 correct";
  return v;
}

Verdict gold_self_test() {
  Verdict v;
  for (auto [name, expected] : {std::pair<std::string, double>{"orga", 16}, {"coypu", 26}}) {
    auto manifest = (kData / name / "manifest.json").string();
    auto ds = dataset::load_dataset(manifest);
    eval::Evaluator ev(ds, dataset::make_backend(ds));
    for (const auto& rec : ds.records) {
      auto o = ev.classify(rec, rec.gold_query);
      v.require(o.outcome == eval::Outcome::kCorrect,
                rec.id + ": " + std::string(eval::to_string(o.outcome)) + " " + o.detail);
    }
    auto out = scratch("gold_" + name);
    int code = run_cli({"run", "--dataset", manifest, "--translator", "gold", "--runs", "R01", "--epochs", "5",
                        "--out", out.string()});
    v.require(code == app::kExitOk, name + ": run exited " + std::to_string(code));
    if (code != app::kExitOk) continue;
    auto summary = json::parse(util::read_file(out / "reports" / "summary.json"));
    double avg = summary["models"][0]["average"].get<double>();
    v.require(avg == expected, name + ": gold scored " + util::format_fixed(avg, 2));
    fs::remove_all(out);
  }
  if (v.pass) v.detail = "all records Correct; gold runs 16/16 and 26/26";
  return v;
}

std::size_t count_patterns(const sparql::GroupPattern& group) {
  std::size_t n = 0;
  for (const auto& el : group.elements) {
    if (std::holds_alternative<sparql::TriplePattern>(el.node)) ++n;
    if (const auto* opt = std::get_if<sparql::OptionalPattern>(&el.node)) n += count_patterns(opt->group);
  }
  return n;
}

Verdict oracle_equivalence() {
  Verdict v;
  testing::Rng rng(20260101);
  const int instances = 1500;
  int nonempty = 0;
  for (int i = 0; i < instances && v.pass; ++i) {
    auto graph = testing::random_graph(rng, 30);
    auto query = testing::random_query(rng);
    while (count_patterns(query.where) > 3) query = testing::random_query(rng);
    v.require(graph.size() <= 30, "graph outside the size bound");
    auto expected = testing::oracle_evaluate(query, graph);
    auto actual = testing::render_sorted(exec::evaluate_local(query, graph));
    nonempty += !expected.empty();
    v.require(actual == expected, "instance " + std::to_string(i) + ": " + sparql::serialize_query(query));
  }
  if (v.pass) v.detail = std::to_string(instances) + " instances (" + std::to_string(nonempty) + " non-empty)";
  return v;
}

Verdict determinism() {
  Verdict v;
  auto a = scratch("det_a");
  auto b = scratch("det_b");
  for (const auto& [dir, jobs] : {std::pair{a, "1"}, std::pair{b, "4"}}) {
    int code = run_cli({"run", "--dataset", (kData / "orga" / "manifest.json").string(), "--translator", "gold",
                        "--translator", "null", "--translator", "retrieval", "--runs", "3", "--epochs", "5,10,15",
                        "--jobs", jobs, "--out", dir.string()});
    v.require(code == app::kExitOk, "run exited " + std::to_string(code));
  }
  if (!v.pass) return v;
  auto ta = tree(a), tb = tree(b);
  ta.erase("config.json");
  tb.erase("config.json");
  v.require(ta.size() > 10, "too few output files");
  for (const auto& [path, content] : ta) {
    v.require(tb.count(path) && tb[path] == content, "differs: " + path);
  }
  v.require(ta.size() == tb.size(), "file sets differ");
  fs::remove_all(a);
  fs::remove_all(b);

  struct Golden {
    std::size_t n;
    std::uint64_t seed;
    std::vector<std::size_t> order;
  };
  const Golden goldens[] = {{5, 99975818, {0, 1, 2, 3, 4}},
                            {5, 56899599, {0, 4, 2, 1, 3}},
                            {10, 0, {6, 3, 2, 9, 8, 1, 4, 7, 0, 5}},
                            {8, 44978336, {2, 4, 0, 6, 5, 1, 7, 3}}};
  for (const auto& g : goldens) {
    v.require(dataset::shuffle_indices(g.n, g.seed) == g.order, "shuffle golden n=" + std::to_string(g.n));
  }
  auto orga = dataset::load_dataset(kData / "orga" / "manifest.json");
  auto coypu = dataset::load_dataset(kData / "coypu" / "manifest.json");
  auto head = [](const std::vector<dataset::Record>& recs) {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < 5 && i < recs.size(); ++i) ids.push_back(recs[i].id);
    return ids;
  };
  v.require(head(dataset::shuffle_train(orga, 99975818)) ==
                std::vector<std::string>{"orga-001", "orga-045", "orga-031", "orga-037", "orga-043"},
            "orga R01 training order");
  v.require(head(dataset::shuffle_train(coypu, 99975818)) ==
                std::vector<std::string>{"coypu-069", "coypu-127", "coypu-002", "coypu-040", "coypu-064"},
            "coypu R01 training order");
  if (v.pass) v.detail = std::to_string(ta.size()) + " output files identical; shuffle goldens stable";
  return v;
}

Verdict comparison_properties() {
  Verdict v;
  testing::Rng rng(4242);
  const int pairs = 2000;
  for (int i = 0; i < pairs && v.pass; ++i) {
    auto a = testing::random_table(rng, 1 + rng() % 3, 10);
    auto b = a;
    std::shuffle(b.rows.begin(), b.rows.end(), rng);
    v.require(eval::compare_solutions(a, b).equal, "permutation rejected at pair " + std::to_string(i));
    auto c = b;
    for (auto& h : c.header) h = "renamed_" + h;
    v.require(eval::compare_solutions(a, c).equal, "renaming rejected at pair " + std::to_string(i));
    v.require(eval::compare_solutions(a, c, true).equal, "set comparison rejected at pair " + std::to_string(i));
  }
  auto ordered = exec::SolutionTable::bindings(
      {"s"}, {{rdf::Term::literal("A")}, {rdf::Term::literal("B")}, {rdf::Term::literal("C")}});
  ordered.ordered = true;
  auto permuted = ordered;
  permuted.ordered = false;
  std::swap(permuted.rows[0], permuted.rows[2]);
  v.require(!eval::compare_solutions(ordered, permuted).equal, "ordered gold accepted a permutation");
  auto unordered = ordered;
  unordered.ordered = false;
  v.require(eval::compare_solutions(unordered, permuted).equal, "unordered gold rejected a permutation");
  if (v.pass) v.detail = std::to_string(pairs) + " pairs; ORDER BY gold rejects permutations";
  return v;
}

Verdict parser_fuzz() {
  Verdict v;
  std::mt19937_64 rng(777);
  const std::string tokens[] = {"SELECT", "ASK",   "WHERE", "{",      "}",     "?x",   "?y",     "<http://e/a>",
                                "ex:",    "a",     ".",     ";",      ",",     "(",    ")",      "FILTER",
                                "OPTIONAL", "UNION", "COUNT", "DISTINCT", "*", "\"s\"", "@en",   "^^",
                                "PREFIX", "ex:<http://e/>", "ORDER BY", "LIMIT", "1",   "=",     "!=",    "CONSTRUCT",
                                "GROUP BY", "AS",  "_:b",   "#c\n",   "'",    "\\",    "1.5e3", "true"};
  const std::string seeds_for_mutation[] = {
      "SELECT ?x WHERE { ?x <http://e/p> ?y . }",
      "PREFIX ex: <http://e/> SELECT DISTINCT ?x ?y WHERE { ?x ex:p ?y OPTIONAL { ?y ex:q ?z } } ORDER BY ?x",
      "SELECT (COUNT(*) AS ?n) WHERE { ?s ?p \"v\"@en FILTER(?s != <http://e/a>) }",
      "ASK { <http://e/a> <http://e/p> 42 }",
  };
  const int total = 100000;
  std::map<std::string, int> verdicts;
  for (int i = 0; i < total && v.pass; ++i) {
    std::string text;
    std::size_t len = rng() % 64;
    if (i % 3 == 0) {
      for (std::size_t k = 0; k < len; ++k) text.push_back(static_cast<char>(rng() & 0xFF));
    } else if (i % 3 == 1) {
      text = seeds_for_mutation[rng() % std::size(seeds_for_mutation)];
      for (std::size_t k = 0; k < 1 + rng() % 3; ++k) text[rng() % text.size()] = static_cast<char>(rng() & 0xFF);
    } else {
      for (std::size_t k = 0; k < len / 3; ++k) {
        text += tokens[rng() % std::size(tokens)];
        text.push_back(' ');
      }
    }
    try {
      (void)sparql::parse_query(text);
      ++verdicts["AST"];
    } catch (const sparql::UnsupportedFeature&) {
      ++verdicts["UnsupportedFeature"];
    } catch (const sparql::UnknownPrefix&) {
      ++verdicts["UnknownPrefix"];
    } catch (const sparql::SyntaxError&) {
      ++verdicts["ParseError"];
    } catch (const std::exception& e) {
      v.require(false, std::string("unexpected exception: ") + e.what());
    }
  }
  if (v.pass) {
    std::ostringstream d;
    d << total << " inputs:";
    for (const auto& [k, n] : verdicts) d << " " << k << "=" << n;
    v.detail = d.str();
  }
  return v;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"seed-derivation", 1, seeds},
      {"statistics-reproduction", 1, percents},
      {"error-taxonomy", 10, taxonomy},
      {"gold-self-test", 10, gold_self_test},
      {"executor-oracle-equivalence", 60, oracle_equivalence},
      {"determinism", 60, determinism},
      {"comparison-properties", 10, comparison_properties},
      {"parser-robustness", 120, parser_fuzz},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.body();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("threw: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (v.pass && secs > c.budget_seconds) {
      v.pass = false;
      v.detail = "over time budget of " + util::format_fixed(c.budget_seconds, 0) + " s";
    }
    failures += !v.pass;
    std::cout << (v.pass ? "PASS " : "FAIL ") << c.name << " (" << util::format_fixed(secs, 3) << " s) " << v.detail
              << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
