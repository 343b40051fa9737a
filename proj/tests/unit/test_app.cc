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

#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "sparqlbench/app/commands.h"
#include "sparqlbench/util/text.h"

namespace fs = std::filesystem;
using namespace sparqlbench;
using namespace sparqlbench::app;
using nlohmann::json;

namespace {

const fs::path kData = SPARQLBENCH_TEST_DATA_DIR;
const fs::path kGolden = fs::path(SPARQLBENCH_SOURCE_DIR) / "tests" / "golden";

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / name;
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

std::string orga() { return (kData / "orga" / "manifest.json").string(); }

}  // namespace

TEST_CASE("seed subcommand") {
  auto r = cli({"seed", "R01", "R02"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "R01 99975818\nR02 56899599\n");
  CHECK(cli({"seed", "bogus"}).code == kExitConfigError);
}

TEST_CASE("usage errors exit with the configuration code") {
  CHECK(cli({}).code == kExitConfigError);
  CHECK(cli({"frobnicate"}).code == kExitConfigError);
  CHECK(cli({"run", "--epochs", "10,5", "--dataset", orga(), "--translator", "gold"}).code == kExitConfigError);
  CHECK(cli({"run", "--dataset", orga(), "--translator", "wizard"}).code == kExitConfigError);
  CHECK(cli({"run", "--dataset", orga()}).code == kExitConfigError);
  CHECK(cli({"validate"}).code == kExitConfigError);
  CHECK(cli({"--version"}).code == kExitOk);
}

TEST_CASE("schedule and run-id parsing") {
  CHECK(default_epochs().size() == 20);
  CHECK(default_epochs().front() == 5);
  CHECK(default_epochs().back() == 100);
  CHECK(parse_epochs("5,10,20") == std::vector<int>{5, 10, 20});
  CHECK(parse_epochs("10:30:10") == std::vector<int>{10, 20, 30});
  CHECK_THROWS(parse_epochs("x"));
  CHECK_THROWS_AS(parse_epochs("5:10:0"), ConfigError);
  CHECK(parse_run_ids("3") == std::vector<std::string>{"R01", "R02", "R03"});
  CHECK(parse_run_ids("R07,R01") == std::vector<std::string>{"R07", "R01"});
  CHECK_THROWS_AS(parse_run_ids("0"), ConfigError);

  RunConfig c;
  c.dataset = orga();
  c.translators = {translator::parse_translator_spec("gold")};
  c.epochs = {5, 10};
  c.run_ids = {"R01"};
  c.out = "out";
  CHECK_NOTHROW(check_config(c));
  auto broken = [&](auto mutate) {
    RunConfig b = c;
    mutate(b);
    CHECK_THROWS_AS(check_config(b), ConfigError);
  };
  broken([](RunConfig& b) { b.epochs = {0, 5}; });
  broken([](RunConfig& b) { b.epochs = {5, 5}; });
  broken([](RunConfig& b) { b.epochs = {}; });
  broken([](RunConfig& b) { b.run_ids = {"R01", "R01"}; });
  broken([](RunConfig& b) { b.run_ids = {"Q1"}; });
  broken([](RunConfig& b) { b.translators.push_back(b.translators[0]); });
  broken([](RunConfig& b) { b.jobs = 0; });
  broken([](RunConfig& b) { b.dataset.clear(); });
}

TEST_CASE("validate") {
  auto o = cli({"validate", orga()});
  CHECK(o.code == kExitOk);
  CHECK(o.out.find("69 records, 16 test") != std::string::npos);
  CHECK(o.out.find("gold self-test passed") != std::string::npos);

  auto q = cli({"validate", "--dataset", (kData / "qald10" / "manifest.json").string()});
  CHECK(q.code == kExitOk);
  CHECK(q.out.find("394 test") != std::string::npos);
  CHECK(q.out.find("12 unsupported") != std::string::npos);

  auto dir = fresh_dir("sparqlbench_app_validate");
  fs::create_directories(dir);
  auto doc = json::parse(util::read_file(orga()));
  doc["backend"]["graph"] = (kData / "orga" / "graph.ttl").string();
  doc["records"][4]["query"] = "SELECT ?x WHERE { :anne foaf:surname }";
  util::write_file(dir / "manifest.json", doc.dump(2));
  auto bad = cli({"validate", (dir / "manifest.json").string()});
  CHECK(bad.code == kExitDataFailure);
  CHECK(bad.err.find(doc["records"][4]["id"].get<std::string>()) != std::string::npos);

  // Parses, but answers differently than the graph allows: gold self-test failure.
  doc["records"][4]["query"] = "SELECT ?x WHERE { ?x foaf:surname ?y } ORDER BY ?x";
  doc["records"][4]["unsupported"] = false;
  util::write_file(dir / "manifest.json", doc.dump(2));
  CHECK(cli({"validate", (dir / "manifest.json").string()}).code == kExitOk);

  doc["backend"] = {{"type", "remote"}, {"endpoint", "http://127.0.0.1:1/sparql"}, {"retries", 0}};
  util::write_file(dir / "manifest.json", doc.dump(2));
  CHECK(cli({"validate", (dir / "manifest.json").string()}).code == kExitBackendFailure);
  fs::remove_all(dir);
}

TEST_CASE("gold oracle run scores every question") {
  auto out = fresh_dir("sparqlbench_app_gold");
  auto r = cli({"run", "--dataset", orga(), "--translator", "oracle=gold", "--runs", "R01", "--epochs", "5", "--out",
                out.string()});
  REQUIRE(r.code == kExitOk);
  auto summary = json::parse(util::read_file(out / "reports" / "summary.json"));
  CHECK(summary["models"][0]["average"] == 16.0);
  CHECK(util::read_file(out / "reports" / "summary.md").find("| **oracle** | 1 | **16.00** |") != std::string::npos);
  auto shuffle = json::parse(util::read_file(out / "shuffles" / "R01.json"));
  CHECK(shuffle["seed"] == 99975818);
  CHECK(shuffle["order"].size() == 53);
  CHECK(shuffle["order"][1] == "orga-045");
  auto manifest = json::parse(util::read_file(out / "manifest.json"));
  CHECK(manifest["runs"][0]["seed"] == 99975818);
  CHECK(manifest["dataset"]["sha256"].get<std::string>().size() == 64);
  fs::remove_all(out);
}

TEST_CASE("null translator over ten runs") {
  auto out = fresh_dir("sparqlbench_app_null");
  REQUIRE(cli({"run", "--dataset", orga(), "--translator", "null", "--epochs", "5", "--out", out.string()}).code ==
          kExitOk);
  auto summary = json::parse(util::read_file(out / "reports" / "summary.json"));
  CHECK(summary["models"][0]["runs"].size() == 10);
  CHECK(summary["models"][0]["average"] == 0.0);
  CHECK(summary["models"][0]["std_dev"] == 0.0);
  CHECK(summary["models"][0]["std_dev_percent"].is_null());
  auto log = util::split_lines(util::read_file(out / "logs" / "null" / "R05.ndjson"));
  CHECK(json::parse(log[0])["outcome"] == "ParseError");
  fs::remove_all(out);
}

TEST_CASE("runs are deterministic and reports are a function of the logs") {
  auto a = fresh_dir("sparqlbench_app_det_a");
  auto b = fresh_dir("sparqlbench_app_det_b");
  std::vector<std::string> args = {"run",          "--dataset",    orga(),        "--translator", "gold",
                                   "--translator", "null",         "--translator", "retrieval",    "--runs",
                                   "2",            "--epochs",     "5,10"};
  auto with_out = [&](const fs::path& p, const std::string& jobs) {
    auto v = args;
    v.insert(v.end(), {"--out", p.string(), "--jobs", jobs});
    return v;
  };
  REQUIRE(cli(with_out(a, "1")).code == kExitOk);
  REQUIRE(cli(with_out(b, "3")).code == kExitOk);
  auto ta = tree(a), tb = tree(b);
  ta.erase("config.json");
  tb.erase("config.json");
  CHECK(ta == tb);
  CHECK(ta.count("logs/retrieval/R02.ndjson") == 1);

  auto rebuilt = fresh_dir("sparqlbench_app_det_report");
  REQUIRE(cli({"report", (a / "logs").string(), "--out", rebuilt.string()}).code == kExitOk);
  for (const char* f : {"curves.csv", "bestof.csv", "summary.md", "summary.json"}) {
    CAPTURE(f);
    CHECK(util::read_file(rebuilt / f) == util::read_file(a / "reports" / f));
  }
  for (const auto& p : {a, b, rebuilt}) fs::remove_all(p);
}

TEST_CASE("transcript replay matches the pinned report") {
  auto out = fresh_dir("sparqlbench_app_bartl");
  auto transcript = (kData / "orga" / "transcripts" / "BART-L.ndjson").string();
  REQUIRE(cli({"run", "--dataset", orga(), "--translator", "transcript:" + transcript, "--runs", "R01,R02", "--epochs",
               "5,10", "--out", out.string()})
              .code == kExitOk);
  for (const char* f : {"curves.csv", "bestof.csv", "summary.md", "summary.json"}) {
    CAPTURE(f);
    CHECK(util::read_file(out / "reports" / f) == util::read_file(kGolden / "bartl" / f));
  }
  CHECK(util::read_file(out / "logs" / "BART-L" / "R01.ndjson") == util::read_file(kGolden / "bartl" / "R01.ndjson"));
  auto expected = json::parse(util::read_file(kData / "orga" / "transcripts" / "BART-L.expected.json"));
  auto curves = util::read_file(out / "reports" / "curves.csv");
  for (auto& [epoch, count] : expected["correct_by_epoch"].items()) {
    CHECK(curves.find("BART-L,R01," + epoch + "," + std::to_string(count.get<int>()) + "\r\n") != std::string::npos);
  }
  fs::remove_all(out);
}

TEST_CASE("report over six models") {
  auto out = fresh_dir("sparqlbench_app_six");
  std::vector<std::string> args = {"run", "--dataset", orga(), "--runs", "R01", "--epochs", "5", "--out", out.string()};
  for (const char* m : {"BART", "BART-L", "mBART-50", "mREBEL-L", "M2M100", "NLLB-200"}) {
    args.push_back("--translator");
    args.push_back(std::string(m) + "=" + (std::string(m) == "BART-L" ? "gold" : "null"));
  }
  REQUIRE(cli(args).code == kExitOk);
  auto md = util::split_lines(util::read_file(out / "reports" / "summary.md"));
  int rows = 0;
  for (const auto& l : md) rows += l.rfind("| ", 0) == 0 && l.find("Model") == std::string::npos;
  CHECK(rows == 6);
  fs::remove_all(out);
}

TEST_CASE("report errors") {
  auto empty = fresh_dir("sparqlbench_app_empty");
  fs::create_directories(empty);
  CHECK(cli({"report", empty.string()}).code != kExitOk);
  CHECK(cli({"report", (empty / "missing").string()}).code != kExitOk);
  fs::remove_all(empty);
}

TEST_CASE("backend failures exit with code 3") {
  auto out = fresh_dir("sparqlbench_app_backend");
  auto r = cli({"run", "--dataset", orga(), "--translator", "gold", "--backend", "http://127.0.0.1:1/sparql", "--runs",
                "R01", "--epochs", "5", "--out", out.string()});
  CHECK(r.code == kExitBackendFailure);
  fs::remove_all(out);
}

TEST_CASE("configuration files") {
  auto dir = fresh_dir("sparqlbench_app_config");
  fs::create_directories(dir);
  json cfg = {{"dataset", fs::relative(kData / "orga" / "manifest.json", dir).string()},
              {"translators", json::array({"gold", {{"name", "fake"}, {"type", "subprocess"},
                                                    {"command", json::array({SPARQLBENCH_FAKE_TRANSLATOR, "echo"})},
                                                    {"timeout_ms", 5000}}})},
              {"epochs", json::array({5})},
              {"runs", json::array({"R03"})},
              {"out", "out"}};
  util::write_file(dir / "run.json", cfg.dump(2));
  auto loaded = load_run_config(dir / "run.json");
  CHECK(loaded.dataset == (dir / fs::relative(kData / "orga" / "manifest.json", dir)));
  CHECK(loaded.out == dir / "out");
  REQUIRE(loaded.translators.size() == 2);
  CHECK(loaded.translators[1].subprocess.argv.at(1) == "echo");

  auto r = cli({"run", "--config", (dir / "run.json").string()});
  REQUIRE(r.code == kExitOk);
  auto summary = json::parse(util::read_file(dir / "out" / "reports" / "summary.json"));
  CHECK(summary["models"].size() == 2);
  // The frozen copy can drive the same run again.
  auto frozen = load_run_config(dir / "out" / "config.json");
  CHECK(frozen.run_ids == std::vector<std::string>{"R03"});
  CHECK(fs::exists(frozen.dataset));

  util::write_file(dir / "bad.json", R"({"dataset": "x.json", "epochs": [10, 5], "translators": ["gold"]})");
  CHECK(cli({"run", "--config", (dir / "bad.json").string()}).code == kExitConfigError);
  fs::remove_all(dir);
}

TEST_CASE("QALD import") {
  auto dir = fresh_dir("sparqlbench_app_qald");
  fs::create_directories(dir);
  json qald = {{"questions",
                json::array({{{"id", "2"},
                              {"question", json::array({{{"language", "de"}, {"string", "Wer?"}},
                                                        {{"language", "en"}, {"string", "Who is Kobe Bryant?"}}})},
                              {"query", {{"sparql", "PREFIX wd: <http://www.wikidata.org/entity/> ASK { wd:Q25369 ?p ?o }"}}}},
                             {{"id", 1},
                              {"question", json::array({{{"language", "en"}, {"string", "Union?"}}})},
                              {"query", {{"sparql", "SELECT ?x WHERE { { ?x ?p ?o } UNION { ?o ?p ?x } }"}}}},
                             {{"id", "3"}, {"question", json::array({{{"language", "fr"}, {"string", "Qui?"}}})},
                              {"query", {{"sparql", "ASK {}"}}}}})}};
  util::write_file(dir / "qald.json", qald.dump());
  auto r = cli({"import-qald", (dir / "qald.json").string(), "--out", (dir / "manifest.json").string()});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out == "imported 2 questions (1 unsupported, 1 skipped without en text)\n");
  auto m = json::parse(util::read_file(dir / "manifest.json"));
  CHECK(m["query_mode"] == "self-contained");
  CHECK(m["backend"]["endpoint"] == "https://query.wikidata.org/sparql");
  CHECK(m["records"][0]["id"] == "1");
  CHECK(m["records"][0]["unsupported"] == true);
  CHECK(m["records"][1]["question"] == "Who is Kobe Bryant?");
  CHECK(cli({"import-qald", (dir / "missing.json").string(), "--out", (dir / "m.json").string()}).code ==
        kExitDataFailure);
  fs::remove_all(dir);
}

TEST_CASE("datagen from a replay transcript") {
  auto dir = fresh_dir("sparqlbench_app_datagen");
  fs::create_directories(dir);
  auto reply = [](const std::string& content) {
    return json{{"request", json::object()},
                {"response", {{"choices", json::array({{{"message", {{"role", "assistant"}, {"content", content}}}}})}}}}
        .dump();
  };
  json tuples = json::array(
      {{{"question", "What is the surname of Bob Tanner?"},
        {"query", "SELECT ?s WHERE { :bob foaf:surname ?s }"},
        {"expected", json::array({"Tanner"})}},
       {{"question", "What is the first name of Anne Miller?"},
        {"query", "SELECT ?s WHERE { :anne foaf:firstName ?s }"},
        {"expected", json::array({"Anne"})}}});
  util::write_file(dir / "replay.ndjson", reply(tuples.dump()) + "\n" + reply("Which surname does Bob Tanner have?") +
                                              "\n" + reply("What is Anne Miller's given name?") + "\n");
  std::vector<std::string> args = {"datagen",  "--graph",      (kData / "orga" / "graph.ttl").string(),
                                   "--name",   "mini",         "--prompts",
                                   (fs::path(SPARQLBENCH_SOURCE_DIR) / "prompts").string(),
                                   "--replay", (dir / "replay.ndjson").string(),
                                   "--candidates", "2",        "--test-fraction", "0.5"};
  auto first = args, second = args;
  first.insert(first.end(), {"--out", (dir / "a.json").string()});
  second.insert(second.end(), {"--out", (dir / "b.json").string()});
  auto r = cli(first);
  CAPTURE(r.err);
  REQUIRE(r.code == kExitOk);
  REQUIRE(cli(second).code == kExitOk);
  CHECK(util::read_file(dir / "a.json") == util::read_file(dir / "b.json"));
  // The output is a valid dataset whose gold queries pass the self-test.
  CHECK(cli({"validate", (dir / "a.json").string()}).code == kExitOk);
  auto m = json::parse(util::read_file(dir / "a.json"));
  CHECK(m["counts"]["test"] == 1);
  CHECK(m["records"][0]["paraphrase"] == "Which surname does Bob Tanner have?");
  fs::remove_all(dir);
}
