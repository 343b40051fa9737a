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

#include <chrono>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "sparqlbench/dataset/dataset.h"
#include "sparqlbench/eval/evaluator.h"
#include "sparqlbench/translator/translator.h"
#include "test_server.h"

namespace fs = std::filesystem;
using namespace sparqlbench;
using namespace sparqlbench::translator;
using K = TranslatorError::Kind;

namespace {

const fs::path kData = SPARQLBENCH_TEST_DATA_DIR;
const std::string kFake = SPARQLBENCH_FAKE_TRANSLATOR;

std::unique_ptr<SubprocessTranslator> fake(std::vector<std::string> args, int timeout_ms = 5000,
                                           std::map<std::string, std::string> env = {}) {
  SubprocessOptions opts;
  opts.argv = {kFake};
  opts.argv.insert(opts.argv.end(), args.begin(), args.end());
  opts.env = std::move(env);
  opts.timeout = std::chrono::milliseconds(timeout_ms);
  return std::make_unique<SubprocessTranslator>("fake", std::move(opts));
}

K kind_of(Translator& t, const Request& r) {
  try {
    t.translate(r);
  } catch (const TranslatorError& e) {
    return e.kind();
  }
  FAIL("translation unexpectedly succeeded");
  return K::kNoAnswer;
}

const Request kBob{"orga-007", "What is the surname of Bob Tanner?", "orga", 5};

}  // namespace

TEST_CASE("request encoding uses the exact field names and order") {
  CHECK(encode_request({"q1", "Who?", "orga", 10}) == R"({"id":"q1","question":"Who?","dataset":"orga","epoch":10})");
  CHECK(encode_request({"q1", "Who?", "orga", std::nullopt}) == R"({"id":"q1","question":"Who?","dataset":"orga"})");
  CHECK(encode_request({"q\n", "é \"x\"", "d", 0}).find('\n') == std::string::npos);
}

TEST_CASE("response decoding") {
  CHECK(decode_response(R"({"id":"q1","query":"  ASK {}\n"})", "q1") == "ASK {}");
  auto kind = [](const std::string& line) {
    try {
      decode_response(line, "q1");
    } catch (const TranslatorError& e) {
      return e.kind();
    }
    return K::kNoAnswer;
  };
  CHECK(kind(R"({"id":"q1","error":"refused"})") == K::kReported);
  CHECK(kind(R"({"id":"q2","query":"ASK {}"})") == K::kProtocolViolation);
  CHECK(kind(R"({"id":"q1","query":"ASK {}","error":"x"})") == K::kProtocolViolation);
  CHECK(kind(R"({"id":"q1"})") == K::kProtocolViolation);
  CHECK(kind(R"({"id":"q1","query":5})") == K::kProtocolViolation);
  CHECK(kind(R"(["q1"])") == K::kProtocolViolation);
  CHECK(kind("garbage") == K::kProtocolViolation);
  CHECK(to_string(K::kTimeout) == "timeout");
}

TEST_CASE("builtin translators") {
  auto orga = dataset::load_dataset(kData / "orga" / "manifest.json");
  const auto* rec = orga.split(dataset::Split::kTest).front();
  GoldOracle gold("gold", orga);
  CHECK(gold.translate({rec->id, rec->question, "orga", 5}) == rec->gold_query);
  CHECK(gold.translate({rec->id + "#p", "x", "orga", 5}) == rec->gold_query);
  CHECK(kind_of(gold, {"nope", "x", "orga", 5}) == K::kNoAnswer);

  NullTranslator null("null");
  CHECK(null.translate({"x", "What is the surname of Bob Tanner?", "orga", 5}) == "What is the surname of Bob Tanner?");

  std::vector<dataset::Record> train;
  for (const auto* r : orga.split(dataset::Split::kTrain)) train.push_back(*r);
  std::sort(train.begin(), train.end(), [](auto& a, auto& b) { return a.id < b.id; });
  // Exact question match has similarity 1.
  CHECK(retrieval_baseline(train, train[7].question) == train[7].gold_query);
  // No shared tokens: every score is 0 and the smallest id wins.
  CHECK(retrieval_baseline(train, "zzz qqq") == train[0].gold_query);
  // Hand-computed Jaccard: orga-001 scores 4/7, the runners-up 1/3.
  CHECK(retrieval_baseline(train, "surname of Anne Miller") ==
        "SELECT ?surname WHERE { :anne foaf:surname ?surname . }");
  CHECK(retrieval_baseline({train[3]}, "anything") == train[3].gold_query);
  CHECK(tokenize("What's the Surname_of X-1?") == std::vector<std::string>{"what", "s", "the", "surname", "of", "x", "1"});
  CHECK(jaccard(tokenize("a b"), tokenize("b c")) == doctest::Approx(1.0 / 3));
  CHECK(jaccard({}, {}) == 0.0);
}

TEST_CASE("transcript translator routes by epoch") {
  auto t = TranscriptTranslator::from_text("M", R"({"id":"a","epoch":5,"query":"Q5"}
{"id":"a","epoch":10,"query":"Q10"}
{"id":"b","query":"Qany"}
{"id":"c","error":"gave up"}
)");
  CHECK(t->size() == 4);
  CHECK(t->translate({"a", "", "d", 5}) == "Q5");
  CHECK(t->translate({"a", "", "d", 10}) == "Q10");
  CHECK(t->translate({"b", "", "d", 15}) == "Qany");
  CHECK(kind_of(*t, {"a", "", "d", 15}) == K::kNoAnswer);
  CHECK(kind_of(*t, {"c", "", "d", 5}) == K::kReported);
  CHECK_THROWS(TranscriptTranslator::from_text("M", "{\"id\":\"a\",\"query\":\"x\"}\n{\"id\":\"a\",\"query\":\"y\"}\n"));
  CHECK_THROWS(TranscriptTranslator::from_text("M", "not json\n"));
}

TEST_CASE("subprocess protocol conformance") {
  SUBCASE("id echo and verbatim request lines") {
    auto t = fake({"raw"});
    CHECK(t->translate(kBob) == encode_request(kBob));
    Request no_epoch = kBob;
    no_epoch.epoch.reset();
    CHECK(t->translate(no_epoch) == encode_request(no_epoch));
  }
  SUBCASE("many requests, strictly serial") {
    auto t = fake({"echo"});
    for (int i = 0; i < 200; ++i) {
      std::string q = "question " + std::to_string(i);
      CHECK(t->translate({"id" + std::to_string(i), q, "d", i}) == q);
    }
  }
  SUBCASE("epoch routing") {
    auto t = fake({"epoch"});
    CHECK(t->translate({"a", "", "d", 35}) == "epoch 35");
    CHECK(t->translate({"a", "", "d", std::nullopt}) == "epoch none");
  }
  SUBCASE("environment is passed through") {
    auto t = fake({"env", "SPARQLBENCH_TEST_VALUE"}, 5000, {{"SPARQLBENCH_TEST_VALUE", "ASK {}"}});
    CHECK(t->translate(kBob) == "ASK {}");
  }
  SUBCASE("reported errors keep the process alive") {
    auto t = fake({"error"});
    CHECK(kind_of(*t, kBob) == K::kReported);
    CHECK(kind_of(*t, kBob) == K::kReported);
  }
  SUBCASE("garbage output is a protocol violation, and stays one") {
    auto t = fake({"garbage"});
    CHECK(kind_of(*t, kBob) == K::kProtocolViolation);
    CHECK(kind_of(*t, kBob) == K::kProtocolViolation);
  }
  SUBCASE("mismatched id") {
    auto t = fake({"wrong-id"});
    CHECK(kind_of(*t, kBob) == K::kProtocolViolation);
  }
  SUBCASE("query and error together") {
    auto t = fake({"both"});
    CHECK(kind_of(*t, kBob) == K::kProtocolViolation);
  }
  SUBCASE("process exit") {
    auto t = fake({"die"});
    CHECK(kind_of(*t, kBob) == K::kProcessExited);
    auto u = fake({"after", "2"});
    CHECK(u->translate(kBob) == kBob.question);
    CHECK(u->translate(kBob) == kBob.question);
    CHECK(kind_of(*u, kBob) == K::kProcessExited);
    CHECK(kind_of(*u, kBob) == K::kProcessExited);
  }
  SUBCASE("timeout") {
    auto t = fake({"slow", "3000"}, 200);
    auto start = std::chrono::steady_clock::now();
    CHECK(kind_of(*t, kBob) == K::kTimeout);
    CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(3));
  }
  SUBCASE("missing program") {
    SubprocessOptions opts;
    opts.argv = {"/nonexistent/translator-binary"};
    CHECK_THROWS(SubprocessTranslator("x", opts));
  }
}

TEST_CASE("crash containment during a checkpoint") {
  auto orga = dataset::load_dataset(kData / "orga" / "manifest.json");
  eval::Evaluator evaluator(orga, dataset::make_backend(orga));
  auto t = fake({"after", "3"});
  auto cp = eval::evaluate_checkpoint(*t, evaluator, "R01", 5);
  REQUIRE(cp.outcomes.size() == 16);
  auto tally = cp.tally();
  CHECK(tally[eval::Outcome::kParseError] == 3);
  CHECK(tally[eval::Outcome::kTranslatorError] == 13);
  CHECK(cp.correct_count == 0);
  for (const auto& o : cp.outcomes) {
    if (o.result.outcome == eval::Outcome::kTranslatorError) {
      CHECK(o.result.detail.rfind("process-exited: ", 0) == 0);
      CHECK_FALSE(o.generated_query.has_value());
    }
  }
}

TEST_CASE("HTTP transport mirrors the line protocol") {
  testing::TestServer server;
  std::string seen_body, seen_type;
  server.server().Post("/translate", [&](const httplib::Request& req, httplib::Response& res) {
    seen_body = req.body;
    seen_type = req.get_header_value("Content-Type");
    auto j = nlohmann::json::parse(req.body);
    const std::string q = j["question"];
    if (q == "refuse") {
      res.status = 422;
      res.set_content(R"({"id":")" + j["id"].get<std::string>() + R"(","error":"cannot"})", "application/json");
    } else if (q == "crash") {
      res.status = 500;
      res.set_content("oops", "text/plain");
    } else {
      nlohmann::json out = {{"id", j["id"]}, {"query", q}};
      res.set_content(out.dump(), "application/json");
    }
  });
  server.start();
  HttpTranslator t("srv", server.url(""), std::chrono::milliseconds(5000));
  CHECK(t.translate(kBob) == kBob.question);
  CHECK(seen_body == encode_request(kBob));
  CHECK(seen_type.find("application/json") != std::string::npos);
  CHECK(kind_of(t, {"x", "refuse", "d", 5}) == K::kReported);
  CHECK(kind_of(t, {"x", "crash", "d", 5}) == K::kTransport);
  HttpTranslator explicit_route("srv", server.url("/translate/"), std::chrono::milliseconds(5000));
  CHECK(explicit_route.translate(kBob) == kBob.question);
  server.stop();
  CHECK(kind_of(t, kBob) == K::kTransport);
}

TEST_CASE("translator specs") {
  auto g = parse_translator_spec("oracle=gold");
  CHECK(g.name == "oracle");
  CHECK(g.type == TranslatorSpec::Type::kGold);
  CHECK(parse_translator_spec("null").name == "null");
  auto t = parse_translator_spec("transcript:/x/BART-L.ndjson");
  CHECK(t.type == TranslatorSpec::Type::kTranscript);
  CHECK(t.name == "BART-L");
  auto c = parse_translator_spec("M=cmd:python3 serve.py --ckpt out");
  CHECK(c.type == TranslatorSpec::Type::kSubprocess);
  CHECK(c.subprocess.argv == std::vector<std::string>{"python3", "serve.py", "--ckpt", "out"});
  auto h = parse_translator_spec("S=http://127.0.0.1:8080");
  CHECK(h.type == TranslatorSpec::Type::kHttp);
  CHECK(h.url == "http://127.0.0.1:8080");
  CHECK_THROWS(parse_translator_spec("magic"));
  CHECK_THROWS(parse_translator_spec("cmd:"));
}
