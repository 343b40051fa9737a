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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>

#include "doctest.h"
#include "json.hpp"
#include "published_stats.h"
#include "sparqlbench/stats/stats.h"
#include "sparqlbench/util/text.h"

using namespace sparqlbench;
using namespace sparqlbench::stats;
using eval::CheckpointEval;
using eval::RunRecord;

namespace {

RunRecord run_with(const std::string& id, std::vector<std::pair<int, int>> epoch_counts) {
  RunRecord r{id, 0, {}};
  for (auto [epoch, count] : epoch_counts) {
    CheckpointEval cp;
    cp.run_id = id;
    cp.epoch = epoch;
    cp.correct_count = count;
    r.checkpoints.push_back(cp);
  }
  return r;
}

std::vector<ModelRuns> published_models(const std::string& dataset) {
  std::vector<ModelRuns> models;
  for (const auto& row : testing::load_published_stats()) {
    if (row.dataset != dataset) continue;
    ModelRuns m{row.model, {}};
    for (std::size_t i = 0; i < row.best_counts.size(); ++i) {
      char id[8];
      std::snprintf(id, sizeof id, "R%02zu", i + 1);
      // The best checkpoint sits in the middle of a short curve.
      m.runs.push_back(run_with(id, {{5, row.best_counts[i] - 1}, {10, row.best_counts[i]}, {15, 0}}));
    }
    models.push_back(std::move(m));
  }
  return models;
}

}  // namespace

TEST_CASE("best of run") {
  auto b = best_of_run(run_with("R01", {{5, 3}, {10, 7}, {15, 5}}));
  CHECK(b.best == 7);
  CHECK(b.epoch == 10);
  auto tie = best_of_run(run_with("R01", {{5, 4}, {10, 4}, {15, 4}}));
  CHECK(tie.best == 4);
  CHECK(tie.epoch == 5);
  CHECK(best_of_run(run_with("R01", {{20, 9}})).best == 9);
  CHECK_THROWS_AS(best_of_run(run_with("R01", {})), std::invalid_argument);
}

TEST_CASE("percent from the printed average and deviation") {
  CHECK(util::format_fixed(*std_dev_percent(13.30, 0.64), 2) == "4.81");
  CHECK(util::format_fixed(*std_dev_percent(19.30, 0.90), 2) == "4.66");
  CHECK_FALSE(std_dev_percent(0.0, 0.0).has_value());
}

TEST_CASE("aggregate basics") {
  auto same = aggregate(std::vector<int>(10, 7));
  CHECK(same.average == 7.0);
  CHECK(same.std_dev == 0.0);
  CHECK(*same.std_dev_percent == 0.0);
  auto zeros = aggregate(std::vector<int>(10, 0));
  CHECK_FALSE(zeros.std_dev_percent.has_value());
  // Population deviation: {2, 4} has mean 3 and deviation 1.
  CHECK(aggregate(std::vector<int>{2, 4}).std_dev == doctest::Approx(1.0));
  CHECK_THROWS_AS(aggregate(std::vector<int>{}), std::invalid_argument);
}

TEST_CASE("integer best-of-run counts reproduce every published summary row") {
  auto rows = testing::load_published_stats();
  REQUIRE(rows.size() == 12);
  for (const auto& row : rows) {
    CAPTURE(row.dataset);
    CAPTURE(row.model);
    REQUIRE(row.best_counts.size() == 10);
    auto a = aggregate(row.best_counts);
    CHECK(util::format_fixed(a.average, 2) == row.average);
    CHECK(util::format_fixed(a.std_dev, 2) == row.std_dev);
    CHECK(util::format_fixed(*a.std_dev_percent, 2) == row.percent);
  }
}

TEST_CASE("property: aggregate ignores input order") {
  std::mt19937_64 rng(71);
  for (int i = 0; i < 500; ++i) {
    std::vector<int> v(1 + rng() % 12);
    for (auto& x : v) x = static_cast<int>(rng() % 30);
    auto a = aggregate(v);
    std::shuffle(v.begin(), v.end(), rng);
    auto b = aggregate(v);
    CHECK(a.average == b.average);
    CHECK(a.std_dev == b.std_dev);
    CHECK(a.std_dev_percent == b.std_dev_percent);
  }
}

TEST_CASE("curves for one model over the default schedule") {
  std::vector<std::pair<int, int>> points;
  for (int e = 5; e <= 100; e += 5) points.push_back({e, e / 10});
  auto files = render_reports({{"M", {run_with("R01", points)}}}, "orga");
  auto lines = util::split_lines(files.curves_csv);
  CHECK(lines.size() == 21);
  CHECK(files.curves_csv.rfind("model,run,epoch,correct_count\r\nM,R01,5,0\r\n", 0) == 0);
  CHECK(files.curves_csv.ends_with("M,R01,100,10\r\n"));
  CHECK(files.bestof_csv == "model,run,best\r\nM,R01,10\r\n");
}

TEST_CASE("summary tables for the published rows") {
  for (const char* dataset : {"orga", "coypu"}) {
    CAPTURE(dataset);
    auto models = published_models(dataset);
    REQUIRE(models.size() == 6);
    auto files = render_reports(models, dataset);
    const std::string best = std::string(dataset) == "orga" ? "BART-L" : "M2M100";
    for (const auto& row : testing::load_published_stats()) {
      if (row.dataset != dataset) continue;
      auto cell = [&](const std::string& s) { return row.model == best ? "**" + s + "**" : s; };
      std::string expected = "| " + cell(row.model) + " | 10 | " + cell(row.average) + " | " + cell(row.std_dev) +
                             " | " + cell(row.percent) + " |";
      CHECK(files.summary_md.find(expected) != std::string::npos);
    }
    auto j = nlohmann::json::parse(files.summary_json);
    CHECK(j["best_models"] == nlohmann::json::array({best}));
    CHECK(j["aggregation"] == "best-of-run");
    CHECK(j["models"][0]["runs"][0]["best_epoch"] == 10);
  }
}

TEST_CASE("property: summary.json re-rounds to the markdown values") {
  std::mt19937_64 rng(72);
  for (int i = 0; i < 100; ++i) {
    std::vector<ModelRuns> models;
    int n_models = 1 + static_cast<int>(rng() % 4);
    for (int m = 0; m < n_models; ++m) {
      ModelRuns mr{"model" + std::to_string(m), {}};
      for (int r = 0; r < 10; ++r) {
        mr.runs.push_back(run_with("R" + std::to_string(10 + r), {{5, static_cast<int>(rng() % 27)},
                                                                  {10, static_cast<int>(rng() % 27)}}));
      }
      models.push_back(std::move(mr));
    }
    auto files = render_reports(models, "d");
    auto j = nlohmann::json::parse(files.summary_json);
    for (const auto& m : j["models"]) {
      std::string avg = util::format_fixed(m["average"].get<double>(), 2);
      std::string sd = util::format_fixed(m["std_dev"].get<double>(), 2);
      std::string pct = m["std_dev_percent"].is_null() ? "n/a" : util::format_fixed(m["std_dev_percent"].get<double>(), 2);
      std::string model = m["model"];
      bool found = false;
      for (const auto& line : util::split_lines(files.summary_md)) {
        std::string plain = util::replace_all(line, "**", "");
        if (plain == "| " + model + " | 10 | " + avg + " | " + sd + " | " + pct + " |") found = true;
      }
      CHECK(found);
    }
  }
}

TEST_CASE("emitting reports") {
  CHECK_THROWS_AS(render_reports({}, "d"), std::invalid_argument);
  auto dir = std::filesystem::temp_directory_path() / "sparqlbench_stats_emit";
  std::filesystem::remove_all(dir);
  auto models = published_models("orga");
  emit_reports(models, "orga", dir);
  auto files = render_reports(models, "orga");
  CHECK(util::read_file(dir / "curves.csv") == files.curves_csv);
  CHECK(util::read_file(dir / "bestof.csv") == files.bestof_csv);
  CHECK(util::read_file(dir / "summary.md") == files.summary_md);
  CHECK(util::read_file(dir / "summary.json") == files.summary_json);
  std::filesystem::remove_all(dir);
}

TEST_CASE("CSV quoting") {
  auto files = render_reports({{"odd, \"name\"", {run_with("R01", {{5, 1}})}}}, "d");
  CHECK(files.bestof_csv.find("\"odd, \"\"name\"\"\",R01,1") != std::string::npos);
}
