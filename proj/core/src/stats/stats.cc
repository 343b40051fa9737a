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

#include "sparqlbench/stats/stats.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "sparqlbench/util/text.h"

namespace sparqlbench::stats {

using nlohmann::ordered_json;

BestOfRun best_of_run(const eval::RunRecord& run) {
  if (run.checkpoints.empty()) throw std::invalid_argument("run " + run.run_id + " has no checkpoints");
  BestOfRun b{run.checkpoints.front().correct_count, run.checkpoints.front().epoch};
  for (const auto& cp : run.checkpoints) {
    if (cp.correct_count > b.best || (cp.correct_count == b.best && cp.epoch < b.epoch)) {
      b = {cp.correct_count, cp.epoch};
    }
  }
  return b;
}

std::optional<double> std_dev_percent(double average, double std_dev) {
  if (average == 0) return std::nullopt;
  return 100.0 * std_dev / average;
}

Aggregate aggregate(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("aggregate needs at least one value");
  std::vector<double> v(values);
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  Aggregate a;
  a.average = mean;
  a.std_dev = std::sqrt(ss / n);
  a.std_dev_percent = std_dev_percent(a.average, a.std_dev);
  return a;
}

Aggregate aggregate(const std::vector<int>& best_counts) {
  return aggregate(std::vector<double>(best_counts.begin(), best_counts.end()));
}

std::vector<ModelSummary> summarize(const std::vector<ModelRuns>& models) {
  std::vector<ModelSummary> out;
  for (const auto& m : models) {
    if (m.runs.empty()) throw std::invalid_argument("model " + m.model + " has no runs");
    ModelSummary s;
    s.model = m.model;
    std::vector<int> bests;
    std::map<int, std::vector<double>> by_epoch;
    for (const auto& run : m.runs) {
      s.run_ids.push_back(run.run_id);
      s.best.push_back(best_of_run(run));
      bests.push_back(s.best.back().best);
      for (const auto& cp : run.checkpoints) by_epoch[cp.epoch].push_back(cp.correct_count);
    }
    s.stats = aggregate(bests);
    for (const auto& [epoch, counts] : by_epoch) s.per_epoch_average[epoch] = aggregate(counts).average;
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  return "\"" + util::replace_all(s, "\"", "\"\"") + "\"";
}

std::string fixed2(double v) { return util::format_fixed(v, 2); }

}  // namespace

ReportFiles render_reports(const std::vector<ModelRuns>& models, const std::string& dataset) {
  if (models.empty()) throw std::invalid_argument("no runs to report");
  auto summaries = summarize(models);
  ReportFiles f;

  f.curves_csv = "model,run,epoch,correct_count\r\n";
  for (const auto& m : models) {
    for (const auto& run : m.runs) {
      for (const auto& cp : run.checkpoints) {
        f.curves_csv += csv_field(m.model) + "," + csv_field(run.run_id) + "," + std::to_string(cp.epoch) + "," +
                        std::to_string(cp.correct_count) + "\r\n";
      }
    }
  }

  f.bestof_csv = "model,run,best\r\n";
  for (const auto& s : summaries) {
    for (std::size_t i = 0; i < s.best.size(); ++i) {
      f.bestof_csv += csv_field(s.model) + "," + csv_field(s.run_ids[i]) + "," + std::to_string(s.best[i].best) + "\r\n";
    }
  }

  double top = summaries.front().stats.average;
  for (const auto& s : summaries) top = std::max(top, s.stats.average);
  auto cell = [](bool bold, const std::string& text) { return bold ? "**" + text + "**" : text; };

  std::size_t questions = 0;
  if (!models.front().runs.empty() && !models.front().runs.front().checkpoints.empty()) {
    questions = models.front().runs.front().checkpoints.front().outcomes.size();
  }
  f.summary_md = "# " + dataset + "\n\n";
  f.summary_md += "Best-of-run correct answers out of " + std::to_string(questions) +
                  " questions; population standard deviation.\n\n";
  f.summary_md += "| Model | Runs | Average | Std. dev. | Std. dev. % |\n";
  f.summary_md += "|---|---:|---:|---:|---:|\n";
  for (const auto& s : summaries) {
    bool bold = fixed2(s.stats.average) == fixed2(top);
    std::string pct = s.stats.std_dev_percent ? fixed2(*s.stats.std_dev_percent) : "n/a";
    f.summary_md += "| " + cell(bold, s.model) + " | " + std::to_string(s.best.size()) + " | " +
                    cell(bold, fixed2(s.stats.average)) + " | " + cell(bold, fixed2(s.stats.std_dev)) + " | " +
                    cell(bold, pct) + " |\n";
  }

  ordered_json j;
  j["dataset"] = dataset;
  j["questions"] = questions;
  j["aggregation"] = "best-of-run";
  j["std_dev"] = "population";
  j["models"] = ordered_json::array();
  std::vector<std::string> best_models;
  for (const auto& s : summaries) {
    ordered_json m;
    m["model"] = s.model;
    m["runs"] = ordered_json::array();
    for (std::size_t i = 0; i < s.best.size(); ++i) {
      m["runs"].push_back({{"run", s.run_ids[i]}, {"best", s.best[i].best}, {"best_epoch", s.best[i].epoch}});
    }
    m["average"] = s.stats.average;
    m["std_dev"] = s.stats.std_dev;
    m["std_dev_percent"] = s.stats.std_dev_percent ? ordered_json(*s.stats.std_dev_percent) : ordered_json(nullptr);
    m["per_epoch_average"] = ordered_json::object();
    for (const auto& [epoch, avg] : s.per_epoch_average) m["per_epoch_average"][std::to_string(epoch)] = avg;
    j["models"].push_back(std::move(m));
    if (fixed2(s.stats.average) == fixed2(top)) best_models.push_back(s.model);
  }
  j["best_models"] = best_models;
  f.summary_json = j.dump(2) + "\n";
  return f;
}

void emit_reports(const std::vector<ModelRuns>& models, const std::string& dataset,
                  const std::filesystem::path& out_dir) {
  ReportFiles f = render_reports(models, dataset);
  std::filesystem::create_directories(out_dir);
  util::write_file(out_dir / "curves.csv", f.curves_csv);
  util::write_file(out_dir / "bestof.csv", f.bestof_csv);
  util::write_file(out_dir / "summary.md", f.summary_md);
  util::write_file(out_dir / "summary.json", f.summary_json);
}

}  // namespace sparqlbench::stats
