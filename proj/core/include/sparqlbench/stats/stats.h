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

#ifndef SPARQLBENCH_STATS_STATS_H_
#define SPARQLBENCH_STATS_STATS_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sparqlbench/eval/evaluator.h"

namespace sparqlbench::stats {

struct BestOfRun {
  int best = 0;
  int epoch = 0;  // earliest epoch reaching `best`
};

// Throws std::invalid_argument for a run without checkpoints.
BestOfRun best_of_run(const eval::RunRecord& run);

struct Aggregate {
  double average = 0;
  double std_dev = 0;                     // population (divide by n)
  std::optional<double> std_dev_percent;  // absent when average is 0
};

// Throws std::invalid_argument for an empty list.
Aggregate aggregate(const std::vector<double>& values);
Aggregate aggregate(const std::vector<int>& best_counts);
std::optional<double> std_dev_percent(double average, double std_dev);

struct ModelRuns {
  std::string model;
  std::vector<eval::RunRecord> runs;
};

struct ModelSummary {
  std::string model;
  std::vector<std::string> run_ids;
  std::vector<BestOfRun> best;
  Aggregate stats;
  std::map<int, double> per_epoch_average;
};

std::vector<ModelSummary> summarize(const std::vector<ModelRuns>& models);

struct ReportFiles {
  std::string curves_csv;
  std::string bestof_csv;
  std::string summary_md;
  std::string summary_json;
};

// Pure rendering; emit_reports writes the same bytes.
ReportFiles render_reports(const std::vector<ModelRuns>& models, const std::string& dataset);

// Writes curves.csv, bestof.csv, summary.md and summary.json into out_dir.
// Throws std::invalid_argument when there is nothing to report.
void emit_reports(const std::vector<ModelRuns>& models, const std::string& dataset,
                  const std::filesystem::path& out_dir);

}  // namespace sparqlbench::stats

#endif  // SPARQLBENCH_STATS_STATS_H_
