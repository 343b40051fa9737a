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

#ifndef SPARQLBENCH_DATASET_DATASET_H_
#define SPARQLBENCH_DATASET_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sparqlbench/exec/remote.h"
#include "sparqlbench/rdf/term.h"

namespace sparqlbench::dataset {

enum class Split { kTrain, kTest };
enum class QueryMode { kAmbientPrefixes, kSelfContained };

std::string_view to_string(Split split);
std::string_view to_string(QueryMode mode);

struct Record {
  std::string id;
  std::string question;
  std::optional<std::string> paraphrase;
  std::string gold_query;
  Split split = Split::kTest;
  // Gold query uses SPARQL beyond the local engine's subset.
  bool unsupported = false;

  friend bool operator==(const Record&, const Record&) = default;
};

struct BackendSpec {
  enum class Kind { kLocal, kRemote };
  Kind kind = Kind::kLocal;
  // Absolute after loading; as written (relative to the manifest) otherwise.
  std::vector<std::filesystem::path> graph_paths;
  exec::RemoteEndpoint endpoint;
};

struct Dataset {
  std::string name;
  QueryMode query_mode = QueryMode::kSelfContained;
  rdf::PrefixMap prefix_preamble;
  BackendSpec backend;
  bool expand_paraphrases = false;
  std::vector<Record> records;
  // SHA-256 of the manifest bytes; empty for datasets built in memory.
  std::string content_hash;

  std::vector<const Record*> split(Split which) const;
  std::size_t count(Split which) const;
  const Record* find(std::string_view id) const;
  // Prefix map used when parsing gold queries.
  const rdf::PrefixMap* ambient() const {
    return query_mode == QueryMode::kAmbientPrefixes ? &prefix_preamble : nullptr;
  }
};

// Schema or content problems; problems() lists every one found.
class DatasetError : public std::runtime_error {
 public:
  explicit DatasetError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

// Parses a manifest document. Relative graph paths resolve against base_dir.
Dataset parse_manifest(std::string_view json_text, const std::filesystem::path& base_dir);
Dataset load_dataset(const std::filesystem::path& manifest_path);

// Writes the manifest form. Graph paths are emitted as stored.
std::string manifest_to_json(const Dataset& dataset);

// Local graph backends load their Turtle sources here.
exec::Backend make_backend(const Dataset& dataset);

// A question presented to translators. With expand_paraphrases each
// paraphrase is a separate item whose id carries a "#p" suffix.
struct EvalItem {
  std::string id;
  std::string question;
  const Record* record = nullptr;
};
std::vector<EvalItem> evaluation_items(const Dataset& dataset);

// ---- seeding ----

class DigitsExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "R" followed by one or more decimal digits.
bool is_valid_run_id(std::string_view label);
// R01 .. R<n>, zero-padded to at least two digits.
std::vector<std::string> default_run_ids(int n = 10);

// SHA-512 over the label followed by a newline, lowercase hex, decimal digits
// kept in order, first eight parsed base 10.
std::uint32_t derive_seed(std::string_view run_id);

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

// Fisher-Yates permutation of [0, n): result[k] is the source index placed at k.
std::vector<std::size_t> shuffle_indices(std::size_t n, std::uint64_t seed);

// Train split sorted by id, then shuffled.
std::vector<Record> shuffle_train(const Dataset& dataset, std::uint64_t seed);

}  // namespace sparqlbench::dataset

#endif  // SPARQLBENCH_DATASET_DATASET_H_
