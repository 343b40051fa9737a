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

#include "sparqlbench/dataset/dataset.h"

#include <algorithm>
#include <charconv>
#include <set>

#include "json.hpp"
#include "sparqlbench/rdf/turtle.h"
#include "sparqlbench/sparql/parser.h"
#include "sparqlbench/util/digest.h"
#include "sparqlbench/util/http.h"
#include "sparqlbench/util/text.h"

namespace sparqlbench::dataset {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(Split split) { return split == Split::kTrain ? "train" : "test"; }

std::string_view to_string(QueryMode mode) {
  return mode == QueryMode::kAmbientPrefixes ? "ambient-prefixes" : "self-contained";
}

std::vector<const Record*> Dataset::split(Split which) const {
  std::vector<const Record*> out;
  for (const Record& r : records) {
    if (r.split == which) out.push_back(&r);
  }
  return out;
}

std::size_t Dataset::count(Split which) const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [&](const Record& r) { return r.split == which; }));
}

const Record* Dataset::find(std::string_view id) const {
  for (const Record& r : records) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

namespace {

std::string join_problems(const std::vector<std::string>& problems) {
  std::string msg = "invalid dataset manifest";
  for (const auto& p : problems) msg += "\n  " + p;
  return msg;
}

class Collector {
 public:
  void add(std::string p) { problems_.push_back(std::move(p)); }
  void raise_if_any() {
    if (!problems_.empty()) throw DatasetError(std::move(problems_));
  }

 private:
  std::vector<std::string> problems_;
};

std::optional<std::string> string_field(const json& obj, const char* key, const std::string& where,
                                        Collector& errs, bool required = true) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) errs.add(where + ": missing field '" + key + "'");
    return std::nullopt;
  }
  if (!it->is_string()) {
    errs.add(where + ": field '" + key + "' must be a string");
    return std::nullopt;
  }
  return it->get<std::string>();
}

BackendSpec parse_backend(const json& j, const std::filesystem::path& base_dir, Collector& errs) {
  BackendSpec spec;
  if (!j.is_object()) {
    errs.add("backend: must be an object");
    return spec;
  }
  auto type = string_field(j, "type", "backend", errs).value_or("");
  if (type == "local") {
    auto g = j.find("graph");
    std::vector<std::string> paths;
    if (g != j.end() && g->is_string()) {
      paths.push_back(g->get<std::string>());
    } else if (g != j.end() && g->is_array() && std::all_of(g->begin(), g->end(), [](const json& e) { return e.is_string(); })) {
      for (const auto& e : *g) paths.push_back(e.get<std::string>());
    } else {
      errs.add("backend: local backend needs 'graph' as a path or list of paths");
    }
    for (const auto& p : paths) spec.graph_paths.push_back(std::filesystem::absolute(base_dir / p).lexically_normal());
  } else if (type == "remote") {
    spec.kind = BackendSpec::Kind::kRemote;
    spec.endpoint.url = string_field(j, "endpoint", "backend", errs).value_or("");
    if (!spec.endpoint.url.empty() && !util::is_http_url(spec.endpoint.url)) {
      errs.add("backend: endpoint must be an absolute http(s) URL");
    }
    if (auto t = j.find("timeout"); t != j.end()) {
      if (t->is_number_unsigned() && t->get<std::uint64_t>() > 0) {
        spec.endpoint.timeout = std::chrono::seconds(t->get<std::uint64_t>());
      } else {
        errs.add("backend: timeout must be a positive integer (seconds)");
      }
    }
    if (auto r = j.find("retries"); r != j.end()) {
      if (r->is_number_unsigned()) {
        spec.endpoint.retries = r->get<int>();
      } else {
        errs.add("backend: retries must be a non-negative integer");
      }
    }
    if (auto h = j.find("headers"); h != j.end()) {
      if (!h->is_object()) {
        errs.add("backend: headers must be an object");
      } else {
        for (auto it = h->begin(); it != h->end(); ++it) {
          if (it->is_string()) {
            spec.endpoint.headers[it.key()] = it->get<std::string>();
          } else {
            errs.add("backend: header '" + it.key() + "' must be a string");
          }
        }
      }
    }
  } else if (!type.empty()) {
    errs.add("backend: unknown type '" + type + "'");
  }
  return spec;
}

}  // namespace

DatasetError::DatasetError(std::vector<std::string> problems)
    : std::runtime_error(join_problems(problems)), problems_(std::move(problems)) {}

Dataset parse_manifest(std::string_view json_text, const std::filesystem::path& base_dir) {
  json doc = json::parse(json_text.begin(), json_text.end(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw DatasetError({"manifest is not a JSON object"});
  Collector errs;
  Dataset ds;
  ds.name = string_field(doc, "name", "manifest", errs).value_or("");
  if (ds.name.empty() && doc.contains("name")) errs.add("manifest: name must be non-empty");

  auto mode = string_field(doc, "query_mode", "manifest", errs).value_or("");
  if (mode == "ambient-prefixes") {
    ds.query_mode = QueryMode::kAmbientPrefixes;
  } else if (mode == "self-contained") {
    ds.query_mode = QueryMode::kSelfContained;
  } else if (!mode.empty()) {
    errs.add("manifest: query_mode must be 'ambient-prefixes' or 'self-contained'");
  }

  if (auto pre = doc.find("prefix_preamble"); pre != doc.end()) {
    if (!pre->is_object()) {
      errs.add("manifest: prefix_preamble must be an object");
    } else {
      for (auto it = pre->begin(); it != pre->end(); ++it) {
        if (!it->is_string() || !rdf::is_absolute_iri(it->get<std::string>())) {
          errs.add("manifest: prefix '" + it.key() + "' must map to an absolute IRI");
        } else {
          ds.prefix_preamble[it.key()] = it->get<std::string>();
        }
      }
    }
  }
  if (!mode.empty() && (ds.query_mode == QueryMode::kSelfContained) != ds.prefix_preamble.empty()) {
    errs.add("manifest: query_mode must be self-contained exactly when prefix_preamble is empty");
  }

  if (auto b = doc.find("backend"); b != doc.end()) {
    ds.backend = parse_backend(*b, base_dir, errs);
  } else {
    errs.add("manifest: missing field 'backend'");
  }

  if (auto e = doc.find("expand_paraphrases"); e != doc.end()) {
    if (e->is_boolean()) {
      ds.expand_paraphrases = e->get<bool>();
    } else {
      errs.add("manifest: expand_paraphrases must be a boolean");
    }
  }

  std::optional<std::size_t> declared_train, declared_test;
  if (auto c = doc.find("counts"); c == doc.end() || !c->is_object()) {
    errs.add("manifest: missing object 'counts'");
  } else {
    for (auto [key, slot] : {std::pair{"train", &declared_train}, std::pair{"test", &declared_test}}) {
      auto v = c->find(key);
      if (v == c->end() || !v->is_number_unsigned()) {
        errs.add(std::string("counts: '") + key + "' must be a non-negative integer");
      } else {
        *slot = v->get<std::size_t>();
      }
    }
  }

  auto recs = doc.find("records");
  if (recs == doc.end() || !recs->is_array()) {
    errs.add("manifest: missing array 'records'");
    errs.raise_if_any();
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < recs->size(); ++i) {
    const json& r = (*recs)[i];
    std::string where = "records[" + std::to_string(i) + "]";
    if (!r.is_object()) {
      errs.add(where + ": must be an object");
      continue;
    }
    Record rec;
    rec.id = string_field(r, "id", where, errs).value_or("");
    if (!rec.id.empty()) where = "record " + rec.id;
    rec.question = string_field(r, "question", where, errs).value_or("");
    rec.gold_query = string_field(r, "query", where, errs).value_or("");
    rec.paraphrase = string_field(r, "paraphrase", where, errs, false);
    auto split = string_field(r, "split", where, errs).value_or("");
    if (split == "train") {
      rec.split = Split::kTrain;
    } else if (split == "test") {
      rec.split = Split::kTest;
    } else if (!split.empty()) {
      errs.add(where + ": split must be 'train' or 'test'");
    }
    if (auto u = r.find("unsupported"); u != r.end()) {
      if (u->is_boolean()) {
        rec.unsupported = u->get<bool>();
      } else {
        errs.add(where + ": unsupported must be a boolean");
      }
    }
    if (r.contains("id") && rec.id.empty()) errs.add(where + ": id must be non-empty");
    if (r.contains("question") && util::trim(rec.question).empty()) errs.add(where + ": question must be non-empty");
    if (!rec.id.empty() && !seen.insert(rec.id).second) errs.add(where + ": duplicate id");
    ds.records.push_back(std::move(rec));
  }

  if (declared_train && *declared_train != ds.count(Split::kTrain)) {
    errs.add("counts: declared train " + std::to_string(*declared_train) + " but found " +
             std::to_string(ds.count(Split::kTrain)));
  }
  if (declared_test && *declared_test != ds.count(Split::kTest)) {
    errs.add("counts: declared test " + std::to_string(*declared_test) + " but found " +
             std::to_string(ds.count(Split::kTest)));
  }

  for (const Record& rec : ds.records) {
    if (rec.gold_query.empty() || rec.unsupported) continue;
    sparql::ParseOptions opts;
    opts.ambient_prefixes = ds.ambient();
    try {
      sparql::parse_query(rec.gold_query, opts);
    } catch (const sparql::QueryError& e) {
      errs.add("record " + rec.id + ": gold query does not parse: " + e.what());
    }
  }
  errs.raise_if_any();
  ds.content_hash = util::sha256_hex(json_text);
  return ds;
}

Dataset load_dataset(const std::filesystem::path& manifest_path) {
  std::string text;
  try {
    text = util::read_file(manifest_path);
  } catch (const std::exception& e) {
    throw DatasetError({e.what()});
  }
  return parse_manifest(text, std::filesystem::absolute(manifest_path).parent_path());
}

std::string manifest_to_json(const Dataset& ds) {
  ordered_json doc;
  doc["name"] = ds.name;
  doc["query_mode"] = std::string(to_string(ds.query_mode));
  doc["prefix_preamble"] = ordered_json::object();
  for (const auto& [k, v] : ds.prefix_preamble) doc["prefix_preamble"][k] = v;
  ordered_json backend;
  if (ds.backend.kind == BackendSpec::Kind::kLocal) {
    backend["type"] = "local";
    backend["graph"] = ordered_json::array();
    for (const auto& p : ds.backend.graph_paths) backend["graph"].push_back(p.generic_string());
  } else {
    backend["type"] = "remote";
    backend["endpoint"] = ds.backend.endpoint.url;
    backend["timeout"] = ds.backend.endpoint.timeout.count();
    backend["retries"] = ds.backend.endpoint.retries;
    if (!ds.backend.endpoint.headers.empty()) {
      for (const auto& [k, v] : ds.backend.endpoint.headers) backend["headers"][k] = v;
    }
  }
  doc["backend"] = backend;
  doc["expand_paraphrases"] = ds.expand_paraphrases;
  doc["counts"] = {{"train", ds.count(Split::kTrain)}, {"test", ds.count(Split::kTest)}};
  doc["records"] = ordered_json::array();
  for (const Record& r : ds.records) {
    ordered_json j;
    j["id"] = r.id;
    j["split"] = std::string(to_string(r.split));
    j["question"] = r.question;
    if (r.paraphrase) j["paraphrase"] = *r.paraphrase;
    j["query"] = r.gold_query;
    if (r.unsupported) j["unsupported"] = true;
    doc["records"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

exec::Backend make_backend(const Dataset& ds) {
  if (ds.backend.kind == BackendSpec::Kind::kRemote) return exec::Backend::remote(ds.backend.endpoint);
  auto graph = std::make_shared<rdf::Graph>(rdf::load_graphs(ds.backend.graph_paths));
  return exec::Backend::local(std::move(graph));
}

std::vector<EvalItem> evaluation_items(const Dataset& ds) {
  std::vector<EvalItem> items;
  for (const Record* r : ds.split(Split::kTest)) {
    items.push_back({r->id, r->question, r});
    if (ds.expand_paraphrases && r->paraphrase) items.push_back({r->id + "#p", *r->paraphrase, r});
  }
  std::sort(items.begin(), items.end(), [](const EvalItem& a, const EvalItem& b) { return a.id < b.id; });
  return items;
}

bool is_valid_run_id(std::string_view label) {
  return label.size() >= 2 && label[0] == 'R' &&
         std::all_of(label.begin() + 1, label.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::vector<std::string> default_run_ids(int n) {
  std::vector<std::string> ids;
  for (int i = 1; i <= n; ++i) ids.push_back((i < 10 ? "R0" : "R") + std::to_string(i));
  return ids;
}

std::uint32_t derive_seed(std::string_view run_id) {
  if (!is_valid_run_id(run_id)) throw std::invalid_argument("invalid run id: " + std::string(run_id));
  std::string hex = util::sha512_hex(std::string(run_id) + "\n");
  std::string digits;
  for (char c : hex) {
    if (c >= '0' && c <= '9') digits.push_back(c);
    if (digits.size() == 8) break;
  }
  if (digits.size() < 8) throw DigitsExhausted("fewer than eight decimal digits in digest of " + std::string(run_id));
  std::uint32_t seed = 0;
  std::from_chars(digits.data(), digits.data() + digits.size(), seed);
  return seed;
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  // Reject the lowest (2^64 mod bound) values so every residue is equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

std::vector<std::size_t> shuffle_indices(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  SplitMix64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(idx[i - 1], idx[j]);
  }
  return idx;
}

std::vector<Record> shuffle_train(const Dataset& ds, std::uint64_t seed) {
  std::vector<const Record*> train = ds.split(Split::kTrain);
  std::sort(train.begin(), train.end(), [](const Record* a, const Record* b) { return a->id < b->id; });
  std::vector<Record> out;
  out.reserve(train.size());
  for (std::size_t i : shuffle_indices(train.size(), seed)) out.push_back(*train[i]);
  return out;
}

}  // namespace sparqlbench::dataset
