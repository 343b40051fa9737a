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

#include "sparqlbench/rdf/graph.h"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace sparqlbench::rdf {

std::size_t TripleHash::operator()(const Triple& t) const noexcept {
  TermHash h;
  std::size_t seed = h(t.subject);
  seed ^= h(t.predicate) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  seed ^= h(t.object) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  return seed;
}

void check_triple(const Triple& t) {
  if (t.subject.is_literal()) throw std::invalid_argument("triple subject must not be a literal");
  if (!t.predicate.is_iri()) throw std::invalid_argument("triple predicate must be an IRI");
}

Graph::Graph(std::vector<Triple> triples) {
  std::sort(triples.begin(), triples.end());
  triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
  storage_.reserve(triples.size());
  for (Triple& t : triples) {
    check_triple(t);
    auto idx = static_cast<std::uint32_t>(storage_.size());
    members_.insert(t);
    // Already sorted, so appending keeps every list in canonical order.
    order_.push_back(idx);
    by_subject_[t.subject].push_back(idx);
    by_predicate_[t.predicate].push_back(idx);
    by_object_[t.object].push_back(idx);
    storage_.push_back(std::move(t));
  }
}

void Graph::insert_sorted(std::vector<std::uint32_t>& list, std::uint32_t idx) {
  auto pos = std::lower_bound(list.begin(), list.end(), idx, [this](std::uint32_t a, std::uint32_t b) {
    return storage_[a] < storage_[b];
  });
  list.insert(pos, idx);
}

bool Graph::insert(Triple t) {
  check_triple(t);
  if (!members_.insert(t).second) return false;
  auto idx = static_cast<std::uint32_t>(storage_.size());
  storage_.push_back(std::move(t));
  const Triple& stored = storage_.back();
  insert_sorted(order_, idx);
  insert_sorted(by_subject_[stored.subject], idx);
  insert_sorted(by_predicate_[stored.predicate], idx);
  insert_sorted(by_object_[stored.object], idx);
  return true;
}

void Graph::insert_all(std::span<const Triple> triples) {
  if (empty()) {
    PrefixMap keep = std::move(prefixes_);
    *this = Graph(std::vector<Triple>(triples.begin(), triples.end()));
    prefixes_ = std::move(keep);
    return;
  }
  for (const Triple& t : triples) insert(t);
}

const std::vector<std::uint32_t>* Graph::candidate_list(const std::optional<Term>& s,
                                                        const std::optional<Term>& p,
                                                        const std::optional<Term>& o) const {
  const std::vector<std::uint32_t>* best = &order_;
  auto narrow = [&best](const Index& index, const std::optional<Term>& key) -> bool {
    if (!key) return true;
    auto it = index.find(*key);
    if (it == index.end()) return false;
    if (it->second.size() < best->size()) best = &it->second;
    return true;
  };
  if (!narrow(by_subject_, s) || !narrow(by_predicate_, p) || !narrow(by_object_, o)) {
    return nullptr;
  }
  return best;
}

std::vector<Triple> Graph::match(const std::optional<Term>& s, const std::optional<Term>& p,
                                 const std::optional<Term>& o) const {
  std::vector<Triple> out;
  for_each_match(s, p, o, [&out](const Triple& t) { out.push_back(t); });
  return out;
}

std::vector<Triple> Graph::triples() const {
  std::vector<Triple> out;
  out.reserve(order_.size());
  for (std::uint32_t idx : order_) out.push_back(storage_[idx]);
  return out;
}

std::vector<Term> Graph::terms() const {
  std::set<Term> all;
  for (const Triple& t : storage_) {
    all.insert(t.subject);
    all.insert(t.predicate);
    all.insert(t.object);
  }
  return {all.begin(), all.end()};
}

}  // namespace sparqlbench::rdf
