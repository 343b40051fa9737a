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

#ifndef SPARQLBENCH_RDF_GRAPH_H_
#define SPARQLBENCH_RDF_GRAPH_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sparqlbench/rdf/term.h"

namespace sparqlbench::rdf {

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend std::strong_ordering operator<=>(const Triple&, const Triple&) = default;
};

struct TripleHash {
  std::size_t operator()(const Triple& t) const noexcept;
};

// Throws std::invalid_argument unless subject is an IRI or blank node and the
// predicate is an IRI.
void check_triple(const Triple& t);

// A set of triples with subject, predicate and object indexes. Every index
// lists triple positions in canonical (Term ordering) triple order, so match
// results are deterministic.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::vector<Triple> triples);

  // Returns false if the triple was already present.
  bool insert(Triple t);
  void insert_all(std::span<const Triple> triples);

  bool contains(const Triple& t) const { return members_.contains(t); }
  std::size_t size() const { return order_.size(); }
  bool empty() const { return order_.empty(); }

  // Triples matching every present component, in canonical order.
  std::vector<Triple> match(const std::optional<Term>& s, const std::optional<Term>& p,
                            const std::optional<Term>& o) const;

  // Calls `fn(const Triple&)` for each match without materializing a vector.
  template <typename Fn>
  void for_each_match(const std::optional<Term>& s, const std::optional<Term>& p,
                      const std::optional<Term>& o, Fn&& fn) const {
    const std::vector<std::uint32_t>* candidates = candidate_list(s, p, o);
    if (candidates == nullptr) return;
    for (std::uint32_t idx : *candidates) {
      const Triple& t = storage_[idx];
      if (s && t.subject != *s) continue;
      if (p && t.predicate != *p) continue;
      if (o && t.object != *o) continue;
      fn(t);
    }
  }

  // All triples in canonical order.
  std::vector<Triple> triples() const;

  // Distinct terms occurring in any position, sorted.
  std::vector<Term> terms() const;

  const PrefixMap& prefixes() const { return prefixes_; }
  PrefixMap& mutable_prefixes() { return prefixes_; }

  friend bool operator==(const Graph& a, const Graph& b) { return a.members_ == b.members_; }

 private:
  using Index = std::unordered_map<Term, std::vector<std::uint32_t>, TermHash>;

  const std::vector<std::uint32_t>* candidate_list(const std::optional<Term>& s,
                                                   const std::optional<Term>& p,
                                                   const std::optional<Term>& o) const;
  void insert_sorted(std::vector<std::uint32_t>& list, std::uint32_t idx);

  std::vector<Triple> storage_;
  std::unordered_set<Triple, TripleHash> members_;
  std::vector<std::uint32_t> order_;
  Index by_subject_;
  Index by_predicate_;
  Index by_object_;
  PrefixMap prefixes_;
};

}  // namespace sparqlbench::rdf

#endif  // SPARQLBENCH_RDF_GRAPH_H_
