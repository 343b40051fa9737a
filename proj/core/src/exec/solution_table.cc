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

#include "sparqlbench/exec/solution_table.h"

#include <stdexcept>

namespace sparqlbench::exec {

SolutionTable SolutionTable::bindings(std::vector<std::string> header, std::vector<Row> rows, bool ordered) {
  SolutionTable t;
  t.kind = Kind::kBindings;
  t.header = std::move(header);
  t.rows = std::move(rows);
  t.ordered = ordered;
  t.check();
  return t;
}

SolutionTable SolutionTable::ask(bool value) {
  SolutionTable t;
  t.kind = Kind::kBoolean;
  t.boolean = value;
  return t;
}

void SolutionTable::check() const {
  if (kind == Kind::kBoolean) {
    if (!header.empty() || !rows.empty()) throw std::logic_error("boolean table with bindings");
    return;
  }
  for (const Row& r : rows) {
    if (r.size() != header.size()) throw std::logic_error("row width differs from header width");
  }
}

namespace {

int kind_rank(const rdf::Term& t) {
  switch (t.kind()) {
    case rdf::Term::Kind::kBlank: return 1;
    case rdf::Term::Kind::kIri: return 2;
    case rdf::Term::Kind::kLiteral: return 3;
  }
  return 0;
}

int three_way(const std::string& a, const std::string& b) {
  int c = a.compare(b);
  return c < 0 ? -1 : c > 0 ? 1 : 0;
}

}  // namespace

int compare_cells(const Cell& a, const Cell& b) {
  if (!a || !b) return a ? 1 : b ? -1 : 0;
  int ra = kind_rank(*a);
  int rb = kind_rank(*b);
  if (ra != rb) return ra < rb ? -1 : 1;
  if (!a->is_literal()) return three_way(a->value(), b->value());
  // Numeric literals form one block ahead of all other literals.
  if (a->is_numeric() != b->is_numeric()) return a->is_numeric() ? -1 : 1;
  if (a->is_numeric()) {
    auto va = a->numeric_value();
    auto vb = b->numeric_value();
    if (va.has_value() != vb.has_value()) return va ? -1 : 1;
    if (va && *va != *vb) return *va < *vb ? -1 : 1;
  }
  if (int c = three_way(a->effective_datatype(), b->effective_datatype())) return c;
  if (int c = three_way(a->value(), b->value())) return c;
  return three_way(a->language(), b->language());
}

int compare_rows(const Row& a, const Row& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = compare_cells(a[i], b[i])) return c;
  }
  return a.size() < b.size() ? -1 : a.size() > b.size() ? 1 : 0;
}

std::string to_string(const SolutionTable& table) {
  if (table.is_boolean()) return table.boolean ? "true" : "false";
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) out += (i ? "\t?" : "?") + table.header[i];
  out += "\n";
  for (const Row& r : table.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += "\t";
      out += r[i] ? r[i]->to_ntriples() : "UNDEF";
    }
    out += "\n";
  }
  return out;
}

}  // namespace sparqlbench::exec
