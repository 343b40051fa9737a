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

#include "sparqlbench/exec/local_engine.h"

#include <algorithm>
#include <map>
#include <memory>
#include <regex>
#include <set>
#include <unordered_map>

namespace sparqlbench::exec {

namespace {

using rdf::Term;
using sparql::CountAggregate;
using sparql::Expression;
using sparql::GroupPattern;
using sparql::PatternTerm;
using sparql::QueryAst;
using sparql::TriplePattern;
using sparql::Variable;

using Value = std::optional<Term>;  // nullopt is the SPARQL error value

struct RowLess {
  bool operator()(const Row& a, const Row& b) const { return compare_rows(a, b) < 0; }
};

bool is_string_like(const Term& t) {
  return t.is_literal() && t.datatype().empty();
}

std::optional<bool> effective_boolean(const Value& v) {
  if (!v || !v->is_literal()) return std::nullopt;
  if (v->datatype() == rdf::xsd::kBoolean) return v->value() == "true" || v->value() == "1";
  if (v->is_numeric()) {
    auto n = v->numeric_value();
    if (!n) return false;
    return *n != 0 && *n == *n;
  }
  if (v->datatype().empty() && v->language().empty()) return !v->value().empty();
  return std::nullopt;
}

class Engine {
 public:
  Engine(const QueryAst& ast, const rdf::Graph& graph) : ast_(ast), graph_(graph) {
    for (const Variable& v : sparql::pattern_variables(ast.where)) slot_for(v.name);
    for (const auto& item : ast.projection) {
      if (const auto* v = std::get_if<Variable>(&item)) {
        slot_for(v->name);
      } else {
        const auto& agg = std::get<CountAggregate>(item);
        if (agg.argument) slot_for(agg.argument->name);
        slot_for(agg.alias.name);
      }
    }
    if (ast.group_by) {
      for (const Variable& v : *ast.group_by) slot_for(v.name);
    }
  }

  SolutionTable run() {
    std::vector<Row> rows = eval_group(ast_.where, {Row(slots_.size())});
    std::stable_sort(rows.begin(), rows.end(), RowLess{});
    if (ast_.form == QueryAst::Form::kAsk) return SolutionTable::ask(!rows.empty());

    if (ast_.has_aggregate() || ast_.group_by) rows = aggregate(rows);

    if (!ast_.order_by.empty()) order(rows);

    std::vector<std::string> header = sparql::result_header(ast_);
    std::vector<int> columns;
    columns.reserve(header.size());
    for (const std::string& name : header) columns.push_back(lookup(name));

    std::vector<Row> out;
    out.reserve(rows.size());
    std::set<Row, RowLess> seen;
    for (const Row& r : rows) {
      Row projected;
      projected.reserve(columns.size());
      for (int c : columns) projected.push_back(c >= 0 ? r[static_cast<std::size_t>(c)] : std::nullopt);
      if (ast_.distinct && !seen.insert(projected).second) continue;
      out.push_back(std::move(projected));
    }

    std::size_t offset = ast_.offset ? static_cast<std::size_t>(std::min<std::uint64_t>(*ast_.offset, out.size())) : 0;
    out.erase(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(offset));
    if (ast_.limit && *ast_.limit < out.size()) out.resize(static_cast<std::size_t>(*ast_.limit));
    return SolutionTable::bindings(std::move(header), std::move(out), !ast_.order_by.empty());
  }

 private:
  int slot_for(const std::string& name) {
    auto [it, inserted] = slots_.emplace(name, static_cast<int>(slots_.size()));
    return it->second;
  }

  int lookup(const std::string& name) const {
    auto it = slots_.find(name);
    return it == slots_.end() ? -1 : it->second;
  }

  // --- graph patterns ---

  std::vector<Row> eval_group(const GroupPattern& group, std::vector<Row> rows) {
    std::vector<const Expression*> filters;
    std::vector<const TriplePattern*> block;
    auto flush = [&]() {
      if (block.empty()) return;
      rows = join_bgp(rows, block);
      block.clear();
    };
    for (const auto& el : group.elements) {
      if (const auto* tp = std::get_if<TriplePattern>(&el.node)) {
        block.push_back(tp);
      } else if (const auto* f = std::get_if<sparql::FilterPattern>(&el.node)) {
        filters.push_back(&f->condition);
      } else {
        flush();
        rows = left_join(std::move(rows), std::get<sparql::OptionalPattern>(el.node).group);
      }
    }
    flush();
    if (filters.empty()) return rows;
    std::vector<Row> kept;
    for (Row& r : rows) {
      bool pass = true;
      for (const Expression* f : filters) {
        auto b = effective_boolean(eval(*f, r));
        if (!b || !*b) {
          pass = false;
          break;
        }
      }
      if (pass) kept.push_back(std::move(r));
    }
    return kept;
  }

  std::vector<Row> left_join(std::vector<Row> rows, const GroupPattern& optional) {
    std::vector<Row> out;
    for (Row& r : rows) {
      std::vector<Row> extended = eval_group(optional, {r});
      if (extended.empty()) {
        out.push_back(std::move(r));
      } else {
        for (Row& e : extended) out.push_back(std::move(e));
      }
    }
    return out;
  }

  std::vector<Row> join_bgp(const std::vector<Row>& input, const std::vector<const TriplePattern*>& patterns) {
    std::vector<Row> out;
    std::vector<bool> used(patterns.size(), false);
    for (const Row& seed : input) {
      Row row = seed;
      solve(patterns, used, patterns.size(), row, out);
    }
    return out;
  }

  std::optional<Term> resolve(const PatternTerm& t, const Row& row) const {
    if (const auto* term = std::get_if<Term>(&t)) return *term;
    int s = lookup(std::get<Variable>(t).name);
    if (s < 0) throw EvaluationError("variable without slot");
    return row[static_cast<std::size_t>(s)];
  }

  void solve(const std::vector<const TriplePattern*>& patterns, std::vector<bool>& used,
             std::size_t remaining, Row& row, std::vector<Row>& out) {
    if (remaining == 0) {
      out.push_back(row);
      return;
    }
    // Greedy choice: the unused pattern with the most bound components.
    std::size_t best = patterns.size();
    int best_bound = -1;
    for (std::size_t i = 0; i < patterns.size(); ++i) {
      if (used[i]) continue;
      const TriplePattern& tp = *patterns[i];
      int bound = static_cast<int>(resolve(tp.subject, row).has_value()) +
                  static_cast<int>(resolve(tp.predicate, row).has_value()) +
                  static_cast<int>(resolve(tp.object, row).has_value());
      if (bound > best_bound) {
        best = i;
        best_bound = bound;
      }
    }
    const TriplePattern& tp = *patterns[best];
    used[best] = true;
    auto s = resolve(tp.subject, row);
    auto p = resolve(tp.predicate, row);
    auto o = resolve(tp.object, row);
    graph_.for_each_match(s, p, o, [&](const rdf::Triple& t) {
      std::vector<int> assigned;
      bool consistent = true;
      auto bind = [&](const PatternTerm& pt, const Term& value) {
        const auto* v = std::get_if<Variable>(&pt);
        if (v == nullptr) return;
        auto slot = static_cast<std::size_t>(lookup(v->name));
        if (row[slot]) {
          if (*row[slot] != value) consistent = false;
          return;
        }
        row[slot] = value;
        assigned.push_back(static_cast<int>(slot));
      };
      bind(tp.subject, t.subject);
      bind(tp.predicate, t.predicate);
      bind(tp.object, t.object);
      if (consistent) solve(patterns, used, remaining - 1, row, out);
      for (int slot : assigned) row[static_cast<std::size_t>(slot)].reset();
    });
    used[best] = false;
  }

  // --- aggregation ---

  std::vector<Row> aggregate(const std::vector<Row>& rows) {
    std::vector<int> key_slots;
    if (ast_.group_by) {
      for (const Variable& v : *ast_.group_by) key_slots.push_back(lookup(v.name));
    }
    std::map<Row, std::vector<const Row*>, RowLess> groups;
    for (const Row& r : rows) {
      Row key;
      for (int s : key_slots) key.push_back(r[static_cast<std::size_t>(s)]);
      groups[key].push_back(&r);
    }
    if (!ast_.group_by && groups.empty()) groups[Row{}];

    std::vector<Row> out;
    for (const auto& [key, members] : groups) {
      Row result(slots_.size());
      for (std::size_t i = 0; i < key_slots.size(); ++i) result[static_cast<std::size_t>(key_slots[i])] = key[i];
      for (const auto& item : ast_.projection) {
        const auto* agg = std::get_if<CountAggregate>(&item);
        if (agg == nullptr) continue;
        result[static_cast<std::size_t>(lookup(agg->alias.name))] = Term::integer(count(*agg, members));
      }
      out.push_back(std::move(result));
    }
    return out;
  }

  long long count(const CountAggregate& agg, const std::vector<const Row*>& members) const {
    if (!agg.argument) {
      if (!agg.distinct) return static_cast<long long>(members.size());
      std::set<Row, RowLess> distinct;
      for (const Row* r : members) distinct.insert(*r);
      return static_cast<long long>(distinct.size());
    }
    auto slot = static_cast<std::size_t>(lookup(agg.argument->name));
    if (!agg.distinct) {
      return std::count_if(members.begin(), members.end(), [slot](const Row* r) { return (*r)[slot].has_value(); });
    }
    std::set<Term> distinct;
    for (const Row* r : members) {
      if ((*r)[slot]) distinct.insert(*(*r)[slot]);
    }
    return static_cast<long long>(distinct.size());
  }

  void order(std::vector<Row>& rows) {
    std::vector<std::pair<std::vector<Cell>, std::size_t>> keyed;
    keyed.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::vector<Cell> key;
      for (const auto& cond : ast_.order_by) key.push_back(eval(cond.expression, rows[i]));
      keyed.emplace_back(std::move(key), i);
    }
    std::stable_sort(keyed.begin(), keyed.end(), [this](const auto& a, const auto& b) {
      for (std::size_t k = 0; k < ast_.order_by.size(); ++k) {
        int c = compare_cells(a.first[k], b.first[k]);
        if (c != 0) return ast_.order_by[k].ascending ? c < 0 : c > 0;
      }
      return false;
    });
    std::vector<Row> sorted;
    sorted.reserve(rows.size());
    for (const auto& [key, idx] : keyed) sorted.push_back(std::move(rows[idx]));
    rows = std::move(sorted);
  }

  // --- expressions ---

  Value eval(const Expression& e, const Row& row) {
    using Op = Expression::Op;
    switch (e.op) {
      case Op::kVariable: {
        int s = lookup(e.variable);
        return s < 0 ? std::nullopt : row[static_cast<std::size_t>(s)];
      }
      case Op::kConstant:
        return e.constant;
      case Op::kBound: {
        int s = lookup(e.variable);
        return Term::boolean(s >= 0 && row[static_cast<std::size_t>(s)].has_value());
      }
      case Op::kAnd:
      case Op::kOr: {
        auto a = effective_boolean(eval(e.args[0], row));
        auto b = effective_boolean(eval(e.args[1], row));
        bool is_and = e.op == Op::kAnd;
        if (a && b) return Term::boolean(is_and ? (*a && *b) : (*a || *b));
        // Error absorption: false && err = false, true || err = true.
        if ((a && *a != is_and) || (b && *b != is_and)) return Term::boolean(!is_and);
        return std::nullopt;
      }
      case Op::kNot: {
        auto a = effective_boolean(eval(e.args[0], row));
        if (!a) return std::nullopt;
        return Term::boolean(!*a);
      }
      case Op::kEqual:
      case Op::kNotEqual: {
        Value a = eval(e.args[0], row);
        Value b = eval(e.args[1], row);
        if (!a || !b) return std::nullopt;
        bool equal;
        if (a->is_numeric() && b->is_numeric() && a->numeric_value() && b->numeric_value()) {
          equal = *a->numeric_value() == *b->numeric_value();
        } else {
          equal = *a == *b;
        }
        return Term::boolean(e.op == Op::kEqual ? equal : !equal);
      }
      case Op::kLess:
      case Op::kLessEqual:
      case Op::kGreater:
      case Op::kGreaterEqual: {
        Value a = eval(e.args[0], row);
        Value b = eval(e.args[1], row);
        auto c = compare_values(a, b);
        if (!c) return std::nullopt;
        bool r = e.op == Op::kLess        ? *c < 0
                 : e.op == Op::kLessEqual ? *c <= 0
                 : e.op == Op::kGreater   ? *c > 0
                                          : *c >= 0;
        return Term::boolean(r);
      }
      case Op::kStr: {
        Value a = eval(e.args[0], row);
        if (!a || a->is_blank()) return std::nullopt;
        return Term::literal(a->value());
      }
      case Op::kLang: {
        Value a = eval(e.args[0], row);
        if (!a || !a->is_literal()) return std::nullopt;
        return Term::literal(a->language());
      }
      case Op::kDatatype: {
        Value a = eval(e.args[0], row);
        if (!a || !a->is_literal()) return std::nullopt;
        return Term::iri(a->effective_datatype());
      }
      case Op::kContains:
      case Op::kStrStarts: {
        Value a = eval(e.args[0], row);
        Value b = eval(e.args[1], row);
        if (!a || !b || !a->is_literal() || !b->is_literal()) return std::nullopt;
        if (!string_argument(*a) || !string_argument(*b)) return std::nullopt;
        if (e.op == Op::kContains) return Term::boolean(a->value().find(b->value()) != std::string::npos);
        return Term::boolean(a->value().starts_with(b->value()));
      }
      case Op::kRegex:
        return regex(e, row);
    }
    throw EvaluationError("unknown expression operator");
  }

  static bool string_argument(const Term& t) { return t.is_literal() && t.datatype().empty(); }

  static std::optional<int> compare_values(const Value& a, const Value& b) {
    if (!a || !b || !a->is_literal() || !b->is_literal()) return std::nullopt;
    if (a->is_numeric() && b->is_numeric()) {
      auto va = a->numeric_value();
      auto vb = b->numeric_value();
      if (!va || !vb) return std::nullopt;
      return *va < *vb ? -1 : *va > *vb ? 1 : 0;
    }
    if (a->effective_datatype() != b->effective_datatype() || a->language() != b->language()) {
      return std::nullopt;
    }
    int c = a->value().compare(b->value());
    return c < 0 ? -1 : c > 0 ? 1 : 0;
  }

  Value regex(const Expression& e, const Row& row) {
    Value text = eval(e.args[0], row);
    Value pattern = eval(e.args[1], row);
    if (!text || !pattern || !string_argument(*text) || !is_string_like(*pattern)) return std::nullopt;
    std::string flags;
    if (e.args.size() == 3) {
      Value f = eval(e.args[2], row);
      if (!f || !is_string_like(*f)) return std::nullopt;
      flags = f->value();
    }
    auto syntax = std::regex::ECMAScript;
    for (char c : flags) {
      if (c == 'i') {
        syntax |= std::regex::icase;
      } else if (c != 's' && c != 'm' && c != 'x') {
        return std::nullopt;
      }
    }
    std::string key = flags + '\0' + pattern->value();
    auto it = regex_cache_.find(key);
    if (it == regex_cache_.end()) {
      std::shared_ptr<std::regex> compiled;
      try {
        compiled = std::make_shared<std::regex>(pattern->value(), syntax);
      } catch (const std::regex_error&) {
        compiled = nullptr;
      }
      it = regex_cache_.emplace(key, std::move(compiled)).first;
    }
    if (!it->second) return std::nullopt;
    try {
      return Term::boolean(std::regex_search(text->value(), *it->second));
    } catch (const std::regex_error&) {
      return std::nullopt;
    }
  }

  const QueryAst& ast_;
  const rdf::Graph& graph_;
  std::unordered_map<std::string, int> slots_;
  std::unordered_map<std::string, std::shared_ptr<std::regex>> regex_cache_;
};

}  // namespace

SolutionTable evaluate_local(const sparql::QueryAst& ast, const rdf::Graph& graph) {
  Engine engine(ast, graph);
  return engine.run();
}

}  // namespace sparqlbench::exec
