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

#include "random_instances.h"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace sparqlbench::testing {

using rdf::Term;
using sparql::Expression;
using sparql::PatternTerm;
using sparql::QueryAst;
using sparql::TriplePattern;
using sparql::Variable;

namespace {

const std::string kEx = "http://example.org/";

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

bool chance(Rng& rng, double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; }

}  // namespace

std::vector<Term> subject_pool() {
  return {Term::iri(kEx + "a"), Term::iri(kEx + "b"), Term::iri(kEx + "c"), Term::iri(kEx + "d"),
          Term::blank("n1")};
}

std::vector<Term> predicate_pool() { return {Term::iri(kEx + "p"), Term::iri(kEx + "q"), Term::iri(kEx + "r")}; }

std::vector<Term> object_pool() {
  auto v = subject_pool();
  v.push_back(Term::literal("x"));
  v.push_back(Term::lang_literal("x", "en"));
  v.push_back(Term::integer(1));
  v.push_back(Term::integer(2));
  return v;
}

rdf::Graph random_graph(Rng& rng, std::size_t max_triples) {
  rdf::Graph g;
  std::size_t n = std::uniform_int_distribution<std::size_t>(0, max_triples)(rng);
  auto s = subject_pool(), p = predicate_pool(), o = object_pool();
  for (std::size_t i = 0; i < n; ++i) g.insert({pick(rng, s), pick(rng, p), pick(rng, o)});
  return g;
}

namespace {

PatternTerm random_position(Rng& rng, const std::vector<Term>& pool, const std::vector<std::string>& vars,
                            double var_prob) {
  if (chance(rng, var_prob)) return Variable{pick(rng, vars)};
  Term t = pick(rng, pool);
  // Blank nodes cannot be written in queries.
  while (t.kind() == Term::Kind::kBlank) t = pick(rng, pool);
  return t;
}

TriplePattern random_pattern(Rng& rng, const std::vector<std::string>& vars) {
  return {random_position(rng, subject_pool(), vars, 0.6), random_position(rng, predicate_pool(), vars, 0.3),
          random_position(rng, object_pool(), vars, 0.6)};
}

void collect_vars(const TriplePattern& tp, std::vector<std::string>& out) {
  for (const PatternTerm* pt : {&tp.subject, &tp.predicate, &tp.object}) {
    if (auto* v = std::get_if<Variable>(pt)) {
      if (std::find(out.begin(), out.end(), v->name) == out.end()) out.push_back(v->name);
    }
  }
}

}  // namespace

QueryAst random_query(Rng& rng) {
  QueryAst q;
  q.form = QueryAst::Form::kSelect;
  std::vector<std::string> required_vars;
  std::size_t n = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
  for (std::size_t i = 0; i < n; ++i) {
    TriplePattern tp = random_pattern(rng, {"a", "b", "c"});
    collect_vars(tp, required_vars);
    q.where.elements.push_back({tp});
  }
  std::vector<std::string> all_vars = required_vars;
  if (chance(rng, 0.3)) {
    std::vector<std::string> pool = required_vars;
    pool.push_back("d");
    TriplePattern tp = random_pattern(rng, pool);
    collect_vars(tp, all_vars);
    sparql::OptionalPattern opt;
    opt.group.elements.push_back({tp});
    q.where.elements.push_back({opt});
  }
  if (!all_vars.empty() && chance(rng, 0.3)) {
    auto op = chance(rng, 0.5) ? Expression::Op::kEqual : Expression::Op::kNotEqual;
    Expression e = Expression::call(op, {Expression::var(pick(rng, all_vars)), Expression::constant_of(pick(rng, object_pool()))});
    while (e.args[1].constant.kind() == Term::Kind::kBlank) e.args[1] = Expression::constant_of(pick(rng, object_pool()));
    q.where.elements.push_back({sparql::FilterPattern{e}});
  }
  if (all_vars.empty() || chance(rng, 0.15)) {
    q.projection.push_back(sparql::CountAggregate{false, std::nullopt, Variable{"count"}});
    return q;
  }
  std::vector<std::string> shuffled = all_vars;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  std::size_t k = std::uniform_int_distribution<std::size_t>(1, shuffled.size())(rng);
  for (std::size_t i = 0; i < k; ++i) q.projection.push_back(Variable{shuffled[i]});
  q.distinct = chance(rng, 0.3);
  return q;
}

namespace {

using Assignment = std::map<std::string, Term>;

std::optional<Term> resolve(const PatternTerm& pt, const Assignment& a) {
  if (auto* t = std::get_if<Term>(&pt)) return *t;
  auto it = a.find(std::get<Variable>(pt).name);
  if (it == a.end()) return std::nullopt;
  return it->second;
}

bool satisfied(const std::vector<TriplePattern>& patterns, const Assignment& a, const rdf::Graph& g) {
  for (const auto& tp : patterns) {
    auto s = resolve(tp.subject, a), p = resolve(tp.predicate, a), o = resolve(tp.object, a);
    if (!s || !p || !o) return false;
    if (s->kind() == Term::Kind::kLiteral || p->kind() != Term::Kind::kIri) return false;
    if (!g.contains({*s, *p, *o})) return false;
  }
  return true;
}

void enumerate(const std::vector<std::string>& vars, std::size_t i, const std::vector<Term>& domain, Assignment& a,
               const std::function<void(const Assignment&)>& fn) {
  if (i == vars.size()) {
    fn(a);
    return;
  }
  for (const Term& t : domain) {
    a[vars[i]] = t;
    enumerate(vars, i + 1, domain, a, fn);
  }
  a.erase(vars[i]);
}

// FILTER with one comparison between a variable and a constant.
bool passes(const Expression& f, const Assignment& a) {
  auto it = a.find(f.args[0].variable);
  if (it == a.end()) return false;
  const Term& x = it->second;
  const Term& c = f.args[1].constant;
  bool equal;
  if (x.is_numeric() && c.is_numeric()) {
    equal = *x.numeric_value() == *c.numeric_value();
  } else {
    equal = x == c;
  }
  return f.op == Expression::Op::kEqual ? equal : !equal;
}

}  // namespace

RenderedRows oracle_evaluate(const QueryAst& query, const rdf::Graph& graph) {
  std::vector<TriplePattern> required, optional;
  std::vector<const Expression*> filters;
  for (const auto& el : query.where.elements) {
    if (auto* tp = std::get_if<TriplePattern>(&el.node)) required.push_back(*tp);
    if (auto* op = std::get_if<sparql::OptionalPattern>(&el.node)) {
      for (const auto& inner : op->group.elements) optional.push_back(std::get<TriplePattern>(inner.node));
    }
    if (auto* f = std::get_if<sparql::FilterPattern>(&el.node)) filters.push_back(&f->condition);
  }
  std::vector<Term> domain;
  {
    std::set<Term> terms;
    for (const auto& t : graph.triples()) {
      terms.insert(t.subject);
      terms.insert(t.predicate);
      terms.insert(t.object);
    }
    domain.assign(terms.begin(), terms.end());
  }
  std::vector<std::string> req_vars, opt_vars;
  for (const auto& tp : required) collect_vars(tp, req_vars);
  std::vector<std::string> all = req_vars;
  for (const auto& tp : optional) collect_vars(tp, all);
  for (const auto& v : all) {
    if (std::find(req_vars.begin(), req_vars.end(), v) == req_vars.end()) opt_vars.push_back(v);
  }

  std::vector<Assignment> solutions;
  Assignment a;
  enumerate(req_vars, 0, domain, a, [&](const Assignment& mu) {
    if (!satisfied(required, mu, graph)) return;
    if (optional.empty()) {
      solutions.push_back(mu);
      return;
    }
    std::vector<Assignment> ext;
    Assignment b = mu;
    enumerate(opt_vars, 0, domain, b, [&](const Assignment& nu) {
      if (satisfied(optional, nu, graph)) ext.push_back(nu);
    });
    if (ext.empty()) {
      solutions.push_back(mu);
    } else {
      solutions.insert(solutions.end(), ext.begin(), ext.end());
    }
  });
  std::erase_if(solutions, [&](const Assignment& s) {
    return !std::all_of(filters.begin(), filters.end(), [&](const Expression* f) { return passes(*f, s); });
  });

  RenderedRows rows;
  if (query.projects_only_count()) {
    rows.push_back({Term::integer(static_cast<long long>(solutions.size())).to_ntriples()});
    return rows;
  }
  for (const auto& s : solutions) {
    std::vector<std::string> row;
    for (const auto& item : query.projection) {
      auto it = s.find(std::get<Variable>(item).name);
      row.push_back(it == s.end() ? "" : it->second.to_ntriples());
    }
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end());
  if (query.distinct) rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return rows;
}

RenderedRows render_sorted(const exec::SolutionTable& table) {
  RenderedRows rows;
  for (const auto& r : table.rows) {
    std::vector<std::string> row;
    for (const auto& c : r) row.push_back(c ? c->to_ntriples() : "");
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

exec::SolutionTable random_table(Rng& rng, std::size_t columns, std::size_t max_rows) {
  std::vector<std::string> header;
  for (std::size_t i = 0; i < columns; ++i) header.push_back("c" + std::to_string(i));
  auto pool = object_pool();
  std::vector<exec::Row> rows(std::uniform_int_distribution<std::size_t>(0, max_rows)(rng));
  for (auto& row : rows) {
    for (std::size_t i = 0; i < columns; ++i) {
      row.push_back(chance(rng, 0.1) ? exec::Cell{} : exec::Cell{pick(rng, pool)});
    }
  }
  return exec::SolutionTable::bindings(std::move(header), std::move(rows));
}

}  // namespace sparqlbench::testing
