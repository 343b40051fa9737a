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

#include "sparqlbench/sparql/ast.h"

#include <algorithm>

namespace sparqlbench::sparql {

Expression Expression::var(std::string name) {
  Expression e;
  e.op = Op::kVariable;
  e.variable = std::move(name);
  return e;
}

Expression Expression::constant_of(rdf::Term term) {
  Expression e;
  e.op = Op::kConstant;
  e.constant = std::move(term);
  return e;
}

Expression Expression::call(Op op, std::vector<Expression> args) {
  Expression e;
  e.op = op;
  e.args = std::move(args);
  return e;
}

std::pair<std::size_t, std::size_t> arity(Expression::Op op) {
  using Op = Expression::Op;
  switch (op) {
    case Op::kVariable:
    case Op::kConstant:
    case Op::kBound:
      return {0, 0};
    case Op::kNot:
    case Op::kStr:
    case Op::kLang:
    case Op::kDatatype:
      return {1, 1};
    case Op::kRegex:
      return {2, 3};
    default:
      return {2, 2};
  }
}

bool operator==(const GroupPattern& a, const GroupPattern& b) { return a.elements == b.elements; }

bool QueryAst::has_aggregate() const {
  return std::any_of(projection.begin(), projection.end(), [](const ProjectionItem& item) {
    return std::holds_alternative<CountAggregate>(item);
  });
}

bool QueryAst::projects_only_count() const {
  return form == Form::kSelect && !select_star && projection.size() == 1 &&
         std::holds_alternative<CountAggregate>(projection.front());
}

namespace {

void collect_variables(const GroupPattern& group, std::vector<Variable>& out) {
  auto add = [&out](const PatternTerm& t) {
    if (const auto* v = std::get_if<Variable>(&t)) {
      if (std::find(out.begin(), out.end(), *v) == out.end()) out.push_back(*v);
    }
  };
  for (const PatternElement& el : group.elements) {
    if (const auto* tp = std::get_if<TriplePattern>(&el.node)) {
      add(tp->subject);
      add(tp->predicate);
      add(tp->object);
    } else if (const auto* opt = std::get_if<OptionalPattern>(&el.node)) {
      collect_variables(opt->group, out);
    }
  }
}

}  // namespace

std::vector<Variable> pattern_variables(const GroupPattern& group) {
  std::vector<Variable> out;
  collect_variables(group, out);
  return out;
}

std::vector<std::string> result_header(const QueryAst& ast) {
  std::vector<std::string> header;
  if (ast.form == QueryAst::Form::kAsk) return header;
  if (ast.select_star) {
    for (const Variable& v : pattern_variables(ast.where)) header.push_back(v.name);
    return header;
  }
  for (const ProjectionItem& item : ast.projection) {
    if (const auto* v = std::get_if<Variable>(&item)) {
      header.push_back(v->name);
    } else {
      header.push_back(std::get<CountAggregate>(item).alias.name);
    }
  }
  return header;
}

}  // namespace sparqlbench::sparql
