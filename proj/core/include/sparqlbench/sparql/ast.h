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

#ifndef SPARQLBENCH_SPARQL_AST_H_
#define SPARQLBENCH_SPARQL_AST_H_

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sparqlbench/rdf/term.h"

namespace sparqlbench::sparql {

struct Variable {
  std::string name;  // without the ? or $ sigil

  friend bool operator==(const Variable&, const Variable&) = default;
  friend auto operator<=>(const Variable&, const Variable&) = default;
};

using PatternTerm = std::variant<rdf::Term, Variable>;

struct TriplePattern {
  PatternTerm subject;
  PatternTerm predicate;
  PatternTerm object;

  friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
};

struct Expression {
  enum class Op {
    kVariable,
    kConstant,
    kEqual,
    kNotEqual,
    kLess,
    kLessEqual,
    kGreater,
    kGreaterEqual,
    kAnd,
    kOr,
    kNot,
    kBound,
    kStr,
    kLang,
    kDatatype,
    kRegex,
    kContains,
    kStrStarts,
  };

  Op op = Op::kConstant;
  std::string variable;          // kVariable and kBound
  rdf::Term constant;            // kConstant
  std::vector<Expression> args;  // operands

  static Expression var(std::string name);
  static Expression constant_of(rdf::Term term);
  static Expression call(Op op, std::vector<Expression> args);

  friend bool operator==(const Expression&, const Expression&) = default;
};

// Allowed operand counts for an operator: {min, max}.
std::pair<std::size_t, std::size_t> arity(Expression::Op op);

struct PatternElement;

struct GroupPattern {
  std::vector<PatternElement> elements;
};

bool operator==(const GroupPattern& a, const GroupPattern& b);

struct FilterPattern {
  Expression condition;
  friend bool operator==(const FilterPattern&, const FilterPattern&) = default;
};

struct OptionalPattern {
  GroupPattern group;
  friend bool operator==(const OptionalPattern& a, const OptionalPattern& b) { return a.group == b.group; }
};

struct PatternElement {
  std::variant<TriplePattern, FilterPattern, OptionalPattern> node;
  friend bool operator==(const PatternElement&, const PatternElement&) = default;
};

struct CountAggregate {
  bool distinct = false;
  std::optional<Variable> argument;  // nullopt means COUNT(*)
  Variable alias;

  friend bool operator==(const CountAggregate&, const CountAggregate&) = default;
};

using ProjectionItem = std::variant<Variable, CountAggregate>;

struct OrderCondition {
  Expression expression;
  bool ascending = true;

  friend bool operator==(const OrderCondition&, const OrderCondition&) = default;
};

struct QueryAst {
  enum class Form { kSelect, kAsk };

  rdf::PrefixMap prologue;
  std::optional<std::string> base;
  Form form = Form::kSelect;
  bool distinct = false;
  bool select_star = false;
  std::vector<ProjectionItem> projection;
  GroupPattern where;
  std::optional<std::vector<Variable>> group_by;
  std::vector<OrderCondition> order_by;  // empty when there is no ORDER BY
  std::optional<std::uint64_t> limit;
  std::optional<std::uint64_t> offset;

  bool has_aggregate() const;
  // True if the projection is exactly one COUNT aggregate.
  bool projects_only_count() const;

  friend bool operator==(const QueryAst&, const QueryAst&) = default;
};

// Variables bound by triple patterns of the group (including nested
// OPTIONALs), in order of first appearance.
std::vector<Variable> pattern_variables(const GroupPattern& group);

// Names of the result columns, in order.
std::vector<std::string> result_header(const QueryAst& ast);

}  // namespace sparqlbench::sparql

#endif  // SPARQLBENCH_SPARQL_AST_H_
