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

#ifndef SPARQLBENCH_RDF_TERM_H_
#define SPARQLBENCH_RDF_TERM_H_

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace sparqlbench::rdf {

namespace xsd {
inline constexpr std::string_view kString = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view kInteger = "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr std::string_view kDecimal = "http://www.w3.org/2001/XMLSchema#decimal";
inline constexpr std::string_view kDouble = "http://www.w3.org/2001/XMLSchema#double";
inline constexpr std::string_view kFloat = "http://www.w3.org/2001/XMLSchema#float";
inline constexpr std::string_view kBoolean = "http://www.w3.org/2001/XMLSchema#boolean";
}  // namespace xsd

inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kRdfLangString =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";

// Prefix label (without the trailing colon) to namespace IRI.
using PrefixMap = std::map<std::string, std::string>;

// An RDF term. Literals carry at most one of {datatype, language}; a plain
// literal has neither and is treated as xsd:string wherever a datatype is
// observed. Equality is exact and component-wise.
class Term {
 public:
  enum class Kind : unsigned char { kLiteral = 0, kIri = 1, kBlank = 2 };

  Term() = default;

  static Term iri(std::string iri);
  static Term blank(std::string label);
  static Term literal(std::string lexical);
  static Term typed(std::string lexical, std::string datatype);
  static Term lang_literal(std::string lexical, std::string language);
  static Term integer(long long value);
  static Term boolean(bool value);

  Kind kind() const { return kind_; }
  bool is_iri() const { return kind_ == Kind::kIri; }
  bool is_blank() const { return kind_ == Kind::kBlank; }
  bool is_literal() const { return kind_ == Kind::kLiteral; }

  // IRI string, blank label, or literal lexical form.
  const std::string& value() const { return value_; }
  const std::string& datatype() const { return datatype_; }
  const std::string& language() const { return language_; }

  // Datatype as observed by SPARQL: rdf:langString for tagged literals,
  // xsd:string for plain ones. Empty for non-literals.
  std::string effective_datatype() const;

  bool is_numeric() const;
  // Numeric value of an xsd numeric literal; nullopt if not numeric or the
  // lexical form is not parsable.
  std::optional<long double> numeric_value() const;

  // N-Triples rendering.
  std::string to_ntriples() const;

  friend bool operator==(const Term&, const Term&) = default;
  // Canonical order: literal < IRI < blank (the byte order of the N-Triples
  // sigils), then by value, datatype and language.
  friend std::strong_ordering operator<=>(const Term&, const Term&) = default;

 private:
  Term(Kind kind, std::string value, std::string datatype, std::string language)
      : kind_(kind),
        value_(std::move(value)),
        datatype_(std::move(datatype)),
        language_(std::move(language)) {}

  Kind kind_ = Kind::kIri;
  std::string value_;
  std::string datatype_;
  std::string language_;
};

bool is_numeric_datatype(std::string_view datatype);

// Escapes a lexical form for use inside a double-quoted N-Triples/Turtle/SPARQL
// string.
std::string escape_string(std::string_view lexical);

// Returns "prefix:local" if some namespace in `prefixes` yields a local name
// that is safe to write unescaped; otherwise nullopt.
std::optional<std::string> compact_iri(std::string_view iri, const PrefixMap& prefixes);

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept;
};

}  // namespace sparqlbench::rdf

#endif  // SPARQLBENCH_RDF_TERM_H_
