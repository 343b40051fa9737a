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

#include "sparqlbench/rdf/term.h"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace sparqlbench::rdf {

namespace {

constexpr std::array<std::string_view, 16> kNumericTypes = {
    xsd::kInteger,
    xsd::kDecimal,
    xsd::kDouble,
    xsd::kFloat,
    "http://www.w3.org/2001/XMLSchema#int",
    "http://www.w3.org/2001/XMLSchema#long",
    "http://www.w3.org/2001/XMLSchema#short",
    "http://www.w3.org/2001/XMLSchema#byte",
    "http://www.w3.org/2001/XMLSchema#nonNegativeInteger",
    "http://www.w3.org/2001/XMLSchema#nonPositiveInteger",
    "http://www.w3.org/2001/XMLSchema#positiveInteger",
    "http://www.w3.org/2001/XMLSchema#negativeInteger",
    "http://www.w3.org/2001/XMLSchema#unsignedLong",
    "http://www.w3.org/2001/XMLSchema#unsignedInt",
    "http://www.w3.org/2001/XMLSchema#unsignedShort",
    "http://www.w3.org/2001/XMLSchema#unsignedByte",
};

bool is_local_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

}  // namespace

Term Term::iri(std::string iri) { return Term(Kind::kIri, std::move(iri), {}, {}); }

Term Term::blank(std::string label) { return Term(Kind::kBlank, std::move(label), {}, {}); }

Term Term::literal(std::string lexical) { return Term(Kind::kLiteral, std::move(lexical), {}, {}); }

Term Term::typed(std::string lexical, std::string datatype) {
  // xsd:string and the plain literal are the same RDF 1.1 term.
  if (datatype == xsd::kString) datatype.clear();
  return Term(Kind::kLiteral, std::move(lexical), std::move(datatype), {});
}

Term Term::lang_literal(std::string lexical, std::string language) {
  for (char& c : language) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return Term(Kind::kLiteral, std::move(lexical), {}, std::move(language));
}

Term Term::integer(long long value) { return typed(std::to_string(value), std::string(xsd::kInteger)); }

Term Term::boolean(bool value) { return typed(value ? "true" : "false", std::string(xsd::kBoolean)); }

std::string Term::effective_datatype() const {
  if (kind_ != Kind::kLiteral) return {};
  if (!language_.empty()) return std::string(kRdfLangString);
  if (datatype_.empty()) return std::string(xsd::kString);
  return datatype_;
}

bool is_numeric_datatype(std::string_view datatype) {
  for (std::string_view t : kNumericTypes) {
    if (t == datatype) return true;
  }
  return false;
}

bool Term::is_numeric() const { return kind_ == Kind::kLiteral && is_numeric_datatype(datatype_); }

std::optional<long double> Term::numeric_value() const {
  if (!is_numeric()) return std::nullopt;
  const std::string& s = value_;
  if (s.empty()) return std::nullopt;
  if (s == "INF" || s == "+INF") return HUGE_VALL;
  if (s == "-INF") return -HUGE_VALL;
  char* end = nullptr;
  long double v = std::strtold(s.c_str(), &end);
  if (end != s.c_str() + s.size()) return std::nullopt;
  // strtold accepts hex floats, "inf" and "nan"; xsd lexical spaces do not.
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '+' || c == '-' ||
          c == 'e' || c == 'E')) {
      return std::nullopt;
    }
  }
  return v;
}

std::string escape_string(std::string_view lexical) {
  std::string out;
  out.reserve(lexical.size() + 2);
  for (char c : lexical) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04X", static_cast<unsigned>(c));
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string Term::to_ntriples() const {
  switch (kind_) {
    case Kind::kIri:
      return "<" + value_ + ">";
    case Kind::kBlank:
      return "_:" + value_;
    case Kind::kLiteral: {
      std::string out = "\"" + escape_string(value_) + "\"";
      if (!language_.empty()) {
        out += "@" + language_;
      } else if (!datatype_.empty()) {
        out += "^^<" + datatype_ + ">";
      }
      return out;
    }
  }
  return {};
}

std::optional<std::string> compact_iri(std::string_view iri, const PrefixMap& prefixes) {
  const std::string* best_label = nullptr;
  std::size_t best_len = 0;
  for (const auto& [label, ns] : prefixes) {
    if (ns.empty() || ns.size() < best_len || !iri.starts_with(ns)) continue;
    std::string_view local = iri.substr(ns.size());
    bool ok = true;
    for (char c : local) ok = ok && is_local_name_char(c);
    if (!local.empty() && (local.back() == '.' || local.front() == '.' || local.front() == '-')) {
      ok = false;
    }
    if (ok && (best_label == nullptr || ns.size() > best_len)) {
      best_label = &label;
      best_len = ns.size();
    }
  }
  if (best_label == nullptr) return std::nullopt;
  return *best_label + ":" + std::string(iri.substr(best_len));
}

std::size_t TermHash::operator()(const Term& t) const noexcept {
  std::size_t h = std::hash<std::string>{}(t.value());
  h ^= std::hash<std::string>{}(t.datatype()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= std::hash<std::string>{}(t.language()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h ^ static_cast<std::size_t>(t.kind());
}

}  // namespace sparqlbench::rdf
