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

#include "sparqlbench/rdf/turtle.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "sparqlbench/util/text.h"

namespace sparqlbench::rdf {

namespace {

std::string code_name(TurtleError::Code code) {
  switch (code) {
    case TurtleError::Code::kSyntax: return "syntax error";
    case TurtleError::Code::kUndefinedPrefix: return "undefined prefix";
    case TurtleError::Code::kInvalidIri: return "invalid IRI";
    case TurtleError::Code::kUnsupported: return "unsupported construct";
    case TurtleError::Code::kIo: return "I/O error";
  }
  return "error";
}

struct IriParts {
  std::optional<std::string> scheme;
  std::optional<std::string> authority;
  std::string path;
  std::optional<std::string> query;
  std::optional<std::string> fragment;
};

IriParts split_iri(std::string_view s) {
  IriParts parts;
  std::size_t i = 0;
  // scheme = ALPHA *( ALPHA / DIGIT / "+" / "-" / "." ) ":"
  if (!s.empty() && std::isalpha(static_cast<unsigned char>(s[0]))) {
    std::size_t j = 1;
    while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '+' ||
                            s[j] == '-' || s[j] == '.')) {
      ++j;
    }
    if (j < s.size() && s[j] == ':') {
      parts.scheme = std::string(s.substr(0, j));
      i = j + 1;
    }
  }
  if (s.substr(i).starts_with("//")) {
    std::size_t end = s.find_first_of("/?#", i + 2);
    if (end == std::string_view::npos) end = s.size();
    parts.authority = std::string(s.substr(i + 2, end - i - 2));
    i = end;
  }
  std::size_t path_end = s.find_first_of("?#", i);
  if (path_end == std::string_view::npos) path_end = s.size();
  parts.path = std::string(s.substr(i, path_end - i));
  i = path_end;
  if (i < s.size() && s[i] == '?') {
    std::size_t end = s.find('#', i);
    if (end == std::string_view::npos) end = s.size();
    parts.query = std::string(s.substr(i + 1, end - i - 1));
    i = end;
  }
  if (i < s.size() && s[i] == '#') parts.fragment = std::string(s.substr(i + 1));
  return parts;
}

std::string remove_dot_segments(std::string input) {
  std::string output;
  while (!input.empty()) {
    if (input.starts_with("../")) {
      input.erase(0, 3);
    } else if (input.starts_with("./")) {
      input.erase(0, 2);
    } else if (input.starts_with("/./")) {
      input.replace(0, 3, "/");
    } else if (input == "/.") {
      input = "/";
    } else if (input.starts_with("/../")) {
      input.replace(0, 4, "/");
      auto pos = output.rfind('/');
      output.erase(pos == std::string::npos ? 0 : pos);
    } else if (input == "/..") {
      input = "/";
      auto pos = output.rfind('/');
      output.erase(pos == std::string::npos ? 0 : pos);
    } else if (input == "." || input == "..") {
      input.clear();
    } else {
      std::size_t start = input[0] == '/' ? 1 : 0;
      std::size_t next = input.find('/', start);
      if (next == std::string::npos) next = input.size();
      output += input.substr(0, next);
      input.erase(0, next);
    }
  }
  return output;
}

std::string join_iri(const IriParts& p) {
  std::string out;
  if (p.scheme) out += *p.scheme + ":";
  if (p.authority) out += "//" + *p.authority;
  out += p.path;
  if (p.query) out += "?" + *p.query;
  if (p.fragment) out += "#" + *p.fragment;
  return out;
}

bool is_pn_chars_base(unsigned char c) { return std::isalpha(c) || c >= 0x80; }

bool is_name_char(unsigned char c) {
  return is_pn_chars_base(c) || std::isdigit(c) || c == '_' || c == '-' || c == '.';
}

class TurtleReader {
 public:
  TurtleReader(std::string_view text, const TurtleOptions& options)
      : text_(text), options_(options) {
    if (options.base) base_ = *options.base;
  }

  ParsedTurtle run() {
    skip_ws();
    while (!at_end()) {
      statement();
      skip_ws();
    }
    ParsedTurtle out{Graph(std::move(triples_)), std::move(prefixes_)};
    out.graph.mutable_prefixes() = out.prefixes;
    return out;
  }

 private:
  [[noreturn]] void fail(TurtleError::Code code, const std::string& message) const {
    throw TurtleError(code, line_, column_, message);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_ws() {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  void expect(char c, const char* what) {
    skip_ws();
    if (peek() != c) {
      fail(TurtleError::Code::kSyntax, std::string("expected ") + what + describe_next());
    }
    advance();
  }

  std::string describe_next() const {
    if (at_end()) return " but reached end of input";
    std::string shown(text_.substr(pos_, std::min<std::size_t>(12, text_.size() - pos_)));
    auto nl = shown.find('\n');
    if (nl != std::string::npos) shown.resize(nl);
    return " near '" + shown + "'";
  }

  bool match_keyword_ci(std::string_view kw) const {
    if (text_.size() - pos_ < kw.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i) {
      if (std::toupper(static_cast<unsigned char>(text_[pos_ + i])) != kw[i]) return false;
    }
    char after = peek(kw.size());
    return !is_name_char(static_cast<unsigned char>(after)) && after != ':';
  }

  bool match_word(std::string_view word) const {
    if (text_.substr(pos_, word.size()) != word) return false;
    char after = peek(word.size());
    return !is_name_char(static_cast<unsigned char>(after)) && after != ':';
  }

  void consume(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) advance();
  }

  void statement() {
    if (peek() == '@') {
      if (text_.substr(pos_, 7) == "@prefix") {
        consume(7);
        prefix_directive();
        expect('.', "'.' after @prefix");
        return;
      }
      if (text_.substr(pos_, 5) == "@base") {
        consume(5);
        base_directive();
        expect('.', "'.' after @base");
        return;
      }
      fail(TurtleError::Code::kSyntax, "unknown directive" + describe_next());
    }
    if (match_keyword_ci("PREFIX")) {
      consume(6);
      prefix_directive();
      return;
    }
    if (match_keyword_ci("BASE")) {
      consume(4);
      base_directive();
      return;
    }
    triples();
    expect('.', "'.' at end of statement");
  }

  void prefix_directive() {
    skip_ws();
    std::string label;
    while (!at_end() && is_name_char(static_cast<unsigned char>(peek()))) label += advance();
    if (peek() != ':') fail(TurtleError::Code::kSyntax, "expected prefix name ending in ':'");
    advance();
    if (!label.empty() && (label.back() == '.' || std::isdigit(static_cast<unsigned char>(label[0])))) {
      fail(TurtleError::Code::kSyntax, "malformed prefix label '" + label + "'");
    }
    skip_ws();
    prefixes_[label] = iri_ref();
  }

  void base_directive() {
    skip_ws();
    base_ = iri_ref();
  }

  void triples() {
    skip_ws();
    if (peek() == '[') {
      Term node = blank_node_property_list();
      skip_ws();
      if (peek() != '.') predicate_object_list(node);
      return;
    }
    Term subject = subject_term();
    predicate_object_list(subject);
  }

  Term subject_term() {
    skip_ws();
    char c = peek();
    if (c == '<') return Term::iri(iri_ref());
    if (c == '_' && peek(1) == ':') return blank_label();
    if (c == '(') fail(TurtleError::Code::kUnsupported, "RDF collections are not supported");
    if (c == '"' || c == '\'' || std::isdigit(static_cast<unsigned char>(c)) || c == '+' ||
        c == '-') {
      fail(TurtleError::Code::kSyntax, "a literal cannot be a subject");
    }
    return Term::iri(prefixed_name());
  }

  void predicate_object_list(const Term& subject) {
    while (true) {
      skip_ws();
      Term predicate = verb();
      object_list(subject, predicate);
      skip_ws();
      if (peek() != ';') return;
      while (peek() == ';') {
        advance();
        skip_ws();
      }
      // Trailing ';' before '.' or ']' is allowed.
      if (peek() == '.' || peek() == ']' || at_end()) return;
    }
  }

  Term verb() {
    if (match_word("a")) {
      advance();
      return Term::iri(std::string(kRdfType));
    }
    char c = peek();
    if (c == '<') return Term::iri(iri_ref());
    if (c == '_' || c == '[' || c == '"' || c == '\'') {
      fail(TurtleError::Code::kSyntax, "predicate must be an IRI" + describe_next());
    }
    return Term::iri(prefixed_name());
  }

  void object_list(const Term& subject, const Term& predicate) {
    while (true) {
      Term obj = object_term();
      triples_.push_back({subject, predicate, std::move(obj)});
      skip_ws();
      if (peek() != ',') return;
      advance();
    }
  }

  Term object_term() {
    skip_ws();
    char c = peek();
    if (at_end()) fail(TurtleError::Code::kSyntax, "expected object but reached end of input");
    if (c == '<') return Term::iri(iri_ref());
    if (c == '_' && peek(1) == ':') return blank_label();
    if (c == '[') return blank_node_property_list();
    if (c == '(') fail(TurtleError::Code::kUnsupported, "RDF collections are not supported");
    if (c == '"' || c == '\'') return string_literal();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      return numeric_literal();
    }
    if (match_word("true")) {
      consume(4);
      return Term::boolean(true);
    }
    if (match_word("false")) {
      consume(5);
      return Term::boolean(false);
    }
    return Term::iri(prefixed_name());
  }

  Term blank_node_property_list() {
    advance();  // '['
    Term node = fresh_blank();
    skip_ws();
    if (peek() == ']') {
      advance();
      return node;
    }
    predicate_object_list(node);
    expect(']', "']' closing blank node");
    return node;
  }

  Term fresh_blank() {
    while (true) {
      std::string candidate = options_.blank_node_prefix + "genid" + std::to_string(++anon_counter_);
      if (used_labels_.insert(candidate).second) return Term::blank(candidate);
    }
  }

  Term blank_label() {
    consume(2);
    std::string label;
    while (!at_end() && is_name_char(static_cast<unsigned char>(peek()))) label += advance();
    while (!label.empty() && label.back() == '.') {
      label.pop_back();
      --pos_;
      --column_;
    }
    if (label.empty()) fail(TurtleError::Code::kSyntax, "empty blank node label");
    auto it = user_labels_.find(label);
    if (it != user_labels_.end()) return Term::blank(it->second);
    std::string assigned = options_.blank_node_prefix + label;
    for (int k = 1; !used_labels_.insert(assigned).second; ++k) {
      assigned = options_.blank_node_prefix + label + "x" + std::to_string(k);
    }
    user_labels_[label] = assigned;
    return Term::blank(assigned);
  }

  std::string iri_ref() {
    if (peek() != '<') fail(TurtleError::Code::kSyntax, "expected IRI" + describe_next());
    advance();
    std::string raw;
    while (true) {
      if (at_end()) fail(TurtleError::Code::kSyntax, "unterminated IRI");
      char c = advance();
      if (c == '>') break;
      if (c == '\\') {
        char e = at_end() ? '\0' : advance();
        if (e == 'u' || e == 'U') {
          raw += read_unicode_escape(e == 'u' ? 4 : 8);
          continue;
        }
        fail(TurtleError::Code::kInvalidIri, "invalid escape in IRI");
      }
      auto uc = static_cast<unsigned char>(c);
      if (uc <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' ||
          c == '`') {
        fail(TurtleError::Code::kInvalidIri, "illegal character in IRI <" + raw + ">");
      }
      raw += c;
    }
    return absolutize(raw);
  }

  std::string absolutize(const std::string& raw) {
    if (is_absolute_iri(raw)) return raw;
    if (base_.empty()) {
      fail(TurtleError::Code::kInvalidIri, "relative IRI <" + raw + "> without a base");
    }
    return resolve_iri(base_, raw);
  }

  std::string read_unicode_escape(int digits) {
    unsigned long cp = 0;
    for (int i = 0; i < digits; ++i) {
      char h = at_end() ? '\0' : advance();
      if (!std::isxdigit(static_cast<unsigned char>(h))) {
        fail(TurtleError::Code::kSyntax, "malformed unicode escape");
      }
      cp = cp * 16 + static_cast<unsigned long>(std::isdigit(static_cast<unsigned char>(h))
                                                    ? h - '0'
                                                    : std::tolower(static_cast<unsigned char>(h)) - 'a' + 10);
    }
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      fail(TurtleError::Code::kSyntax, "unicode escape out of range");
    }
    return util::utf8_encode(static_cast<char32_t>(cp));
  }

  std::string prefixed_name() {
    std::string prefix;
    while (!at_end() && is_name_char(static_cast<unsigned char>(peek()))) prefix += advance();
    if (peek() != ':') {
      if (prefix.empty()) fail(TurtleError::Code::kSyntax, "unexpected input" + describe_next());
      fail(TurtleError::Code::kSyntax, "unexpected word '" + prefix + "'");
    }
    advance();
    std::string local;
    while (!at_end()) {
      char c = peek();
      if (is_name_char(static_cast<unsigned char>(c)) || c == ':') {
        local += advance();
      } else if (c == '%' && std::isxdigit(static_cast<unsigned char>(peek(1))) &&
                 std::isxdigit(static_cast<unsigned char>(peek(2)))) {
        local += advance();
        local += advance();
        local += advance();
      } else if (c == '\\' && pos_ + 1 < text_.size()) {
        advance();
        local += advance();
      } else {
        break;
      }
    }
    while (!local.empty() && local.back() == '.') {
      local.pop_back();
      --pos_;
      --column_;
    }
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) {
      fail(TurtleError::Code::kUndefinedPrefix, "undefined prefix '" + prefix + ":'");
    }
    return it->second + local;
  }

  Term string_literal() {
    char quote = advance();
    bool long_form = peek() == quote && peek(1) == quote;
    if (long_form) consume(2);
    std::string lexical;
    while (true) {
      if (at_end()) fail(TurtleError::Code::kSyntax, "unterminated string literal");
      char c = peek();
      if (long_form) {
        if (c == quote && peek(1) == quote && peek(2) == quote) {
          consume(3);
          // Up to two additional quotes belong to the content.
          break;
        }
      } else {
        if (c == quote) {
          advance();
          break;
        }
        if (c == '\n' || c == '\r') fail(TurtleError::Code::kSyntax, "newline in short string");
      }
      advance();
      if (c == '\\') {
        if (at_end()) fail(TurtleError::Code::kSyntax, "unterminated escape");
        char e = advance();
        switch (e) {
          case 't': lexical += '\t'; break;
          case 'b': lexical += '\b'; break;
          case 'n': lexical += '\n'; break;
          case 'r': lexical += '\r'; break;
          case 'f': lexical += '\f'; break;
          case '"': lexical += '"'; break;
          case '\'': lexical += '\''; break;
          case '\\': lexical += '\\'; break;
          case 'u': lexical += read_unicode_escape(4); break;
          case 'U': lexical += read_unicode_escape(8); break;
          default: fail(TurtleError::Code::kSyntax, std::string("unknown escape \\") + e);
        }
      } else {
        lexical += c;
      }
    }
    if (peek() == '@') {
      advance();
      std::string lang;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) {
        lang += advance();
      }
      if (lang.empty() || !std::isalpha(static_cast<unsigned char>(lang[0]))) {
        fail(TurtleError::Code::kSyntax, "malformed language tag");
      }
      return Term::lang_literal(std::move(lexical), std::move(lang));
    }
    if (peek() == '^' && peek(1) == '^') {
      consume(2);
      std::string datatype = peek() == '<' ? iri_ref() : prefixed_name();
      return Term::typed(std::move(lexical), std::move(datatype));
    }
    return Term::literal(std::move(lexical));
  }

  Term numeric_literal() {
    std::string lexical;
    if (peek() == '+' || peek() == '-') lexical += advance();
    bool digits = false;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      lexical += advance();
      digits = true;
    }
    bool decimal = false;
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      decimal = true;
      lexical += advance();
      while (std::isdigit(static_cast<unsigned char>(peek()))) lexical += advance();
      digits = true;
    }
    bool exponent = false;
    if (digits && (peek() == 'e' || peek() == 'E')) {
      exponent = true;
      lexical += advance();
      if (peek() == '+' || peek() == '-') lexical += advance();
      if (!std::isdigit(static_cast<unsigned char>(peek()))) {
        fail(TurtleError::Code::kSyntax, "malformed exponent");
      }
      while (std::isdigit(static_cast<unsigned char>(peek()))) lexical += advance();
    }
    if (!digits) fail(TurtleError::Code::kSyntax, "malformed number");
    std::string_view type = exponent ? xsd::kDouble : decimal ? xsd::kDecimal : xsd::kInteger;
    return Term::typed(std::move(lexical), std::string(type));
  }

  std::string_view text_;
  const TurtleOptions& options_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
  std::string base_;
  PrefixMap prefixes_;
  std::vector<Triple> triples_;
  std::map<std::string, std::string> user_labels_;
  std::set<std::string> used_labels_;
  int anon_counter_ = 0;
};

std::string render_term(const Term& t, const PrefixMap& prefixes) {
  if (t.is_iri()) {
    if (t.value() == kRdfType) return "a";
    if (auto compact = compact_iri(t.value(), prefixes)) return *compact;
    return "<" + t.value() + ">";
  }
  if (t.is_literal() && !t.datatype().empty()) {
    std::string out = "\"" + escape_string(t.value()) + "\"^^";
    if (auto compact = compact_iri(t.datatype(), prefixes)) return out + *compact;
    return out + "<" + t.datatype() + ">";
  }
  return t.to_ntriples();
}

}  // namespace

TurtleError::TurtleError(Code code, std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(code_name(code) + " at line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + message),
      code_(code),
      line_(line),
      column_(column),
      detail_(message) {}

bool is_absolute_iri(std::string_view iri) { return split_iri(iri).scheme.has_value(); }

std::string resolve_iri(std::string_view base, std::string_view reference) {
  IriParts r = split_iri(reference);
  IriParts b = split_iri(base);
  IriParts t;
  if (r.scheme) {
    t = r;
    t.path = remove_dot_segments(r.path);
  } else {
    if (r.authority) {
      t.authority = r.authority;
      t.path = remove_dot_segments(r.path);
      t.query = r.query;
    } else {
      if (r.path.empty()) {
        t.path = b.path;
        t.query = r.query ? r.query : b.query;
      } else {
        if (r.path.front() == '/') {
          t.path = remove_dot_segments(r.path);
        } else {
          std::string merged;
          if (b.authority && b.path.empty()) {
            merged = "/" + r.path;
          } else {
            auto slash = b.path.rfind('/');
            merged = (slash == std::string::npos ? "" : b.path.substr(0, slash + 1)) + r.path;
          }
          t.path = remove_dot_segments(merged);
        }
        t.query = r.query;
      }
      t.authority = b.authority;
    }
    t.scheme = b.scheme;
  }
  t.fragment = r.fragment;
  return join_iri(t);
}

ParsedTurtle parse_turtle(std::string_view text, const TurtleOptions& options) {
  TurtleReader reader(text, options);
  return reader.run();
}

std::string serialize_turtle(const Graph& graph, const PrefixMap& prefixes) {
  std::ostringstream out;
  for (const auto& [label, ns] : prefixes) out << "@prefix " << label << ": <" << ns << "> .\n";
  if (!prefixes.empty()) out << "\n";
  std::vector<Triple> all = graph.triples();
  for (std::size_t i = 0; i < all.size();) {
    const Term& subject = all[i].subject;
    out << render_term(subject, prefixes);
    bool first_predicate = true;
    while (i < all.size() && all[i].subject == subject) {
      const Term& predicate = all[i].predicate;
      out << (first_predicate ? " " : " ;\n    ") << render_term(predicate, prefixes) << " ";
      first_predicate = false;
      bool first_object = true;
      while (i < all.size() && all[i].subject == subject && all[i].predicate == predicate) {
        if (!first_object) out << ", ";
        out << render_term(all[i].object, prefixes);
        first_object = false;
        ++i;
      }
    }
    out << " .\n";
  }
  return out.str();
}

Graph load_graphs(const std::vector<std::filesystem::path>& paths) {
  std::vector<std::filesystem::path> files;
  for (const auto& p : paths) {
    if (std::filesystem::is_directory(p)) {
      std::vector<std::filesystem::path> found;
      for (const auto& entry : std::filesystem::directory_iterator(p)) {
        if (entry.is_regular_file() && entry.path().extension() == ".ttl") found.push_back(entry.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(p);
    }
  }
  std::vector<Triple> merged;
  PrefixMap prefixes;
  for (std::size_t i = 0; i < files.size(); ++i) {
    std::string text;
    try {
      text = util::read_file(files[i]);
    } catch (const std::exception& e) {
      throw TurtleError(TurtleError::Code::kIo, 0, 0, e.what());
    }
    TurtleOptions options;
    options.base = "file://" + std::filesystem::absolute(files[i]).generic_string();
    if (files.size() > 1) options.blank_node_prefix = "f" + std::to_string(i) + "_";
    try {
      ParsedTurtle parsed = parse_turtle(text, options);
      std::vector<Triple> ts = parsed.graph.triples();
      merged.insert(merged.end(), ts.begin(), ts.end());
      for (const auto& [k, v] : parsed.prefixes) prefixes.emplace(k, v);
    } catch (const TurtleError& e) {
      throw TurtleError(e.code(), e.line(), e.column(), files[i].string() + ": " + e.detail());
    }
  }
  Graph graph(std::move(merged));
  graph.mutable_prefixes() = std::move(prefixes);
  return graph;
}

Graph load_graph(const std::filesystem::path& path) { return load_graphs({path}); }

}  // namespace sparqlbench::rdf
