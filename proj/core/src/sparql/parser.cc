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

#include "sparqlbench/sparql/parser.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <set>

#include "sparqlbench/rdf/turtle.h"
#include "sparqlbench/util/text.h"

namespace sparqlbench::sparql {

SyntaxError::SyntaxError(std::size_t offset, const std::string& message)
    : QueryError("syntax error at offset " + std::to_string(offset) + ": " + message),
      offset_(offset),
      detail_(message) {}

ProjectionUnbound::ProjectionUnbound(std::size_t offset, const std::string& variable)
    : SyntaxError(offset, "projected variable ?" + variable + " is not bound in the WHERE clause"),
      variable_(variable) {}

UnsupportedFeature::UnsupportedFeature(const std::string& construct)
    : QueryError("unsupported SPARQL feature: " + construct), construct_(construct) {}

UnknownPrefix::UnknownPrefix(const std::string& prefix)
    : QueryError("unknown prefix '" + prefix + ":'"), prefix_(prefix) {}

namespace {

constexpr std::size_t kMaxDepth = 64;

// Builtins and aggregates that exist in SPARQL 1.1 but are not evaluated here.
constexpr std::array<std::string_view, 55> kOtherBuiltins = {
    "LANGMATCHES", "IRI",      "URI",       "BNODE",     "RAND",      "ABS",       "CEIL",
    "FLOOR",       "ROUND",    "CONCAT",    "STRLEN",    "UCASE",     "LCASE",     "ENCODE_FOR_URI",
    "STRENDS",     "STRBEFORE", "STRAFTER", "YEAR",      "MONTH",     "DAY",       "HOURS",
    "MINUTES",     "SECONDS",  "TIMEZONE",  "TZ",        "NOW",       "UUID",      "STRUUID",
    "MD5",         "SHA1",     "SHA256",    "SHA384",    "SHA512",    "COALESCE",  "IF",
    "STRLANG",     "STRDT",    "SAMETERM",  "ISIRI",     "ISURI",     "ISBLANK",   "ISLITERAL",
    "ISNUMERIC",   "SUBSTR",   "REPLACE",   "COUNT",     "SUM",       "MIN",       "MAX",
    "AVG",         "SAMPLE",   "GROUP_CONCAT", "EXISTS", "NOT",      "IN",
};

constexpr std::array<std::string_view, 12> kUpdateOrOtherForms = {
    "CONSTRUCT", "DESCRIBE", "INSERT", "DELETE", "LOAD", "CLEAR",
    "CREATE",    "DROP",     "WITH",   "COPY",   "MOVE", "ADD",
};

bool is_other_builtin(std::string_view upper) {
  return std::find(kOtherBuiltins.begin(), kOtherBuiltins.end(), upper) != kOtherBuiltins.end();
}

enum class Tok {
  kEnd,
  kIri,
  kPrefixedName,
  kVar,
  kString,
  kLangTag,
  kInteger,
  kDecimal,
  kDouble,
  kWord,
  kPunct,
  kBlankLabel,
};

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;    // IRI body, variable name, word, punctuation, string value, number
  std::string prefix;  // prefixed names only
  std::size_t offset = 0;
};

bool is_name_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool is_name_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '-' || c >= 0x80; }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_ws();
      Token t;
      t.offset = pos_;
      if (pos_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      lex_one(t);
      out.push_back(std::move(t));
    }
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(pos_, msg); }

  char peek(std::size_t k = 0) const { return pos_ + k < text_.size() ? text_[pos_ + k] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  void lex_one(Token& t) {
    auto c = static_cast<unsigned char>(peek());
    if (c == '<') {
      if (try_iri(t)) return;
      if (peek(1) == '=') return punct(t, 2);
      return punct(t, 1);
    }
    if (c == '?' || c == '$') {
      if (is_name_char(static_cast<unsigned char>(peek(1)))) {
        ++pos_;
        t.kind = Tok::kVar;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                                       peek() == '_' || static_cast<unsigned char>(peek()) >= 0x80)) {
          t.text += text_[pos_++];
        }
        if (t.text.empty()) fail("malformed variable name");
        return;
      }
      if (c == '$') fail("'$' must start a variable");
      return punct(t, 1);
    }
    if (c == '"' || c == '\'') return string(t);
    if (c == '@') return lang_tag(t);
    if (std::isdigit(c) || (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      return number(t);
    }
    if (c == '_' && peek(1) == ':') {
      pos_ += 2;
      t.kind = Tok::kBlankLabel;
      while (pos_ < text_.size() && (is_name_char(static_cast<unsigned char>(peek())) || peek() == '.')) {
        t.text += text_[pos_++];
      }
      while (!t.text.empty() && t.text.back() == '.') {
        t.text.pop_back();
        --pos_;
      }
      if (t.text.empty()) fail("empty blank node label");
      return;
    }
    if (c == ':' || is_name_start(c)) return word_or_pname(t);
    std::string_view two = text_.substr(pos_, 2);
    if (two == "!=" || two == ">=" || two == "&&" || two == "||" || two == "^^") return punct(t, 2);
    if (std::string_view("{}().,;*=>!/|^+-[]").find(static_cast<char>(c)) != std::string_view::npos) {
      return punct(t, 1);
    }
    fail(std::string("unexpected character '") + static_cast<char>(c) + "'");
  }

  void punct(Token& t, std::size_t n) {
    t.kind = Tok::kPunct;
    t.text = std::string(text_.substr(pos_, n));
    pos_ += n;
  }

  bool try_iri(Token& t) {
    std::size_t i = pos_ + 1;
    std::string body;
    while (i < text_.size()) {
      auto c = static_cast<unsigned char>(text_[i]);
      if (c == '>') {
        t.kind = Tok::kIri;
        t.text = std::move(body);
        pos_ = i + 1;
        return true;
      }
      if (c <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' ||
          c == '`' || c == '\\') {
        return false;
      }
      body += static_cast<char>(c);
      ++i;
    }
    return false;
  }

  void lang_tag(Token& t) {
    ++pos_;
    t.kind = Tok::kLangTag;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) {
      t.text += text_[pos_++];
    }
    if (t.text.empty() || !std::isalpha(static_cast<unsigned char>(t.text[0]))) fail("malformed language tag");
  }

  void number(Token& t) {
    std::string s;
    bool decimal = false;
    bool exponent = false;
    while (std::isdigit(static_cast<unsigned char>(peek()))) s += text_[pos_++];
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      decimal = true;
      s += text_[pos_++];
      while (std::isdigit(static_cast<unsigned char>(peek()))) s += text_[pos_++];
    }
    if ((peek() == 'e' || peek() == 'E') &&
        (std::isdigit(static_cast<unsigned char>(peek(1))) ||
         ((peek(1) == '+' || peek(1) == '-') && std::isdigit(static_cast<unsigned char>(peek(2)))))) {
      exponent = true;
      s += text_[pos_++];
      if (peek() == '+' || peek() == '-') s += text_[pos_++];
      while (std::isdigit(static_cast<unsigned char>(peek()))) s += text_[pos_++];
    }
    t.kind = exponent ? Tok::kDouble : decimal ? Tok::kDecimal : Tok::kInteger;
    t.text = std::move(s);
  }

  std::string read_unicode(int digits) {
    char32_t cp = 0;
    for (int i = 0; i < digits; ++i) {
      char h = peek();
      if (!std::isxdigit(static_cast<unsigned char>(h))) fail("malformed unicode escape");
      ++pos_;
      cp = cp * 16 + static_cast<char32_t>(std::isdigit(static_cast<unsigned char>(h))
                                               ? h - '0'
                                               : std::tolower(static_cast<unsigned char>(h)) - 'a' + 10);
    }
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail("unicode escape out of range");
    return util::utf8_encode(cp);
  }

  void string(Token& t) {
    char quote = peek();
    bool long_form = peek(1) == quote && peek(2) == quote;
    pos_ += long_form ? 3 : 1;
    std::string value;
    while (true) {
      if (pos_ >= text_.size()) fail("unterminated string");
      char c = text_[pos_];
      if (long_form) {
        if (c == quote && peek(1) == quote && peek(2) == quote) {
          pos_ += 3;
          break;
        }
      } else {
        if (c == quote) {
          ++pos_;
          break;
        }
        if (c == '\n' || c == '\r') fail("newline in string");
      }
      ++pos_;
      if (c != '\\') {
        value += c;
        continue;
      }
      if (pos_ >= text_.size()) fail("unterminated escape");
      char e = text_[pos_++];
      switch (e) {
        case 't': value += '\t'; break;
        case 'b': value += '\b'; break;
        case 'n': value += '\n'; break;
        case 'r': value += '\r'; break;
        case 'f': value += '\f'; break;
        case '"': value += '"'; break;
        case '\'': value += '\''; break;
        case '\\': value += '\\'; break;
        case 'u': value += read_unicode(4); break;
        case 'U': value += read_unicode(8); break;
        default: fail(std::string("unknown escape \\") + e);
      }
    }
    t.kind = Tok::kString;
    t.text = std::move(value);
  }

  void word_or_pname(Token& t) {
    std::string word;
    while (pos_ < text_.size()) {
      auto c = static_cast<unsigned char>(peek());
      if (is_name_char(c)) {
        word += text_[pos_++];
      } else if (c == '.' && is_name_char(static_cast<unsigned char>(peek(1))) && !word.empty()) {
        word += text_[pos_++];
      } else {
        break;
      }
    }
    if (peek() != ':') {
      t.kind = Tok::kWord;
      t.text = std::move(word);
      return;
    }
    ++pos_;
    std::string local;
    while (pos_ < text_.size()) {
      auto c = static_cast<unsigned char>(peek());
      if (is_name_char(c) || c == ':' || c == '.') {
        local += text_[pos_++];
      } else if (c == '%' && std::isxdigit(static_cast<unsigned char>(peek(1))) &&
                 std::isxdigit(static_cast<unsigned char>(peek(2)))) {
        local += std::string(text_.substr(pos_, 3));
        pos_ += 3;
      } else if (c == '\\' && pos_ + 1 < text_.size() &&
                 std::string_view("_~.-!$&'()*+,;=/?#@%").find(peek(1)) != std::string_view::npos) {
        local += text_[pos_ + 1];
        pos_ += 2;
      } else {
        break;
      }
    }
    while (!local.empty() && local.back() == '.') {
      local.pop_back();
      --pos_;
    }
    t.kind = Tok::kPrefixedName;
    t.prefix = std::move(word);
    t.text = std::move(local);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, const ParseOptions& options)
      : tokens_(std::move(tokens)), options_(options) {}

  QueryAst parse() {
    QueryAst ast;
    prologue(ast);
    const Token& head = cur();
    std::string kw = head.kind == Tok::kWord ? util::to_upper(head.text) : "";
    if (kw == "SELECT") {
      next();
      select_query(ast);
    } else if (kw == "ASK") {
      next();
      ast.form = QueryAst::Form::kAsk;
      dataset_clause();
      where_clause(ast);
      solution_modifiers(ast);
    } else if (std::find(kUpdateOrOtherForms.begin(), kUpdateOrOtherForms.end(), kw) !=
               kUpdateOrOtherForms.end()) {
      throw UnsupportedFeature(kw == "CONSTRUCT" || kw == "DESCRIBE" ? kw : "SPARQL Update");
    } else {
      fail("expected SELECT or ASK");
    }
    if (is_word("VALUES")) throw UnsupportedFeature("VALUES");
    if (cur().kind != Tok::kEnd) fail("unexpected trailing input");
    validate(ast);
    return ast;
  }

 private:
  const Token& cur() const { return tokens_[pos_]; }
  const Token& ahead(std::size_t k) const {
    return tokens_[std::min(pos_ + k, tokens_.size() - 1)];
  }
  void next() {
    if (pos_ + 1 < tokens_.size()) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    std::string near;
    const Token& t = cur();
    if (t.kind == Tok::kEnd) {
      near = " at end of query";
    } else if (t.kind == Tok::kPunct || t.kind == Tok::kWord) {
      near = " near '" + t.text + "'";
    }
    throw SyntaxError(t.offset, msg + near);
  }

  bool is_punct(std::string_view p) const { return cur().kind == Tok::kPunct && cur().text == p; }
  bool is_word(std::string_view upper) const {
    return cur().kind == Tok::kWord && util::to_upper(cur().text) == upper;
  }
  bool word_at(std::size_t k, std::string_view upper) const {
    return ahead(k).kind == Tok::kWord && util::to_upper(ahead(k).text) == upper;
  }

  void expect_punct(std::string_view p) {
    if (!is_punct(p)) fail("expected '" + std::string(p) + "'");
    next();
  }

  void expect_word(std::string_view upper) {
    if (!is_word(upper)) fail("expected " + std::string(upper));
    next();
  }

  void enter() {
    if (++depth_ > kMaxDepth) fail("nesting too deep");
  }
  void leave() { --depth_; }

  // --- prologue ---

  void prologue(QueryAst& ast) {
    while (true) {
      if (is_word("PREFIX")) {
        next();
        if (cur().kind != Tok::kPrefixedName || !cur().text.empty()) fail("expected prefix name");
        std::string label = cur().prefix;
        next();
        if (cur().kind != Tok::kIri) fail("expected IRI in PREFIX declaration");
        std::string ns = absolute(cur().text);
        next();
        prologue_[label] = ns;
        ast.prologue[label] = ns;
      } else if (is_word("BASE")) {
        next();
        if (cur().kind != Tok::kIri) fail("expected IRI after BASE");
        if (!rdf::is_absolute_iri(cur().text)) fail("BASE IRI must be absolute");
        base_ = cur().text;
        ast.base = base_;
        next();
      } else {
        return;
      }
    }
  }

  std::string absolute(const std::string& iri) const {
    if (rdf::is_absolute_iri(iri)) return iri;
    if (base_.empty()) throw SyntaxError(cur().offset, "relative IRI <" + iri + "> without BASE");
    return rdf::resolve_iri(base_, iri);
  }

  std::string resolve_pname(const Token& t) const {
    auto it = prologue_.find(t.prefix);
    if (it != prologue_.end()) return it->second + t.text;
    if (options_.ambient_prefixes != nullptr) {
      auto amb = options_.ambient_prefixes->find(t.prefix);
      if (amb != options_.ambient_prefixes->end()) return amb->second + t.text;
    }
    throw UnknownPrefix(t.prefix);
  }

  // --- query forms ---

  void select_query(QueryAst& ast) {
    ast.form = QueryAst::Form::kSelect;
    if (is_word("DISTINCT")) {
      ast.distinct = true;
      next();
    } else if (is_word("REDUCED")) {
      throw UnsupportedFeature("REDUCED");
    }
    if (is_punct("*")) {
      ast.select_star = true;
      next();
    } else {
      while (true) {
        if (cur().kind == Tok::kVar) {
          projection_offsets_.push_back(cur().offset);
          ast.projection.push_back(Variable{cur().text});
          next();
        } else if (is_punct("(")) {
          projection_offsets_.push_back(cur().offset);
          ast.projection.push_back(projection_expression());
        } else {
          break;
        }
      }
      if (ast.projection.empty()) fail("expected projection");
    }
    dataset_clause();
    where_clause(ast);
    solution_modifiers(ast);
  }

  ProjectionItem projection_expression() {
    expect_punct("(");
    if (is_word("COUNT") && ahead(1).kind == Tok::kPunct && ahead(1).text == "(") {
      next();
      next();
      CountAggregate agg;
      if (is_word("DISTINCT")) {
        agg.distinct = true;
        next();
      }
      if (is_punct("*")) {
        next();
      } else if (cur().kind == Tok::kVar) {
        agg.argument = Variable{cur().text};
        next();
      } else {
        // Anything else is an expression argument; parse it to tell garbage
        // from a legitimate but unsupported construct.
        expression();
        throw UnsupportedFeature("COUNT over an expression");
      }
      expect_punct(")");
      expect_word("AS");
      if (cur().kind != Tok::kVar) fail("expected variable after AS");
      agg.alias = Variable{cur().text};
      next();
      expect_punct(")");
      return agg;
    }
    if (cur().kind == Tok::kWord) {
      std::string kw = util::to_upper(cur().text);
      if (kw == "SUM" || kw == "AVG" || kw == "MIN" || kw == "MAX" || kw == "SAMPLE" ||
          kw == "GROUP_CONCAT") {
        throw UnsupportedFeature("aggregate " + kw);
      }
    }
    expression();
    if (is_word("AS")) throw UnsupportedFeature("projection expression");
    fail("expected AS in projection expression");
  }

  void dataset_clause() {
    if (is_word("FROM")) throw UnsupportedFeature("FROM dataset clause");
  }

  void where_clause(QueryAst& ast) {
    if (is_word("WHERE")) next();
    if (!is_punct("{")) fail("expected '{' to open the WHERE clause");
    next();
    ast.where = group();
  }

  // Called after the opening '{'; consumes the closing '}'.
  GroupPattern group() {
    enter();
    GroupPattern g;
    while (true) {
      const Token& t = cur();
      if (t.kind == Tok::kEnd) fail("unterminated group pattern");
      if (is_punct("}")) {
        next();
        break;
      }
      if (is_punct(".")) {
        next();
        continue;
      }
      if (is_punct("{")) nested_group();
      if (t.kind == Tok::kWord) {
        std::string kw = util::to_upper(t.text);
        if (kw == "FILTER") {
          next();
          g.elements.push_back(PatternElement{FilterPattern{constraint()}});
          continue;
        }
        if (kw == "OPTIONAL") {
          next();
          expect_punct("{");
          g.elements.push_back(PatternElement{OptionalPattern{group()}});
          continue;
        }
        if (kw == "UNION" || kw == "MINUS" || kw == "BIND" || kw == "VALUES") {
          throw UnsupportedFeature(kw);
        }
        if (kw == "SERVICE") throw UnsupportedFeature("SERVICE (federation)");
        if (kw == "GRAPH") throw UnsupportedFeature("GRAPH");
        if (kw == "SELECT") throw UnsupportedFeature("subquery");
      }
      triples_same_subject(g);
      // A triples block ends with '.', '}' or a non-triples pattern.
      if (is_punct(".") || is_punct("}") || is_punct("{")) continue;
      if (cur().kind == Tok::kWord) {
        std::string kw = util::to_upper(cur().text);
        if (kw == "FILTER" || kw == "OPTIONAL" || kw == "UNION" || kw == "MINUS" || kw == "BIND" ||
            kw == "VALUES" || kw == "SERVICE" || kw == "GRAPH") {
          continue;
        }
      }
      fail("expected '.' or '}' after triple pattern");
    }
    leave();
    return g;
  }

  [[noreturn]] void nested_group() {
    if (word_at(1, "SELECT")) throw UnsupportedFeature("subquery");
    // Find the matching brace to see whether this is a UNION branch.
    int level = 0;
    std::size_t i = pos_;
    for (; i < tokens_.size() && tokens_[i].kind != Tok::kEnd; ++i) {
      if (tokens_[i].kind != Tok::kPunct) continue;
      if (tokens_[i].text == "{") ++level;
      if (tokens_[i].text == "}" && --level == 0) break;
    }
    if (level != 0 || i >= tokens_.size() || tokens_[i].kind == Tok::kEnd) fail("unbalanced braces");
    const Token& after = tokens_[std::min(i + 1, tokens_.size() - 1)];
    if (after.kind == Tok::kWord && util::to_upper(after.text) == "UNION") throw UnsupportedFeature("UNION");
    throw UnsupportedFeature("nested group pattern");
  }

  void triples_same_subject(GroupPattern& g) {
    PatternTerm subject = node_term("subject");
    while (true) {
      PatternTerm predicate = verb();
      while (true) {
        PatternTerm object = node_term("object");
        g.elements.push_back(PatternElement{TriplePattern{subject, predicate, std::move(object)}});
        if (!is_punct(",")) break;
        next();
      }
      if (!is_punct(";")) return;
      while (is_punct(";")) next();
      if (is_punct(".") || is_punct("}")) return;
    }
  }

  PatternTerm verb() {
    const Token& t = cur();
    PatternTerm out;
    if (t.kind == Tok::kVar) {
      out = Variable{t.text};
    } else if (t.kind == Tok::kIri) {
      out = rdf::Term::iri(absolute(t.text));
    } else if (t.kind == Tok::kPrefixedName) {
      out = rdf::Term::iri(resolve_pname(t));
    } else if (t.kind == Tok::kWord && t.text == "a") {
      out = rdf::Term::iri(std::string(rdf::kRdfType));
    } else if (is_punct("^") || is_punct("!") || is_punct("(")) {
      throw UnsupportedFeature("property path");
    } else {
      fail("expected predicate");
    }
    next();
    if (is_punct("/") || is_punct("|") || is_punct("*") || is_punct("+") || is_punct("?")) {
      throw UnsupportedFeature("property path");
    }
    return out;
  }

  PatternTerm node_term(const char* role) {
    const Token& t = cur();
    if (t.kind == Tok::kVar) {
      Variable v{t.text};
      next();
      return v;
    }
    if (t.kind == Tok::kBlankLabel) throw UnsupportedFeature("blank node in query pattern");
    if (is_punct("[")) throw UnsupportedFeature("blank node property list");
    if (is_punct("(")) throw UnsupportedFeature("collection");
    if (auto term = term_constant()) return *term;
    fail(std::string("expected ") + role);
  }

  // IRI, prefixed name, literal, number or boolean at the cursor.
  std::optional<rdf::Term> term_constant() {
    const Token& t = cur();
    switch (t.kind) {
      case Tok::kIri: {
        auto out = rdf::Term::iri(absolute(t.text));
        next();
        return out;
      }
      case Tok::kPrefixedName: {
        auto out = rdf::Term::iri(resolve_pname(t));
        next();
        return out;
      }
      case Tok::kString: {
        std::string lexical = t.text;
        next();
        if (cur().kind == Tok::kLangTag) {
          auto out = rdf::Term::lang_literal(std::move(lexical), cur().text);
          next();
          return out;
        }
        if (is_punct("^^")) {
          next();
          std::string dt;
          if (cur().kind == Tok::kIri) {
            dt = absolute(cur().text);
          } else if (cur().kind == Tok::kPrefixedName) {
            dt = resolve_pname(cur());
          } else {
            fail("expected datatype IRI");
          }
          next();
          return rdf::Term::typed(std::move(lexical), std::move(dt));
        }
        return rdf::Term::literal(std::move(lexical));
      }
      case Tok::kInteger:
      case Tok::kDecimal:
      case Tok::kDouble:
        return numeric("");
      case Tok::kWord: {
        std::string lower = util::to_lower(t.text);
        if (lower == "true" || lower == "false") {
          next();
          return rdf::Term::boolean(lower == "true");
        }
        return std::nullopt;
      }
      case Tok::kPunct:
        if ((t.text == "+" || t.text == "-") &&
            (ahead(1).kind == Tok::kInteger || ahead(1).kind == Tok::kDecimal ||
             ahead(1).kind == Tok::kDouble)) {
          std::string sign = t.text;
          next();
          return numeric(sign);
        }
        return std::nullopt;
      default:
        return std::nullopt;
    }
  }

  rdf::Term numeric(const std::string& sign) {
    const Token& t = cur();
    std::string_view dt = t.kind == Tok::kDouble    ? rdf::xsd::kDouble
                          : t.kind == Tok::kDecimal ? rdf::xsd::kDecimal
                                                    : rdf::xsd::kInteger;
    auto out = rdf::Term::typed(sign + t.text, std::string(dt));
    next();
    return out;
  }

  // --- expressions ---

  Expression constraint() {
    if (is_punct("(")) {
      next();
      Expression e = expression();
      expect_punct(")");
      return e;
    }
    if (is_word("NOT") && word_at(1, "EXISTS")) throw UnsupportedFeature("NOT EXISTS");
    if (is_word("EXISTS")) throw UnsupportedFeature("EXISTS");
    if (cur().kind == Tok::kWord) return builtin_call();
    if ((cur().kind == Tok::kIri || cur().kind == Tok::kPrefixedName) && ahead(1).kind == Tok::kPunct &&
        ahead(1).text == "(") {
      throw UnsupportedFeature("extension function call");
    }
    fail("expected constraint after FILTER");
  }

  Expression expression() {
    enter();
    Expression e = and_expression();
    while (is_punct("||")) {
      next();
      e = Expression::call(Expression::Op::kOr, {std::move(e), and_expression()});
    }
    leave();
    return e;
  }

  Expression and_expression() {
    Expression e = relational();
    while (is_punct("&&")) {
      next();
      e = Expression::call(Expression::Op::kAnd, {std::move(e), relational()});
    }
    return e;
  }

  Expression relational() {
    Expression lhs = additive();
    using Op = Expression::Op;
    std::optional<Op> op;
    if (is_punct("=")) op = Op::kEqual;
    if (is_punct("!=")) op = Op::kNotEqual;
    if (is_punct("<")) op = Op::kLess;
    if (is_punct("<=")) op = Op::kLessEqual;
    if (is_punct(">")) op = Op::kGreater;
    if (is_punct(">=")) op = Op::kGreaterEqual;
    if (!op) {
      if (is_word("IN") || (is_word("NOT") && word_at(1, "IN"))) throw UnsupportedFeature("IN");
      return lhs;
    }
    next();
    return Expression::call(*op, {std::move(lhs), additive()});
  }

  Expression additive() {
    Expression e = unary();
    if (is_punct("+") || is_punct("-") || is_punct("*") || is_punct("/")) {
      throw UnsupportedFeature("arithmetic expression");
    }
    // A signed number directly after an operand is SPARQL's additive form.
    if ((cur().kind == Tok::kInteger || cur().kind == Tok::kDecimal || cur().kind == Tok::kDouble) &&
        !cur().text.empty()) {
      fail("unexpected number");
    }
    return e;
  }

  Expression unary() {
    if (is_punct("!")) {
      next();
      enter();
      Expression inner = unary();
      leave();
      return Expression::call(Expression::Op::kNot, {std::move(inner)});
    }
    if (is_punct("-") || is_punct("+")) {
      if (ahead(1).kind == Tok::kInteger || ahead(1).kind == Tok::kDecimal ||
          ahead(1).kind == Tok::kDouble) {
        return Expression::constant_of(*term_constant());
      }
      throw UnsupportedFeature("arithmetic expression");
    }
    return primary();
  }

  Expression primary() {
    const Token& t = cur();
    if (is_punct("(")) {
      next();
      Expression e = expression();
      expect_punct(")");
      return e;
    }
    if (t.kind == Tok::kVar) {
      Expression e = Expression::var(t.text);
      next();
      return e;
    }
    if ((t.kind == Tok::kIri || t.kind == Tok::kPrefixedName) && ahead(1).kind == Tok::kPunct &&
        ahead(1).text == "(") {
      throw UnsupportedFeature("extension function call");
    }
    if (t.kind == Tok::kWord) {
      std::string lower = util::to_lower(t.text);
      if (lower != "true" && lower != "false") return builtin_call();
    }
    if (auto term = term_constant()) return Expression::constant_of(std::move(*term));
    fail("expected expression");
  }

  std::vector<Expression> call_arguments(std::size_t min, std::size_t max, const std::string& name) {
    expect_punct("(");
    std::vector<Expression> args;
    if (!is_punct(")")) {
      args.push_back(expression());
      while (is_punct(",")) {
        next();
        args.push_back(expression());
      }
    }
    expect_punct(")");
    if (args.size() < min || args.size() > max) fail("wrong number of arguments to " + name);
    return args;
  }

  Expression builtin_call() {
    using Op = Expression::Op;
    std::string name = util::to_upper(cur().text);
    if (name == "NOT" && word_at(1, "EXISTS")) throw UnsupportedFeature("NOT EXISTS");
    if (name == "EXISTS") throw UnsupportedFeature("EXISTS");
    bool call_follows = ahead(1).kind == Tok::kPunct && ahead(1).text == "(";
    if (name == "BOUND") {
      next();
      expect_punct("(");
      if (cur().kind != Tok::kVar) fail("BOUND expects a variable");
      Expression e = Expression::var(cur().text);
      e.op = Op::kBound;
      next();
      expect_punct(")");
      return e;
    }
    static const std::array<std::pair<std::string_view, Op>, 6> kCalls = {{
        {"STR", Op::kStr},
        {"LANG", Op::kLang},
        {"DATATYPE", Op::kDatatype},
        {"REGEX", Op::kRegex},
        {"CONTAINS", Op::kContains},
        {"STRSTARTS", Op::kStrStarts},
    }};
    for (const auto& [word, op] : kCalls) {
      if (name != word) continue;
      next();
      auto [lo, hi] = arity(op);
      return Expression::call(op, call_arguments(lo, hi, name));
    }
    if (is_other_builtin(name) && (call_follows || name == "NOW" || name == "RAND")) {
      throw UnsupportedFeature("function " + name);
    }
    fail("unknown function or keyword '" + cur().text + "'");
  }

  // --- solution modifiers ---

  void solution_modifiers(QueryAst& ast) {
    if (is_word("GROUP")) {
      next();
      expect_word("BY");
      std::vector<Variable> vars;
      while (true) {
        if (cur().kind == Tok::kVar) {
          vars.push_back(Variable{cur().text});
          next();
        } else if (is_punct("(") || (cur().kind == Tok::kWord && !is_word("HAVING") &&
                                      !is_word("ORDER") && !is_word("LIMIT") && !is_word("OFFSET") &&
                                      !is_word("VALUES"))) {
          throw UnsupportedFeature("GROUP BY expression");
        } else {
          break;
        }
      }
      if (vars.empty()) fail("expected variable after GROUP BY");
      ast.group_by = std::move(vars);
    }
    if (is_word("HAVING")) throw UnsupportedFeature("HAVING");
    if (is_word("ORDER")) {
      next();
      expect_word("BY");
      while (true) {
        if (is_word("ASC") || is_word("DESC")) {
          bool asc = is_word("ASC");
          next();
          if (!is_punct("(")) fail("expected '(' after ASC/DESC");
          next();
          Expression e = expression();
          expect_punct(")");
          ast.order_by.push_back({std::move(e), asc});
        } else if (cur().kind == Tok::kVar) {
          ast.order_by.push_back({Expression::var(cur().text), true});
          next();
        } else if (is_punct("(")) {
          next();
          Expression e = expression();
          expect_punct(")");
          ast.order_by.push_back({std::move(e), true});
        } else if (cur().kind == Tok::kWord && !is_word("LIMIT") && !is_word("OFFSET") &&
                   !is_word("VALUES")) {
          ast.order_by.push_back({builtin_call(), true});
        } else {
          break;
        }
      }
      if (ast.order_by.empty()) fail("expected ORDER BY condition");
    }
    for (int i = 0; i < 2; ++i) {
      if (is_word("LIMIT") && !ast.limit) {
        next();
        ast.limit = unsigned_integer("LIMIT");
      } else if (is_word("OFFSET") && !ast.offset) {
        next();
        ast.offset = unsigned_integer("OFFSET");
      }
    }
  }

  std::uint64_t unsigned_integer(const char* what) {
    if (cur().kind != Tok::kInteger) fail(std::string("expected integer after ") + what);
    std::uint64_t value = 0;
    const std::string& s = cur().text;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail(std::string(what) + " value out of range");
    next();
    return value;
  }

  // --- validation ---

  void validate(const QueryAst& ast) const {
    if (ast.form != QueryAst::Form::kSelect) return;
    std::vector<Variable> bound = pattern_variables(ast.where);
    auto is_bound = [&bound](const Variable& v) {
      return std::find(bound.begin(), bound.end(), v) != bound.end();
    };
    if (ast.select_star) {
      if (ast.group_by) throw SyntaxError(0, "SELECT * is not allowed with GROUP BY");
      return;
    }
    bool aggregate = ast.has_aggregate();
    std::set<std::string> names;
    for (std::size_t i = 0; i < ast.projection.size(); ++i) {
      std::size_t offset = i < projection_offsets_.size() ? projection_offsets_[i] : 0;
      const ProjectionItem& item = ast.projection[i];
      if (const auto* v = std::get_if<Variable>(&item)) {
        if (aggregate) {
          if (!ast.group_by) {
            throw SyntaxError(offset, "variable ?" + v->name + " projected alongside an aggregate without GROUP BY");
          }
          if (std::find(ast.group_by->begin(), ast.group_by->end(), *v) == ast.group_by->end()) {
            throw SyntaxError(offset, "variable ?" + v->name + " is not a GROUP BY key");
          }
        }
        if (options_.strict_projection && !is_bound(*v)) throw ProjectionUnbound(offset, v->name);
        if (!names.insert(v->name).second) throw SyntaxError(offset, "duplicate projection ?" + v->name);
      } else {
        const auto& agg = std::get<CountAggregate>(item);
        if (agg.argument && options_.strict_projection && !is_bound(*agg.argument)) {
          throw ProjectionUnbound(offset, agg.argument->name);
        }
        if (is_bound(agg.alias)) {
          throw SyntaxError(offset, "alias ?" + agg.alias.name + " is already bound in the WHERE clause");
        }
        if (!names.insert(agg.alias.name).second) {
          throw SyntaxError(offset, "duplicate projection ?" + agg.alias.name);
        }
      }
    }
    if (ast.group_by && !aggregate) {
      for (const ProjectionItem& item : ast.projection) {
        const auto& v = std::get<Variable>(item);
        if (std::find(ast.group_by->begin(), ast.group_by->end(), v) == ast.group_by->end()) {
          throw SyntaxError(0, "variable ?" + v.name + " is not a GROUP BY key");
        }
      }
    }
  }

  std::vector<Token> tokens_;
  const ParseOptions& options_;
  std::size_t pos_ = 0;
  std::size_t depth_ = 0;
  rdf::PrefixMap prologue_;
  std::string base_;
  std::vector<std::size_t> projection_offsets_;
};

// --- serialization ---

std::string term_text(const rdf::Term& t) {
  if (t.is_iri()) return "<" + t.value() + ">";
  return t.to_ntriples();
}

std::string pattern_text(const PatternTerm& t) {
  if (const auto* v = std::get_if<Variable>(&t)) return "?" + v->name;
  return term_text(std::get<rdf::Term>(t));
}

void write_group(const GroupPattern& g, std::string& out) {
  out += "{";
  for (const PatternElement& el : g.elements) {
    out += " ";
    if (const auto* tp = std::get_if<TriplePattern>(&el.node)) {
      out += pattern_text(tp->subject) + " " + pattern_text(tp->predicate) + " " +
             pattern_text(tp->object) + " .";
    } else if (const auto* f = std::get_if<FilterPattern>(&el.node)) {
      out += "FILTER (" + serialize_expression(f->condition) + ")";
    } else {
      out += "OPTIONAL ";
      write_group(std::get<OptionalPattern>(el.node).group, out);
    }
  }
  out += " }";
}

const char* call_name(Expression::Op op) {
  using Op = Expression::Op;
  switch (op) {
    case Op::kStr: return "STR";
    case Op::kLang: return "LANG";
    case Op::kDatatype: return "DATATYPE";
    case Op::kRegex: return "REGEX";
    case Op::kContains: return "CONTAINS";
    case Op::kStrStarts: return "STRSTARTS";
    default: return nullptr;
  }
}

const char* infix_name(Expression::Op op) {
  using Op = Expression::Op;
  switch (op) {
    case Op::kEqual: return "=";
    case Op::kNotEqual: return "!=";
    case Op::kLess: return "<";
    case Op::kLessEqual: return "<=";
    case Op::kGreater: return ">";
    case Op::kGreaterEqual: return ">=";
    case Op::kAnd: return "&&";
    case Op::kOr: return "||";
    default: return nullptr;
  }
}

}  // namespace

std::string serialize_expression(const Expression& e) {
  using Op = Expression::Op;
  switch (e.op) {
    case Op::kVariable:
      return "?" + e.variable;
    case Op::kConstant:
      return term_text(e.constant);
    case Op::kBound:
      return "BOUND(?" + e.variable + ")";
    case Op::kNot:
      return "!(" + serialize_expression(e.args.at(0)) + ")";
    default:
      break;
  }
  if (const char* infix = infix_name(e.op)) {
    return "(" + serialize_expression(e.args.at(0)) + " " + infix + " " + serialize_expression(e.args.at(1)) + ")";
  }
  std::string out = call_name(e.op);
  out += "(";
  for (std::size_t i = 0; i < e.args.size(); ++i) {
    if (i > 0) out += ", ";
    out += serialize_expression(e.args[i]);
  }
  return out + ")";
}

std::string serialize_query(const QueryAst& ast) {
  std::string out;
  if (ast.base) out += "BASE <" + *ast.base + ">\n";
  for (const auto& [label, ns] : ast.prologue) out += "PREFIX " + label + ": <" + ns + ">\n";
  if (ast.form == QueryAst::Form::kAsk) {
    out += "ASK WHERE ";
  } else {
    out += "SELECT ";
    if (ast.distinct) out += "DISTINCT ";
    if (ast.select_star) {
      out += "* ";
    } else {
      for (const ProjectionItem& item : ast.projection) {
        if (const auto* v = std::get_if<Variable>(&item)) {
          out += "?" + v->name + " ";
        } else {
          const auto& agg = std::get<CountAggregate>(item);
          out += "(COUNT(";
          if (agg.distinct) out += "DISTINCT ";
          out += agg.argument ? "?" + agg.argument->name : "*";
          out += ") AS ?" + agg.alias.name + ") ";
        }
      }
    }
    out += "WHERE ";
  }
  write_group(ast.where, out);
  if (ast.group_by) {
    out += " GROUP BY";
    for (const Variable& v : *ast.group_by) out += " ?" + v.name;
  }
  if (!ast.order_by.empty()) {
    out += " ORDER BY";
    for (const OrderCondition& c : ast.order_by) {
      out += c.ascending ? " ASC(" : " DESC(";
      out += serialize_expression(c.expression) + ")";
    }
  }
  if (ast.limit) out += " LIMIT " + std::to_string(*ast.limit);
  if (ast.offset) out += " OFFSET " + std::to_string(*ast.offset);
  return out;
}

QueryAst parse_query(std::string_view text, const ParseOptions& options) {
  Lexer lexer(text);
  Parser parser(lexer.run(), options);
  return parser.parse();
}

}  // namespace sparqlbench::sparql
