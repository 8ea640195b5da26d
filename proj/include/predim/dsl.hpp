// Copyright 2026 The Authors.
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

// Declaration language for towers, structures and build tasks.
//
//   trans t1 witness [3, 4] seed 5;
//   alg r poly "x^2 - t1" in [1, 2];
//   point a = "t1 + 1" colour p;
//   task densify a b 2 colour p;
//   task realize over a { trans y witness [5, 6]; point y = "y" colour p; };
//   task scenario dp-rank k 2 len 3 window 2;
//   option seed 7;
//
// Comments run from '#' or '//' to the end of the line. Inside `alg`, the
// new root is written `x` (or by its own name).

#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "predim/structure.hpp"

namespace predim::dsl {

inline constexpr std::size_t kMaxNesting = 200;
inline constexpr long kMaxExponent = 64;
inline constexpr std::size_t kMaxNodes = 4096;

// ---------------------------------------------------------------------------
// Expressions.

struct Expr {
  enum class Kind { Number, Name, Add, Sub, Mul, Div, Neg, Pow };
  Kind kind = Kind::Number;
  Rational number;
  std::string name;
  long exponent = 0;
  std::vector<Expr> args;
  SourcePos pos;
};

class ExprParser {
 public:
  ExprParser(std::string_view text, SourcePos origin) : text_(text), origin_(origin) {}

  Expr parse() {
    Expr e = sum(0);
    skip();
    if (i_ != text_.size()) fail("unexpected '" + std::string(1, text_[i_]) + "' in expression");
    return e;
  }

 private:
  SourcePos here() const { return {origin_.line, origin_.column + i_}; }
  [[noreturn]] void fail(const std::string& msg) const { throw Error(ErrorKind::SyntaxError, msg, here()); }

  void skip() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < text_.size() && text_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  Expr binary(Expr::Kind k, Expr a, Expr b, SourcePos p) {
    if (++nodes_ > kMaxNodes) fail("expression too long");
    Expr e;
    e.kind = k;
    e.pos = p;
    e.args.push_back(std::move(a));
    e.args.push_back(std::move(b));
    return e;
  }

  Expr sum(std::size_t depth) {
    Expr e = product(depth);
    while (true) {
      SourcePos p = (skip(), here());
      if (eat('+')) {
        e = binary(Expr::Kind::Add, std::move(e), product(depth), p);
      } else if (eat('-')) {
        e = binary(Expr::Kind::Sub, std::move(e), product(depth), p);
      } else {
        return e;
      }
    }
  }

  Expr product(std::size_t depth) {
    Expr e = unary(depth);
    while (true) {
      SourcePos p = (skip(), here());
      if (eat('*')) {
        e = binary(Expr::Kind::Mul, std::move(e), unary(depth), p);
      } else if (eat('/')) {
        e = binary(Expr::Kind::Div, std::move(e), unary(depth), p);
      } else {
        return e;
      }
    }
  }

  Expr unary(std::size_t depth) {
    if (depth > kMaxNesting) fail("expression nested too deeply");
    SourcePos p = (skip(), here());
    if (eat('-')) {
      Expr e;
      e.kind = Expr::Kind::Neg;
      e.pos = p;
      e.args.push_back(unary(depth + 1));
      return e;
    }
    if (eat('+')) return unary(depth + 1);
    return power(depth);
  }

  Expr power(std::size_t depth) {
    Expr base = atom(depth);
    SourcePos p = (skip(), here());
    if (!eat('^')) return base;
    skip();
    bool negative = eat('-');
    skip();
    std::size_t start = i_;
    while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) ++i_;
    if (start == i_) fail("exponent must be an integer");
    if (i_ - start > 3) fail("exponent too large");
    long n = std::stol(std::string(text_.substr(start, i_ - start)));
    if (n > kMaxExponent) fail("exponent too large");
    Expr e;
    e.kind = Expr::Kind::Pow;
    e.pos = p;
    e.exponent = negative ? -n : n;
    e.args.push_back(std::move(base));
    return e;
  }

  Expr atom(std::size_t depth) {
    skip();
    SourcePos p = here();
    if (i_ >= text_.size()) fail("expression ended early");
    char c = text_[i_];
    if (c == '(') {
      ++i_;
      Expr e = sum(depth + 1);
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i_;
      while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) ++i_;
      if (i_ < text_.size() && text_[i_] == '.') {
        ++i_;
        while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) ++i_;
      }
      auto q = parse_rational(text_.substr(start, i_ - start));
      if (!q) {
        i_ = start;
        fail("malformed number");
      }
      Expr e;
      e.kind = Expr::Kind::Number;
      e.number = *q;
      e.pos = p;
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i_;
      while (i_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[i_])) || text_[i_] == '_')) ++i_;
      Expr e;
      e.kind = Expr::Kind::Name;
      e.name = std::string(text_.substr(start, i_ - start));
      e.pos = p;
      return e;
    }
    fail("unexpected '" + std::string(1, c) + "' in expression");
  }

  std::string_view text_;
  SourcePos origin_;
  std::size_t i_ = 0;
  std::size_t nodes_ = 0;
};

inline void collect_names(const Expr& e, std::vector<const Expr*>& out) {
  if (e.kind == Expr::Kind::Name) out.push_back(&e);
  for (const auto& a : e.args) collect_names(a, out);
}

/// Evaluates into any value type with ring operations; `leaf` maps names
/// and `constant` maps rationals.
template <class V, class Leaf, class Constant, class Divide, class Power>
V evaluate(const Expr& e, Leaf&& leaf, Constant&& constant, Divide&& divide, Power&& power) {
  auto rec = [&](const Expr& x) { return evaluate<V>(x, leaf, constant, divide, power); };
  switch (e.kind) {
    case Expr::Kind::Number: return constant(e.number);
    case Expr::Kind::Name: return leaf(e);
    case Expr::Kind::Add: return rec(e.args[0]) + rec(e.args[1]);
    case Expr::Kind::Sub: return rec(e.args[0]) - rec(e.args[1]);
    case Expr::Kind::Mul: return rec(e.args[0]) * rec(e.args[1]);
    case Expr::Kind::Div: return divide(rec(e.args[0]), rec(e.args[1]), e);
    case Expr::Kind::Neg: return -rec(e.args[0]);
    case Expr::Kind::Pow: return power(rec(e.args[0]), e.exponent, e);
  }
  throw Error(ErrorKind::Internal, "bad expression node");
}

// ---------------------------------------------------------------------------
// Manifest.

struct TransDecl {
  std::string name;
  Rational lo, hi;
  std::optional<std::uint64_t> seed;
  SourcePos pos;
};

struct AlgDecl {
  std::string name;
  std::string poly;
  Rational lo, hi;
  SourcePos pos;
  SourcePos poly_pos;
};

struct PointDecl {
  std::string name;
  std::string expr;
  bool coloured = false;
  SourcePos pos;
  SourcePos expr_pos;
};

using Decl = std::variant<TransDecl, AlgDecl, PointDecl>;

struct TaskDecl {
  std::string kind;               // realize, densify, scenario
  std::vector<std::string> over;  // realize
  std::vector<Decl> body;         // realize
  std::string alpha, beta;        // densify
  std::uint64_t count = 0;        // densify
  bool coloured = false;          // densify
  std::string scenario;           // scenario
  std::vector<std::pair<std::string, std::uint64_t>> params;  // scenario
  SourcePos pos;
};

struct OptionDecl {
  std::string key, value;
  SourcePos pos;
};

using Statement = std::variant<TransDecl, AlgDecl, PointDecl, TaskDecl, OptionDecl>;

struct Manifest {
  std::vector<Statement> statements;

  std::vector<Decl> declarations() const {
    std::vector<Decl> out;
    for (const auto& s : statements) {
      if (const auto* t = std::get_if<TransDecl>(&s)) out.emplace_back(*t);
      if (const auto* a = std::get_if<AlgDecl>(&s)) out.emplace_back(*a);
      if (const auto* p = std::get_if<PointDecl>(&s)) out.emplace_back(*p);
    }
    return out;
  }
  std::vector<TaskDecl> tasks() const {
    std::vector<TaskDecl> out;
    for (const auto& s : statements)
      if (const auto* t = std::get_if<TaskDecl>(&s)) out.push_back(*t);
    return out;
  }
  std::optional<std::string> option(const std::string& key) const {
    std::optional<std::string> v;
    for (const auto& s : statements)
      if (const auto* o = std::get_if<OptionDecl>(&s); o && o->key == key) v = o->value;
    return v;
  }
};

// Equality ignores source positions.
inline bool operator==(const TransDecl& a, const TransDecl& b) {
  return a.name == b.name && a.lo == b.lo && a.hi == b.hi && a.seed == b.seed;
}
inline bool operator==(const AlgDecl& a, const AlgDecl& b) {
  return a.name == b.name && a.poly == b.poly && a.lo == b.lo && a.hi == b.hi;
}
inline bool operator==(const PointDecl& a, const PointDecl& b) {
  return a.name == b.name && a.expr == b.expr && a.coloured == b.coloured;
}
inline bool operator==(const TaskDecl& a, const TaskDecl& b) {
  return a.kind == b.kind && a.over == b.over && a.body == b.body && a.alpha == b.alpha && a.beta == b.beta &&
         a.count == b.count && a.coloured == b.coloured && a.scenario == b.scenario && a.params == b.params;
}
inline bool operator==(const OptionDecl& a, const OptionDecl& b) { return a.key == b.key && a.value == b.value; }
inline bool operator==(const Manifest& a, const Manifest& b) { return a.statements == b.statements; }

// ---------------------------------------------------------------------------
// Lexer.

struct Token {
  enum class Kind { Ident, Number, String, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  SourcePos pos;
};

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&]() {
    if (src[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') advance();
      continue;
    }
    SourcePos pos{line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < src.size() && ident_char(src[i])) advance();
      out.push_back({Token::Kind::Ident, std::string(src.substr(start, i - start)), pos});
    } else if (std::isdigit(static_cast<unsigned char>(c)) || (c == '-' && i + 1 < src.size() &&
                                                                 std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t start = i;
      advance();
      while (i < src.size() && (std::isdigit(static_cast<unsigned char>(src[i])) || src[i] == '.' || src[i] == '/'))
        advance();
      out.push_back({Token::Kind::Number, std::string(src.substr(start, i - start)), pos});
    } else if (c == '"') {
      advance();
      std::size_t start = i;
      while (i < src.size() && src[i] != '"' && src[i] != '\n') advance();
      if (i >= src.size() || src[i] != '"') throw Error(ErrorKind::SyntaxError, "unterminated string", pos);
      out.push_back({Token::Kind::String, std::string(src.substr(start, i - start)), pos});
      advance();
    } else if (std::string_view(";,[]{}=").find(c) != std::string_view::npos) {
      out.push_back({Token::Kind::Punct, std::string(1, c), pos});
      advance();
    } else {
      throw Error(ErrorKind::SyntaxError, "unexpected character '" + std::string(1, c) + "'", pos);
    }
  }
  out.push_back({Token::Kind::End, "", {line, col}});
  return out;
}

// ---------------------------------------------------------------------------
// Parser.

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  Manifest parse() {
    Manifest m;
    while (peek().kind != Token::Kind::End) m.statements.push_back(statement());
    return m;
  }

 private:
  const Token& peek() const { return toks_[k_]; }
  const Token& next() {
    const Token& t = toks_[k_];
    if (t.kind != Token::Kind::End) ++k_;
    return t;
  }
  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    std::string got = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
    throw Error(ErrorKind::SyntaxError, msg + ", got " + got, t.pos);
  }
  bool is(const char* text) const {
    return (peek().kind == Token::Kind::Ident || peek().kind == Token::Kind::Punct) && peek().text == text;
  }
  void expect(const char* text) {
    if (!is(text)) fail(peek(), std::string("expected '") + text + "'");
    next();
  }
  std::string ident(const char* what) {
    if (peek().kind != Token::Kind::Ident) fail(peek(), std::string("expected ") + what);
    return next().text;
  }
  Rational number() {
    const Token& t = peek();
    if (t.kind != Token::Kind::Number) fail(t, "expected a rational number");
    auto q = parse_rational(t.text);
    if (!q) throw Error(ErrorKind::SyntaxError, "malformed rational '" + t.text + "'", t.pos);
    next();
    return *q;
  }
  std::uint64_t natural() {
    const Token& t = peek();
    if (t.kind != Token::Kind::Number || t.text.find_first_not_of("0123456789") != std::string::npos ||
        t.text.size() > 18)
      fail(t, "expected a non-negative integer");
    next();
    return std::stoull(t.text);
  }
  std::pair<Rational, Rational> interval() {
    SourcePos p = peek().pos;
    expect("[");
    Rational lo = number();
    expect(",");
    Rational hi = number();
    expect("]");
    if (!(lo < hi)) throw Error(ErrorKind::SyntaxError, "interval needs lo < hi", p);
    return {lo, hi};
  }
  void colour_flag(bool& coloured) {
    if (is("colour") || is("color")) {
      next();
      if (!is("p")) fail(peek(), "expected colour 'p'");
      next();
      coloured = true;
    }
  }

  Decl declaration() {
    const Token& t = peek();
    if (is("trans")) {
      next();
      TransDecl d;
      d.pos = t.pos;
      d.name = ident("generator name");
      expect("witness");
      std::tie(d.lo, d.hi) = interval();
      if (is("seed")) {
        next();
        d.seed = natural();
      }
      expect(";");
      return d;
    }
    if (is("alg")) {
      next();
      AlgDecl d;
      d.pos = t.pos;
      d.name = ident("generator name");
      expect("poly");
      if (peek().kind != Token::Kind::String) fail(peek(), "expected quoted polynomial");
      d.poly_pos = {peek().pos.line, peek().pos.column + 1};
      d.poly = next().text;
      expect("in");
      std::tie(d.lo, d.hi) = interval();
      expect(";");
      return d;
    }
    if (is("point")) {
      next();
      PointDecl d;
      d.pos = t.pos;
      d.name = ident("point name");
      expect("=");
      if (peek().kind != Token::Kind::String) fail(peek(), "expected quoted expression");
      d.expr_pos = {peek().pos.line, peek().pos.column + 1};
      d.expr = next().text;
      colour_flag(d.coloured);
      expect(";");
      return d;
    }
    fail(t, "expected 'trans', 'alg' or 'point'");
  }

  Statement statement() {
    if (is("trans") || is("alg") || is("point")) {
      return std::visit([](auto&& d) -> Statement { return d; }, declaration());
    }
    const Token& t = peek();
    if (is("option")) {
      next();
      OptionDecl o;
      o.pos = t.pos;
      o.key = ident("option name");
      const Token& v = peek();
      if (v.kind != Token::Kind::Ident && v.kind != Token::Kind::Number && v.kind != Token::Kind::String)
        fail(v, "expected option value");
      o.value = next().text;
      expect(";");
      return o;
    }
    if (is("task")) {
      next();
      TaskDecl d;
      d.pos = t.pos;
      d.kind = ident("task kind");
      if (d.kind == "realize") {
        if (is("over")) {
          next();
          d.over.push_back(ident("point name"));
          while (is(",")) {
            next();
            d.over.push_back(ident("point name"));
          }
        }
        expect("{");
        while (!is("}")) {
          if (peek().kind == Token::Kind::End) fail(peek(), "expected '}'");
          d.body.push_back(declaration());
        }
        expect("}");
        if (is(";")) next();
        return d;
      }
      if (d.kind == "densify") {
        d.alpha = ident("point name");
        d.beta = ident("point name");
        d.count = natural();
        colour_flag(d.coloured);
        expect(";");
        return d;
      }
      if (d.kind == "scenario") {
        d.scenario = ident("scenario name");
        while (peek().kind == Token::Kind::Ident) {
          std::string key = next().text;
          d.params.emplace_back(key, natural());
        }
        expect(";");
        return d;
      }
      throw Error(ErrorKind::SyntaxError, "unknown task '" + d.kind + "'", t.pos);
    }
    fail(t, "expected a statement");
  }

  std::vector<Token> toks_;
  std::size_t k_ = 0;
};

// ---------------------------------------------------------------------------
// Validation: names and obvious invariant violations.

class Scope {
 public:
  void check_generator(const std::string& name, SourcePos pos) {
    if (!generators_.insert(name).second)
      throw Error(ErrorKind::DuplicateName, "generator '" + name + "' declared twice", pos);
  }
  void check_point(const std::string& name, SourcePos pos) {
    if (!points_.insert(name).second)
      throw Error(ErrorKind::DuplicateName, "point '" + name + "' declared twice", pos);
  }
  bool generator(const std::string& n) const { return generators_.count(n) > 0; }
  bool point(const std::string& n) const { return points_.count(n) > 0; }
  void forget_points() { points_.clear(); }

 private:
  std::set<std::string> generators_, points_;
};

inline void validate_decl(const Decl& d, Scope& scope) {
  if (const auto* t = std::get_if<TransDecl>(&d)) {
    scope.check_generator(t->name, t->pos);
  } else if (const auto* a = std::get_if<AlgDecl>(&d)) {
    Expr e = ExprParser(a->poly, a->poly_pos).parse();
    std::vector<const Expr*> names;
    collect_names(e, names);
    for (const auto* n : names) {
      if (n->name == a->name || (n->name == "x" && !scope.generator("x"))) continue;
      if (!scope.generator(n->name))
        throw Error(ErrorKind::UnknownIdentifier, "unknown generator '" + n->name + "'", n->pos);
    }
    scope.check_generator(a->name, a->pos);
  } else {
    const auto& p = std::get<PointDecl>(d);
    Expr e = ExprParser(p.expr, p.expr_pos).parse();
    std::vector<const Expr*> names;
    collect_names(e, names);
    for (const auto* n : names)
      if (!scope.generator(n->name))
        throw Error(ErrorKind::UnknownIdentifier, "unknown generator '" + n->name + "'", n->pos);
    if (p.coloured && names.empty())
      throw Error(ErrorKind::InvariantViolation,
                  "rule: rational constants are never coloured (point '" + p.name + "')", p.pos);
    scope.check_point(p.name, p.pos);
  }
}

inline Manifest parse_manifest(std::string_view text) {
  Manifest m = Parser(text).parse();
  Scope scope;
  for (const auto& s : m.statements) {
    if (const auto* t = std::get_if<TaskDecl>(&s)) {
      if (t->kind != "realize") continue;
      Scope inner = scope;
      inner.forget_points();
      for (const auto& n : t->over) inner.check_point(n, t->pos);
      for (const auto& d : t->body) validate_decl(d, inner);
      // Generators of the block stay visible to later tasks.
      for (const auto& d : t->body) {
        if (const auto* g = std::get_if<TransDecl>(&d)) scope.check_generator(g->name, g->pos);
        if (const auto* g = std::get_if<AlgDecl>(&d)) scope.check_generator(g->name, g->pos);
      }
      continue;
    }
    if (std::holds_alternative<OptionDecl>(s)) continue;
    std::visit(
        [&](const auto& d) {
          using D = std::decay_t<decltype(d)>;
          if constexpr (!std::is_same_v<D, TaskDecl> && !std::is_same_v<D, OptionDecl>) validate_decl(Decl(d), scope);
        },
        s);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Pretty printing.

inline std::string print_interval(const Rational& lo, const Rational& hi) {
  return "[" + lo.get_str() + ", " + hi.get_str() + "]";
}

inline std::string print_decl(const Decl& d) {
  if (const auto* t = std::get_if<TransDecl>(&d)) {
    std::string s = "trans " + t->name + " witness " + print_interval(t->lo, t->hi);
    if (t->seed) s += " seed " + std::to_string(*t->seed);
    return s + ";";
  }
  if (const auto* a = std::get_if<AlgDecl>(&d))
    return "alg " + a->name + " poly \"" + a->poly + "\" in " + print_interval(a->lo, a->hi) + ";";
  const auto& p = std::get<PointDecl>(d);
  return "point " + p.name + " = \"" + p.expr + "\"" + (p.coloured ? " colour p" : "") + ";";
}

inline std::string pretty_print(const Manifest& m) {
  std::ostringstream os;
  for (const auto& s : m.statements) {
    if (const auto* t = std::get_if<TaskDecl>(&s)) {
      os << "task " << t->kind;
      if (t->kind == "realize") {
        if (!t->over.empty()) {
          os << " over ";
          for (std::size_t i = 0; i < t->over.size(); ++i) os << (i ? ", " : "") << t->over[i];
        }
        os << " {\n";
        for (const auto& d : t->body) os << "  " << print_decl(d) << "\n";
        os << "};\n";
      } else if (t->kind == "densify") {
        os << " " << t->alpha << " " << t->beta << " " << t->count << (t->coloured ? " colour p" : "") << ";\n";
      } else {
        os << " " << t->scenario;
        for (const auto& [k, v] : t->params) os << " " << k << " " << v;
        os << ";\n";
      }
    } else if (const auto* o = std::get_if<OptionDecl>(&s)) {
      bool bare = !o->value.empty() && o->value.find_first_of(" \t;,[]{}=#\"/") == std::string::npos &&
                  (std::isalnum(static_cast<unsigned char>(o->value[0])) || o->value[0] == '_' || o->value[0] == '-');
      os << "option " << o->key << " " << (bare ? o->value : "\"" + o->value + "\"") << ";\n";
    } else {
      os << std::visit([](const auto& d) -> std::string {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, TransDecl> || std::is_same_v<D, AlgDecl> || std::is_same_v<D, PointDecl>)
          return print_decl(Decl(d));
        return "";
      }, s) << "\n";
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Building towers and structures.

inline FieldElement eval_element(const FieldTower::Ptr& tower, const std::string& text, SourcePos pos) {
  Expr e = ExprParser(text, pos).parse();
  return evaluate<FieldElement>(
      e,
      [&](const Expr& n) {
        if (!tower->find(n.name)) throw Error(ErrorKind::UnknownIdentifier, "unknown generator '" + n.name + "'", n.pos);
        return FieldElement::generator(tower, n.name);
      },
      [&](const Rational& q) { return FieldElement(tower, q); },
      [&](const FieldElement& a, const FieldElement& b, const Expr& at) {
        if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero", at.pos);
        return a / b;
      },
      [&](const FieldElement& a, long n, const Expr& at) {
        if (n < 0 && a.is_zero()) throw Error(ErrorKind::DivisionByZero, "negative power of zero", at.pos);
        return a.pow(static_cast<int>(n));
      });
}

inline Polynomial eval_min_poly(const FieldTower::Ptr& tower, const AlgDecl& d) {
  Expr e = ExprParser(d.poly, d.poly_pos).parse();
  const std::size_t self = tower->size();
  return evaluate<Polynomial>(
      e,
      [&](const Expr& n) {
        if (n.name == d.name || (n.name == "x" && !tower->find("x"))) return Polynomial::variable(self);
        auto g = tower->find(n.name);
        if (!g) throw Error(ErrorKind::UnknownIdentifier, "unknown generator '" + n.name + "'", n.pos);
        return Polynomial::variable(*g);
      },
      [&](const Rational& q) { return Polynomial(q); },
      [&](const Polynomial& a, const Polynomial& b, const Expr& at) {
        if (!b.is_constant() || b.is_zero())
          throw Error(ErrorKind::SyntaxError, "polynomials may only be divided by nonzero constants", at.pos);
        return a * Rational(1 / b.constant_term());
      },
      [&](const Polynomial& a, long n, const Expr& at) {
        if (n < 0) throw Error(ErrorKind::SyntaxError, "polynomials take non-negative powers", at.pos);
        return a.pow(static_cast<unsigned>(n));
      });
}

// Re-raises library errors at a declaration's position.
template <class F>
auto at_position(SourcePos pos, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.position()) throw;
    throw Error(e.kind(), e.what(), pos, e.witness());
  }
}

/// Extends `tower` by the generators in `decls` and evaluates the points.
inline FieldTower::Ptr apply_declarations(FieldTower::Ptr tower, const std::vector<Decl>& decls,
                                          std::vector<Point>& points, std::uint64_t default_seed = 0) {
  for (const auto& d : decls) {
    if (const auto* t = std::get_if<TransDecl>(&d)) {
      tower = at_position(t->pos, [&] {
        return tower->extend(TranscendentalSpec{t->name, {t->lo, t->hi}, t->seed.value_or(default_seed)});
      });
    } else if (const auto* a = std::get_if<AlgDecl>(&d)) {
      tower = at_position(a->pos, [&] { return tower->extend(AlgebraicSpec{a->name, eval_min_poly(tower, *a), {a->lo, a->hi}}); });
    }
  }
  for (const auto& d : decls) {
    if (const auto* p = std::get_if<PointDecl>(&d))
      points.push_back({p->name, at_position(p->pos, [&] { return eval_element(tower, p->expr, p->expr_pos); }), p->coloured});
  }
  return tower;
}

inline ColouredStructure build_structure(const Manifest& m, unsigned precision_budget = kDefaultPrecisionBudget,
                                         std::uint64_t default_seed = 0) {
  std::vector<Point> points;
  auto tower = apply_declarations(FieldTower::empty(precision_budget), m.declarations(), points, default_seed);
  // Report the offending declaration for structure-level violations.
  std::map<std::string, SourcePos> where;
  for (const auto& d : m.declarations())
    if (const auto* p = std::get_if<PointDecl>(&d)) where[p->name] = p->pos;
  try {
    return ColouredStructure(tower, std::move(points));
  } catch (const Error& e) {
    if (!e.witness().empty() && where.count(e.witness().front()))
      throw Error(e.kind(), e.what(), where.at(e.witness().front()), e.witness());
    throw;
  }
}

}  // namespace predim::dsl
