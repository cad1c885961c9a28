#pragma once

#include <cctype>
#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "ghcalc/ast.hpp"
#include "ghcalc/errors.hpp"
#include "ghcalc/ivf.hpp"

namespace ghcalc {

namespace detail {

struct Token {
  enum class Kind { Number, Ident, Punct, End };
  Kind kind = Kind::End;
  double number = 0.0;
  std::string text;  // ident spelling or number spelling
  char punct = 0;
  int line = 1;
  int col = 1;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blank();
      Token t;
      t.line = line_;
      t.col = col_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) ||
          (c == '.' && pos_ + 1 < src_.size() &&
           std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
        lex_number(t);
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Token::Kind::Ident;
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          advance();
        t.text = std::string(src_.substr(start, pos_ - start));
      } else if (std::string_view("=;:|[]()+-*/^<>").find(c) != std::string_view::npos) {
        t.kind = Token::Kind::Punct;
        t.punct = c;
        advance();
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
      }
      out.push_back(std::move(t));
    }
  }

private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  void lex_number(Token& t) {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      advance();
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t mark = pos_;
      advance();
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) advance();
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
      } else {
        // not an exponent after all; rewind is safe because advance() only
        // moved within one line here
        col_ -= static_cast<int>(pos_ - mark);
        pos_ = mark;
      }
    }
    const std::string_view slice = src_.substr(start, pos_ - start);
    double value = 0.0;
    const auto res = std::from_chars(slice.data(), slice.data() + slice.size(), value);
    if (res.ec != std::errc() || res.ptr != slice.data() + slice.size())
      throw ParseError("malformed number '" + std::string(slice) + "'", t.line, t.col);
    t.kind = Token::Kind::Number;
    t.number = value;
    t.text = std::string(slice);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
public:
  explicit Parser(std::string_view src) : tokens_(Lexer(src).run()) {}

  IvfSpec run() {
    IvfSpec spec;
    expect_ident("n");
    expect_punct('=');
    spec.arity = expect_arity();
    arity_ = spec.arity;
    expect_punct(';');
    expect_ident("L");
    expect_punct(':');
    spec.lower = parse_endpoint();
    expect_punct(';');
    expect_ident("U");
    expect_punct(':');
    spec.upper = parse_endpoint();
    if (is_punct(';')) ++pos_;
    if (peek().kind != Token::Kind::End)
      throw err("unexpected trailing input");
    return spec;
  }

private:
  static bool is_function(std::string_view name) {
    return name == "abs" || name == "sin" || name == "cos" || name == "exp" || name == "sqrt";
  }

  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }

  ParseError err(const std::string& message) const {
    return ParseError(message, peek().line, peek().col);
  }

  bool is_punct(char c) const {
    return peek().kind == Token::Kind::Punct && peek().punct == c;
  }

  bool is_ident(std::string_view name) const {
    return peek().kind == Token::Kind::Ident && peek().text == name;
  }

  void expect_punct(char c) {
    if (!is_punct(c)) throw err(std::string("expected '") + c + "'");
    ++pos_;
  }

  void expect_ident(std::string_view name) {
    if (!is_ident(name)) throw err("expected '" + std::string(name) + "'");
    ++pos_;
  }

  int expect_arity() {
    const Token& t = peek();
    if (t.kind != Token::Kind::Number || t.number != static_cast<int>(t.number) ||
        t.number < 1)
      throw err("arity must be a positive integer");
    ++pos_;
    return static_cast<int>(t.number);
  }

  // ident of the form x<digits>; returns the 1-based index, or nullopt
  static std::optional<int> variable_index(std::string_view name) {
    if (name.size() < 2 || name[0] != 'x') return std::nullopt;
    int idx = 0;
    for (char c : name.substr(1)) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
      idx = idx * 10 + (c - '0');
      if (idx > 1'000'000) return std::nullopt;
    }
    return idx;
  }

  BranchedEndpoint parse_endpoint() {
    BranchedEndpoint out;
    if (!is_ident("branch")) {
      out.branches.push_back(Branch{"main", std::nullopt, parse_expr()});
      return out;
    }
    std::unordered_set<std::string> labels;
    for (;;) {
      expect_ident("branch");
      if (peek().kind != Token::Kind::Ident) throw err("expected a branch label");
      Branch b;
      b.label = peek().text;
      if (!labels.insert(b.label).second)
        throw err("duplicate branch label '" + b.label + "'");
      ++pos_;
      if (is_punct('[')) b.guard = parse_guard();
      expect_punct(':');
      b.expr = parse_expr();
      out.branches.push_back(std::move(b));
      if (!is_punct('|')) return out;
      ++pos_;
    }
  }

  Guard parse_guard() {
    expect_punct('[');
    Guard g;
    if (peek().kind != Token::Kind::Ident)
      throw err("expected a coordinate in the guard");
    const auto idx = variable_index(peek().text);
    if (!idx) throw err("guards support only coordinates x1..xn");
    if (*idx < 1 || *idx > arity_)
      throw err("guard coordinate x" + std::to_string(*idx) +
                " exceeds the declared arity " + std::to_string(arity_));
    g.coord = *idx;
    ++pos_;
    if (is_punct('<'))
      g.rel = Guard::Rel::Less;
    else if (is_punct('>'))
      g.rel = Guard::Rel::Greater;
    else if (is_punct('='))
      g.rel = Guard::Rel::Equal;
    else
      throw err("expected '<', '>' or '=' in the guard");
    ++pos_;
    if (peek().kind != Token::Kind::Number || peek().number != 0.0)
      throw err("guards support only sign conditions against 0");
    ++pos_;
    expect_punct(']');
    return g;
  }

  ExprPtr parse_expr() { return parse_additive(); }

  ExprPtr parse_additive() {
    ExprPtr lhs = parse_multiplicative();
    for (;;) {
      if (is_punct('+')) {
        ++pos_;
        lhs = ScalarExpr::binary(BinaryOp::Add, lhs, parse_multiplicative());
      } else if (is_punct('-')) {
        ++pos_;
        lhs = ScalarExpr::binary(BinaryOp::Sub, lhs, parse_multiplicative());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_multiplicative() {
    ExprPtr lhs = parse_unary();
    for (;;) {
      if (is_punct('*')) {
        ++pos_;
        lhs = ScalarExpr::binary(BinaryOp::Mul, lhs, parse_unary());
      } else if (is_punct('/')) {
        ++pos_;
        lhs = ScalarExpr::binary(BinaryOp::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_unary() {
    if (is_punct('-')) {
      ++pos_;
      return ScalarExpr::unary(UnaryOp::Neg, parse_unary());
    }
    return parse_power();
  }

  // right-associative, binds tighter than unary minus
  ExprPtr parse_power() {
    ExprPtr base = parse_primary();
    if (!is_punct('^')) return base;
    ++pos_;
    return ScalarExpr::binary(BinaryOp::Pow, base, parse_unary());
  }

  ExprPtr parse_primary() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Number) {
      ++pos_;
      return ScalarExpr::constant(t.number);
    }
    if (is_punct('(')) {
      ++pos_;
      ExprPtr inner = parse_expr();
      expect_punct(')');
      return inner;
    }
    if (t.kind == Token::Kind::Ident) {
      if (is_function(t.text)) {
        const std::string name = t.text;
        ++pos_;
        expect_punct('(');
        ExprPtr arg = parse_expr();
        expect_punct(')');
        UnaryOp op = UnaryOp::Abs;
        if (name == "sin") op = UnaryOp::Sin;
        else if (name == "cos") op = UnaryOp::Cos;
        else if (name == "exp") op = UnaryOp::Exp;
        else if (name == "sqrt") op = UnaryOp::Sqrt;
        return ScalarExpr::unary(op, arg);
      }
      if (const auto idx = variable_index(t.text)) {
        if (*idx < 1 || *idx > arity_)
          throw err("variable x" + std::to_string(*idx) +
                    " exceeds the declared arity " + std::to_string(arity_));
        ++pos_;
        return ScalarExpr::variable(*idx);
      }
      throw err("unknown identifier '" + t.text + "'");
    }
    throw err("expected an expression");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int arity_ = 1;
};

}  // namespace detail

/// Parses an interval-valued function spec:
///
///   spec       := "n=" INT ";" "L:" endpoint ";" "U:" endpoint [";"]
///   endpoint   := expr | branchlist
///   branchlist := "branch" LABEL [guard] ":" expr ("|" branchlist-item)*
///   guard      := "[" xN ("<"|">"|"=") "0" "]"
///
/// with the usual arithmetic operators (+ - * / ^, pow right-associative and
/// binding tighter than unary minus) and functions abs, sin, cos, exp, sqrt.
/// Whitespace-insensitive; "#" starts a comment running to end of line.
inline IvfSpec parse(std::string_view source) { return detail::Parser(source).run(); }

}  // namespace ghcalc
