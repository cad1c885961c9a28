#pragma once

#include <cmath>
#include <memory>
#include <span>
#include <string>
#include <variant>

#include "ghcalc/errors.hpp"
#include "ghcalc/format.hpp"

namespace ghcalc {

enum class UnaryOp { Neg, Abs, Sin, Cos, Exp, Sqrt };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

class ScalarExpr;
using ExprPtr = std::shared_ptr<const ScalarExpr>;

/// Immutable AST node of a scalar expression over variables x1..xn.
///
/// abs is a primitive rather than sqrt(x^2) so one-sided difference
/// quotients through a kink stay exact.
class ScalarExpr {
public:
  struct Constant {
    double value;
  };
  struct Variable {
    int index;  // 1-based: x1, x2, ...
  };
  struct Unary {
    UnaryOp op;
    ExprPtr operand;
  };
  struct Binary {
    BinaryOp op;
    ExprPtr lhs;
    ExprPtr rhs;
  };
  using Node = std::variant<Constant, Variable, Unary, Binary>;

  explicit ScalarExpr(Node node) : node_(std::move(node)) {}
  const Node& node() const noexcept { return node_; }

  static ExprPtr constant(double v) {
    if (!std::isfinite(v)) throw ValidationError("expression constants must be finite");
    return std::make_shared<const ScalarExpr>(Node{Constant{v}});
  }
  static ExprPtr variable(int index) {
    if (index < 1) throw ValidationError("variable index must be >= 1");
    return std::make_shared<const ScalarExpr>(Node{Variable{index}});
  }
  static ExprPtr unary(UnaryOp op, ExprPtr operand) {
    // canonical form: a negated literal is a negative constant
    if (op == UnaryOp::Neg)
      if (const auto* c = std::get_if<Constant>(&operand->node()))
        return constant(-c->value);
    return std::make_shared<const ScalarExpr>(Node{Unary{op, std::move(operand)}});
  }
  static ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
    return std::make_shared<const ScalarExpr>(Node{Binary{op, std::move(lhs), std::move(rhs)}});
  }

private:
  Node node_;
};

/// Structural equality of ASTs.
inline bool equal(const ScalarExpr& a, const ScalarExpr& b) {
  const auto& na = a.node();
  const auto& nb = b.node();
  if (na.index() != nb.index()) return false;
  if (const auto* ca = std::get_if<ScalarExpr::Constant>(&na))
    return ca->value == std::get<ScalarExpr::Constant>(nb).value;
  if (const auto* va = std::get_if<ScalarExpr::Variable>(&na))
    return va->index == std::get<ScalarExpr::Variable>(nb).index;
  if (const auto* ua = std::get_if<ScalarExpr::Unary>(&na)) {
    const auto& ub = std::get<ScalarExpr::Unary>(nb);
    return ua->op == ub.op && equal(*ua->operand, *ub.operand);
  }
  const auto& ba = std::get<ScalarExpr::Binary>(na);
  const auto& bb = std::get<ScalarExpr::Binary>(nb);
  return ba.op == bb.op && equal(*ba.lhs, *bb.lhs) && equal(*ba.rhs, *bb.rhs);
}

inline bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return equal(*a, *b);
}

/// Largest variable index referenced, 0 for constant expressions.
inline int max_variable(const ScalarExpr& e) {
  const auto& n = e.node();
  if (std::holds_alternative<ScalarExpr::Constant>(n)) return 0;
  if (const auto* v = std::get_if<ScalarExpr::Variable>(&n)) return v->index;
  if (const auto* u = std::get_if<ScalarExpr::Unary>(&n)) return max_variable(*u->operand);
  const auto& b = std::get<ScalarExpr::Binary>(n);
  return std::max(max_variable(*b.lhs), max_variable(*b.rhs));
}

std::string to_string(const ScalarExpr& e);

namespace detail {

// Precedence levels used by both the printer and the parser:
// atoms 5, pow 4, unary minus 3, mul/div 2, add/sub 1.
inline int precedence(const ScalarExpr& e) {
  const auto& n = e.node();
  if (const auto* c = std::get_if<ScalarExpr::Constant>(&n))
    return c->value < 0 ? 3 : 5;
  if (std::holds_alternative<ScalarExpr::Variable>(n)) return 5;
  if (const auto* u = std::get_if<ScalarExpr::Unary>(&n))
    return u->op == UnaryOp::Neg ? 3 : 5;
  switch (std::get<ScalarExpr::Binary>(n).op) {
    case BinaryOp::Add:
    case BinaryOp::Sub:
      return 1;
    case BinaryOp::Mul:
    case BinaryOp::Div:
      return 2;
    case BinaryOp::Pow:
      return 4;
  }
  return 5;
}

inline std::string wrap(const ScalarExpr& child, int min_prec) {
  const std::string s = to_string(child);
  return precedence(child) < min_prec ? "(" + s + ")" : s;
}

}  // namespace detail

/// Minimal-parenthesis rendering; parsing the result reproduces the AST.
inline std::string to_string(const ScalarExpr& e) {
  const auto& n = e.node();
  if (const auto* c = std::get_if<ScalarExpr::Constant>(&n)) return format_double(c->value);
  if (const auto* v = std::get_if<ScalarExpr::Variable>(&n))
    return "x" + std::to_string(v->index);
  if (const auto* u = std::get_if<ScalarExpr::Unary>(&n)) {
    switch (u->op) {
      case UnaryOp::Neg: {
        // parenthesize a nested leading minus so "--x" never appears
        const bool nested =
            std::holds_alternative<ScalarExpr::Unary>(u->operand->node()) &&
            std::get<ScalarExpr::Unary>(u->operand->node()).op == UnaryOp::Neg;
        return "-" + detail::wrap(*u->operand, nested ? 4 : 3);
      }
      case UnaryOp::Abs: return "abs(" + to_string(*u->operand) + ")";
      case UnaryOp::Sin: return "sin(" + to_string(*u->operand) + ")";
      case UnaryOp::Cos: return "cos(" + to_string(*u->operand) + ")";
      case UnaryOp::Exp: return "exp(" + to_string(*u->operand) + ")";
      case UnaryOp::Sqrt: return "sqrt(" + to_string(*u->operand) + ")";
    }
  }
  const auto& b = std::get<ScalarExpr::Binary>(n);
  switch (b.op) {
    case BinaryOp::Add: return detail::wrap(*b.lhs, 1) + " + " + detail::wrap(*b.rhs, 2);
    case BinaryOp::Sub: return detail::wrap(*b.lhs, 1) + " - " + detail::wrap(*b.rhs, 2);
    case BinaryOp::Mul: return detail::wrap(*b.lhs, 2) + "*" + detail::wrap(*b.rhs, 3);
    case BinaryOp::Div: return detail::wrap(*b.lhs, 2) + "/" + detail::wrap(*b.rhs, 3);
    case BinaryOp::Pow: return detail::wrap(*b.lhs, 5) + "^" + detail::wrap(*b.rhs, 4);
  }
  return {};
}

/// Value together with a first-order running rounding bound: the absolute
/// evaluation error is at most about eps * weight. The difference-quotient
/// sampler uses the bound to tell genuine quotient behaviour from rounding
/// noise.
struct EvalBound {
  double value = 0.0;
  double weight = 0.0;
};

inline EvalBound eval_bound(const ScalarExpr& e, std::span<const double> point);

/// Evaluates the expression at a point. Pure: identical inputs give
/// bit-identical results. Domain problems throw EvalError naming the
/// offending subexpression.
inline double eval(const ScalarExpr& e, std::span<const double> point) {
  const auto& n = e.node();
  if (const auto* c = std::get_if<ScalarExpr::Constant>(&n)) return c->value;
  if (const auto* v = std::get_if<ScalarExpr::Variable>(&n)) {
    if (v->index > static_cast<int>(point.size()))
      throw EvalError("variable x" + std::to_string(v->index) +
                      " exceeds the arity of the evaluation point");
    return point[static_cast<std::size_t>(v->index - 1)];
  }
  if (const auto* u = std::get_if<ScalarExpr::Unary>(&n)) {
    const double x = eval(*u->operand, point);
    switch (u->op) {
      case UnaryOp::Neg: return -x;
      case UnaryOp::Abs: return std::abs(x);
      case UnaryOp::Sin: return std::sin(x);
      case UnaryOp::Cos: return std::cos(x);
      case UnaryOp::Exp: {
        const double r = std::exp(x);
        if (!std::isfinite(r))
          throw EvalError("exp overflow in '" + to_string(e) + "'");
        return r;
      }
      case UnaryOp::Sqrt:
        if (x < 0)
          throw EvalError("sqrt of negative value in '" + to_string(e) + "'");
        return std::sqrt(x);
    }
  }
  const auto& b = std::get<ScalarExpr::Binary>(n);
  const double l = eval(*b.lhs, point);
  const double r = eval(*b.rhs, point);
  double out = 0.0;
  switch (b.op) {
    case BinaryOp::Add: out = l + r; break;
    case BinaryOp::Sub: out = l - r; break;
    case BinaryOp::Mul: out = l * r; break;
    case BinaryOp::Div:
      if (r == 0) throw EvalError("division by zero in '" + to_string(e) + "'");
      out = l / r;
      break;
    case BinaryOp::Pow:
      out = std::pow(l, r);
      break;
  }
  if (!std::isfinite(out))
    throw EvalError("non-finite result in '" + to_string(e) + "'");
  return out;
}

inline EvalBound eval_bound(const ScalarExpr& e, std::span<const double> point) {
  const auto& n = e.node();
  if (const auto* c = std::get_if<ScalarExpr::Constant>(&n)) return {c->value, 0.0};
  if (const auto* var = std::get_if<ScalarExpr::Variable>(&n)) {
    if (var->index > static_cast<int>(point.size()))
      throw EvalError("variable x" + std::to_string(var->index) +
                      " exceeds the arity of the evaluation point");
    return {point[static_cast<std::size_t>(var->index - 1)], 0.0};
  }
  if (const auto* u = std::get_if<ScalarExpr::Unary>(&n)) {
    const EvalBound x = eval_bound(*u->operand, point);
    switch (u->op) {
      case UnaryOp::Neg: return {-x.value, x.weight};   // exact
      case UnaryOp::Abs: return {std::abs(x.value), x.weight};  // exact
      case UnaryOp::Sin: return {std::sin(x.value), x.weight + 2.0};
      case UnaryOp::Cos: return {std::cos(x.value), x.weight + 2.0};
      case UnaryOp::Exp: {
        const double v = std::exp(x.value);
        if (!std::isfinite(v)) throw EvalError("exp overflow in '" + to_string(e) + "'");
        return {v, v * (x.weight + 2.0)};
      }
      case UnaryOp::Sqrt: {
        if (x.value < 0)
          throw EvalError("sqrt of negative value in '" + to_string(e) + "'");
        const double v = std::sqrt(x.value);
        return {v, v > 0 ? x.weight / (2.0 * v) + v : x.weight + 1.0};
      }
    }
  }
  const auto& b = std::get<ScalarExpr::Binary>(n);
  const EvalBound l = eval_bound(*b.lhs, point);
  const EvalBound r = eval_bound(*b.rhs, point);
  EvalBound out;
  switch (b.op) {
    case BinaryOp::Add:
      out = {l.value + r.value, l.weight + r.weight};
      break;
    case BinaryOp::Sub:
      out = {l.value - r.value, l.weight + r.weight};
      break;
    case BinaryOp::Mul:
      out = {l.value * r.value,
             std::abs(l.value) * r.weight + std::abs(r.value) * l.weight};
      break;
    case BinaryOp::Div: {
      if (r.value == 0) throw EvalError("division by zero in '" + to_string(e) + "'");
      const double v = l.value / r.value;
      out = {v, (l.weight + std::abs(v) * r.weight) / std::abs(r.value)};
      break;
    }
    case BinaryOp::Pow: {
      // sensitivity of x^y: |y v / x| to the base, |ln(x) v| to the exponent
      const double v = std::pow(l.value, r.value);
      double w = std::abs(v);  // the operation itself, a few ulps
      if (l.value != 0.0) w += std::abs(r.value * v / l.value) * l.weight;
      if (l.value > 0.0) w += std::abs(std::log(l.value) * v) * r.weight;
      out = {v, w};
      break;
    }
  }
  if (!std::isfinite(out.value))
    throw EvalError("non-finite result in '" + to_string(e) + "'");
  out.weight += std::abs(out.value);  // rounding of this operation
  return out;
}

}  // namespace ghcalc
