#pragma once

// Test-side oracles, independent of the derivative engine under test: smooth
// two-variable endpoint functions evaluated term by term, differentiated by
// central differences.

#include <cmath>
#include <random>
#include <vector>

#include "ghcalc/ast.hpp"
#include "ghcalc/ivf.hpp"

namespace oracle {

struct Term {
  double coeff = 0.0;
  int d1 = 0;  // power of x1
  int d2 = 0;  // power of x2
};

/// coeff-list polynomial plus optional sin(x1) and cos(x2) terms.
struct SmoothFn {
  std::vector<Term> poly;
  double sin_coeff = 0.0;
  double cos_coeff = 0.0;

  double operator()(double x1, double x2) const {
    double s = 0.0;
    for (const auto& t : poly) s += t.coeff * std::pow(x1, t.d1) * std::pow(x2, t.d2);
    return s + sin_coeff * std::sin(x1) + cos_coeff * std::cos(x2);
  }

  SmoothFn plus(const SmoothFn& other) const {
    SmoothFn out = *this;
    out.poly.insert(out.poly.end(), other.poly.begin(), other.poly.end());
    out.sin_coeff += other.sin_coeff;
    out.cos_coeff += other.cos_coeff;
    return out;
  }

  ghcalc::ExprPtr ast() const {
    using ghcalc::BinaryOp;
    using ghcalc::ScalarExpr;
    using ghcalc::UnaryOp;
    auto power = [](int var, int deg) {
      return ScalarExpr::binary(BinaryOp::Pow, ScalarExpr::variable(var),
                                ScalarExpr::constant(deg));
    };
    ghcalc::ExprPtr acc = ScalarExpr::constant(0.0);
    for (const auto& t : poly) {
      ghcalc::ExprPtr term = ScalarExpr::constant(t.coeff);
      if (t.d1 > 0) term = ScalarExpr::binary(BinaryOp::Mul, term, power(1, t.d1));
      if (t.d2 > 0) term = ScalarExpr::binary(BinaryOp::Mul, term, power(2, t.d2));
      acc = ScalarExpr::binary(BinaryOp::Add, acc, term);
    }
    if (sin_coeff != 0.0)
      acc = ScalarExpr::binary(
          BinaryOp::Add, acc,
          ScalarExpr::binary(BinaryOp::Mul, ScalarExpr::constant(sin_coeff),
                             ScalarExpr::unary(UnaryOp::Sin, ScalarExpr::variable(1))));
    if (cos_coeff != 0.0)
      acc = ScalarExpr::binary(
          BinaryOp::Add, acc,
          ScalarExpr::binary(BinaryOp::Mul, ScalarExpr::constant(cos_coeff),
                             ScalarExpr::unary(UnaryOp::Cos, ScalarExpr::variable(2))));
    return acc;
  }
};

/// Random C^1 function: polynomial of total degree <= 4 with coefficients in
/// [-3,3], plus trig terms with coefficients in [-3,3].
inline SmoothFn random_fn(std::mt19937& rng) {
  std::uniform_real_distribution<double> coeff(-3.0, 3.0);
  std::uniform_int_distribution<int> degree(0, 4);
  std::uniform_int_distribution<int> nterms(3, 6);
  SmoothFn f;
  const int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    Term t;
    t.d1 = degree(rng);
    t.d2 = degree(rng) % (5 - t.d1);  // keep total degree <= 4
    t.coeff = coeff(rng);
    f.poly.push_back(t);
  }
  f.sin_coeff = coeff(rng);
  f.cos_coeff = coeff(rng);
  return f;
}

/// Strictly positive margin c0 + c1*x1^2 + c2*x2^2 with c0 in [0.5,3],
/// c1,c2 in [0,3]: added to a lower endpoint it keeps upper >= lower
/// everywhere while perturbing the derivative.
inline SmoothFn random_margin(std::mt19937& rng) {
  std::uniform_real_distribution<double> c0(0.5, 3.0);
  std::uniform_real_distribution<double> c(0.0, 3.0);
  SmoothFn m;
  m.poly.push_back(Term{c0(rng), 0, 0});
  m.poly.push_back(Term{c(rng), 2, 0});
  m.poly.push_back(Term{c(rng), 0, 2});
  return m;
}

/// Central difference along one coordinate (1-based), h = 1e-6 by default.
template <class F>
double central_diff(const F& f, double x1, double x2, int coord, double h = 1e-6) {
  if (coord == 1) return (f(x1 + h, x2) - f(x1 - h, x2)) / (2.0 * h);
  return (f(x1, x2 + h) - f(x1, x2 - h)) / (2.0 * h);
}

}  // namespace oracle
