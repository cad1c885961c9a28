#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "ghcalc/errors.hpp"
#include "ghcalc/interval.hpp"
#include "ghcalc/vectors.hpp"

namespace ghcalc {

namespace detail {

/// Neumaier compensated accumulator. Keeps desk-scale sums of products of
/// small integers exact and real-valued sums accurate to ~1 ulp.
class CompensatedSum {
public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double dot(const RealVector& v, const std::vector<double>& w) {
  CompensatedSum s;
  for (std::size_t i = 0; i < v.size(); ++i) s.add(v[i] * w[i]);
  return s.value();
}

}  // namespace detail

inline void require_same_length(const RealVector& v, const IntervalVector& K) {
  if (v.size() != K.size())
    throw DimensionError("vector length " + std::to_string(v.size()) +
                         " does not match interval tuple length " +
                         std::to_string(K.size()));
}

/// Minkowski dot product: the interval sum of v_i * K_i.
inline Interval ghosh_dot(const RealVector& v, const IntervalVector& K) {
  require_same_length(v, K);
  Interval acc = scalar_mul(v[0], K[0]);
  for (std::size_t i = 1; i < v.size(); ++i) acc = add(acc, scalar_mul(v[i], K[i]));
  return acc;
}

/// gH-product of a real vector with an n-tuple of intervals.
///
/// Splits the indices by coefficient sign (v_i >= 0 goes to the nonnegative
/// class) and accumulates
///   p = sum_{+} v_i * K_i.lo - sum_{-} |v_k| * K_k.lo
///   q = sum_{+} v_i * K_i.hi - sum_{-} |v_k| * K_k.hi
/// in a single compensated pass; the result is [min(p, q), max(p, q)].
/// Collapses to the ordinary dot product on degenerate intervals.
inline Interval gh_product(const RealVector& v, const IntervalVector& K) {
  require_same_length(v, K);
  detail::CompensatedSum p, q;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] >= 0) {
      p.add(v[i] * K[i].lo());
      q.add(v[i] * K[i].hi());
    } else {
      p.add(-(std::abs(v[i]) * K[i].lo()));
      q.add(-(std::abs(v[i]) * K[i].hi()));
    }
  }
  const double pv = p.value();
  const double qv = q.value();
  return Interval(std::min(pv, qv), std::max(pv, qv));
}

/// gH-product composed from the two Minkowski partial sums: the sum over the
/// nonnegative class gH-minus the sum over the negative class (with |v_k|).
/// Algebraically identical to gh_product; kept as an independent route so the
/// two can be checked against each other.
inline Interval gh_product_via_partial_sums(const RealVector& v, const IntervalVector& K) {
  require_same_length(v, K);
  Interval pos = Interval::point(0.0);
  Interval negpart = Interval::point(0.0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] >= 0)
      pos = add(pos, scalar_mul(v[i], K[i]));
    else
      negpart = add(negpart, scalar_mul(std::abs(v[i]), K[i]));
  }
  return gh_diff(pos, negpart);
}

/// gH-product of the rescaled vector: <lambda v, K>. Equals
/// scalar_mul(lambda, gh_product(v, K)) for every real lambda.
inline Interval scale_product(double lambda, const RealVector& v, const IntervalVector& K) {
  if (!std::isfinite(lambda)) throw ValidationError("scale factor must be finite");
  return gh_product(lambda * v, K);
}

/// True when v is orthogonal to both endpoint vectors of K, i.e. exactly when
/// the gH-product vanishes. Requires a nonzero v.
inline bool is_gh_orthogonal(const RealVector& v, const IntervalVector& K, double tol = 1e-12) {
  require_same_length(v, K);
  if (v.zero())
    throw PreconditionError("orthogonality test requires a nonzero vector");
  return std::abs(detail::dot(v, K.lowers())) <= tol &&
         std::abs(detail::dot(v, K.uppers())) <= tol;
}

/// Sign-compatibility condition under which the gH-product is additive in its
/// first argument: v and w must order the two endpoint dot products the same
/// way (both <= or both >=).
inline bool linearity_holds(const RealVector& v, const RealVector& w, const IntervalVector& K) {
  require_same_length(v, K);
  require_same_length(w, K);
  const auto kl = K.lowers();
  const auto ku = K.uppers();
  const double vl = detail::dot(v, kl);
  const double vu = detail::dot(v, ku);
  const double wl = detail::dot(w, kl);
  const double wu = detail::dot(w, ku);
  return (vl <= vu && wl <= wu) || (vl >= vu && wl >= wu);
}

}  // namespace ghcalc
