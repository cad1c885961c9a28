#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "ghcalc/errors.hpp"
#include "ghcalc/format.hpp"

namespace ghcalc {

/// Closed bounded real interval [lo, hi].
///
/// Endpoints are finite and ordered; the constructor rejects anything else,
/// so a constructed Interval is always valid. Degenerate intervals [x, x]
/// are ordinary values, not a special case. Instances are immutable.
class Interval {
public:
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi))
      throw ValidationError("interval endpoints must be finite");
    if (lo > hi)
      throw ValidationError("interval lower endpoint " + format_double(lo) +
                            " exceeds upper endpoint " + format_double(hi));
  }

  /// The degenerate interval [v, v], i.e. an embedded real number.
  static Interval point(double v) { return Interval(v, v); }

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double width() const noexcept { return hi_ - lo_; }

  bool operator==(const Interval&) const noexcept = default;

private:
  double lo_;
  double hi_;
};

inline std::string format_interval(const Interval& a) {
  return "[" + format_double(a.lo()) + ", " + format_double(a.hi()) + "]";
}

/// Display form with estimate precision; see format_estimate.
inline std::string format_interval_estimate(const Interval& a) {
  return "[" + format_estimate(a.lo()) + ", " + format_estimate(a.hi()) + "]";
}

/// Endpointwise sum [a.lo + b.lo, a.hi + b.hi].
inline Interval add(const Interval& a, const Interval& b) {
  const double lo = a.lo() + b.lo();
  const double hi = a.hi() + b.hi();
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw OverflowError("interval sum overflowed to a non-finite endpoint");
  return Interval(lo, hi);
}

/// Reflection [-a.hi, -a.lo].
inline Interval neg(const Interval& a) { return Interval(-a.hi(), -a.lo()); }

/// Minkowski difference a + (-b) = [a.lo - b.hi, a.hi - b.lo].
/// Never collapses a nondegenerate self-difference to [0, 0].
inline Interval minkowski_sub(const Interval& a, const Interval& b) {
  return add(a, neg(b));
}

/// [p*lo, p*hi] for p >= 0, endpoints swapped for p < 0.
inline Interval scalar_mul(double p, const Interval& a) {
  if (!std::isfinite(p)) throw ValidationError("scalar must be finite");
  return p >= 0 ? Interval(p * a.lo(), p * a.hi())
                : Interval(p * a.hi(), p * a.lo());
}

/// Hausdorff distance max(|a.lo - b.lo|, |a.hi - b.hi|).
inline double hausdorff(const Interval& a, const Interval& b) {
  return std::max(std::abs(a.lo() - b.lo()), std::abs(a.hi() - b.hi()));
}

/// Hukuhara difference [a.lo - b.lo, a.hi - b.hi], or absent when that pair
/// is not a valid interval. Callers probe for existence, so absence is a
/// value, not an error.
inline std::optional<Interval> h_diff(const Interval& a, const Interval& b) {
  const double lo = a.lo() - b.lo();
  const double hi = a.hi() - b.hi();
  if (lo > hi) return std::nullopt;
  return Interval(lo, hi);
}

/// Generalized Hukuhara difference
/// [min(a.lo - b.lo, a.hi - b.hi), max(a.lo - b.lo, a.hi - b.hi)].
/// Total: defined for every pair, and equal to the Hukuhara difference
/// whenever that one exists.
inline Interval gh_diff(const Interval& a, const Interval& b) {
  const double dlo = a.lo() - b.lo();
  const double dhi = a.hi() - b.hi();
  return Interval(std::min(dlo, dhi), std::max(dlo, dhi));
}

inline Interval operator+(const Interval& a, const Interval& b) { return add(a, b); }
inline Interval operator-(const Interval& a) { return neg(a); }
inline Interval operator-(const Interval& a, const Interval& b) { return minkowski_sub(a, b); }
inline Interval operator*(double p, const Interval& a) { return scalar_mul(p, a); }

}  // namespace ghcalc
