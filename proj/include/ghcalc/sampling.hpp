#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "ghcalc/errors.hpp"

namespace ghcalc {

/// Which punctured side of the base point a quotient sequence samples.
enum class Side { left, right };

inline const char* to_string(Side s) { return s == Side::left ? "left" : "right"; }

/// Geometric one-sided sampling plan for difference quotients:
/// t_k = +/- t0 * ratio^k for k = 0..count-1.
///
/// limit_tol governs when a quotient tail counts as stabilized; cluster_tol
/// is the merge radius for accumulation points and the matching tolerance of
/// the derivative decision procedure.
struct SamplingPlan {
  double t0 = 1e-2;
  double ratio = 0.5;
  int count = 32;
  double limit_tol = 1e-5;
  double cluster_tol = 1e-4;

  /// Smallest |t| the plan will sample.
  double smallest_step() const { return t0 * std::pow(ratio, count - 1); }

  /// Validates the plan. coordinate_scale is |x_i| of the varied coordinate;
  /// the smallest step must stay three decades above the rounding floor of
  /// x_i + t, or the quotients drown in cancellation before the tail is
  /// reached.
  void validate(double coordinate_scale = 0.0) const {
    if (!std::isfinite(t0) || t0 <= 0) throw ValidationError("plan t0 must be positive");
    if (!std::isfinite(ratio) || ratio <= 0 || ratio >= 1)
      throw ValidationError("plan ratio must lie in (0, 1)");
    if (count < 1) throw ValidationError("plan count must be a positive integer");
    if (!std::isfinite(limit_tol) || limit_tol <= 0)
      throw ValidationError("plan limit_tol must be positive");
    if (!std::isfinite(cluster_tol) || cluster_tol <= 0)
      throw ValidationError("plan cluster_tol must be positive");
    const double floor =
        1e3 * std::numeric_limits<double>::epsilon() * std::abs(coordinate_scale);
    if (!(smallest_step() > floor))
      throw ValidationError(
          "plan smallest step t0*ratio^(count-1) = " + std::to_string(smallest_step()) +
          " is inside the cancellation guard band " + std::to_string(floor) +
          " at this point");
  }

  double step(Side side, int k) const {
    const double t = t0 * std::pow(ratio, k);
    return side == Side::right ? t : -t;
  }

  bool operator==(const SamplingPlan&) const = default;
};

}  // namespace ghcalc
