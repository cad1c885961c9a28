#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ghcalc/interval.hpp"
#include "ghcalc/quotient.hpp"

namespace ghcalc {

enum class DerivativeStatus { exists, not_exists, inconclusive };

inline const char* to_string(DerivativeStatus s) {
  switch (s) {
    case DerivativeStatus::exists: return "exists";
    case DerivativeStatus::not_exists: return "not_exists";
    case DerivativeStatus::inconclusive: return "inconclusive";
  }
  return "";
}

/// Which clause of the four-way existence characterization produced the
/// derivative: (i) all four one-sided endpoint derivatives, (ii) right pair
/// plus complementary left channels, (iii) the mirror, (iv) complementary
/// channels on both sides.
enum class CaseTag { i, ii, iii, iv };

inline const char* to_string(CaseTag c) {
  switch (c) {
    case CaseTag::i: return "i";
    case CaseTag::ii: return "ii";
    case CaseTag::iii: return "iii";
    case CaseTag::iv: return "iv";
  }
  return "";
}

/// Cross-channel min/max limits for one (lower-branch, upper-branch) pair.
struct PairLimits {
  std::string lower_label;
  std::string upper_label;
  LimitEstimate min_limit;
  LimitEstimate max_limit;
};

/// Outcome of pairing a lower and an upper profile on one side.
///
/// The two profiles are complementary when their cluster sets agree on the
/// same two points {kL, kU} with kL < kU and the pointwise min / max across
/// every channel pair converges to kL / kU. Channel pairs are matched by
/// label when the two label sets coincide (same t, same label is the
/// physically meaningful pairing); otherwise every cross pair is checked.
struct PairingReport {
  bool label_matched = true;
  std::vector<PairLimits> pairs;
  std::optional<std::pair<double, double>> complementary_pair;
  bool inconclusive = false;
  std::string note;
};

namespace detail {

inline std::vector<std::string> participating_labels(const QuotientProfile& p) {
  std::vector<std::string> out;
  for (const auto& bq : p.branches) out.push_back(bq.label);
  std::sort(out.begin(), out.end());
  return out;
}

inline const BranchQuotients& branch_of(const QuotientProfile& p, const std::string& label) {
  for (const auto& bq : p.branches)
    if (bq.label == label) return bq;
  throw PreconditionError("no channel '" + label + "' in profile");
}

inline PairLimits pair_limits(const BranchQuotients& lo, const BranchQuotients& up,
                              const SamplingPlan& plan) {
  PairLimits out;
  out.lower_label = lo.label;
  out.upper_label = up.label;
  const std::size_t m = lo.samples.size();
  std::vector<double> mins(m), maxs(m), noise(m);
  for (std::size_t k = 0; k < m; ++k) {
    mins[k] = std::min(lo.samples[k].gamma, up.samples[k].gamma);
    maxs[k] = std::max(lo.samples[k].gamma, up.samples[k].gamma);
    noise[k] = std::max(lo.samples[k].noise, up.samples[k].noise);
  }
  out.min_limit = estimate_limit(mins, noise, plan.ratio, plan.limit_tol);
  out.max_limit = estimate_limit(maxs, noise, plan.ratio, plan.limit_tol);
  return out;
}

}  // namespace detail

/// Pairs a same-side lower/upper profile and decides complementarity.
inline PairingReport analyze_pairing(const QuotientProfile& lower,
                                     const QuotientProfile& upper) {
  if (lower.which != Bound::lower || upper.which != Bound::upper)
    throw PreconditionError("pairing expects a lower profile and an upper profile");
  if (lower.side != upper.side || lower.coord != upper.coord || !(lower.plan == upper.plan))
    throw PreconditionError("pairing expects profiles from the same side, coordinate and plan");

  PairingReport out;
  const SamplingPlan& plan = lower.plan;

  if (lower.inconclusive || upper.inconclusive) {
    out.inconclusive = true;
    out.note = "a channel did not stabilize: " +
               (lower.inconclusive ? lower.note : upper.note);
    return out;
  }

  const auto ll = detail::participating_labels(lower);
  const auto ul = detail::participating_labels(upper);
  out.label_matched = (ll == ul);
  if (out.label_matched) {
    for (const auto& label : ll)
      out.pairs.push_back(detail::pair_limits(detail::branch_of(lower, label),
                                              detail::branch_of(upper, label), plan));
  } else {
    for (const auto& blo : lower.branches)
      for (const auto& bup : upper.branches)
        out.pairs.push_back(detail::pair_limits(blo, bup, plan));
  }

  // cluster condition: both sets are the same two points kL < kU
  const auto& cl = lower.cluster_set;
  const auto& cu = upper.cluster_set;
  if (cl.size() != 2 || cu.size() != 2) {
    out.note = "cluster sets are not two-point sets (lower has " +
               std::to_string(cl.size()) + ", upper has " + std::to_string(cu.size()) + ")";
    return out;
  }
  if (std::abs(cl[0] - cu[0]) > plan.cluster_tol ||
      std::abs(cl[1] - cu[1]) > plan.cluster_tol) {
    out.note = "cluster sets of the two endpoints differ";
    return out;
  }
  const double k_lo = 0.5 * (cl[0] + cu[0]);
  const double k_hi = 0.5 * (cl[1] + cu[1]);
  if (!(k_hi - k_lo > plan.cluster_tol)) {
    out.note = "cluster points are not distinct";
    return out;
  }

  for (const auto& p : out.pairs) {
    if (!p.min_limit.exists || !p.max_limit.exists) {
      out.inconclusive = true;
      out.note = "pointwise min/max across pair (" + p.lower_label + ", " + p.upper_label +
                 ") did not stabilize";
      return out;
    }
    if (std::abs(p.min_limit.value - k_lo) > plan.cluster_tol) {
      out.note = "pointwise min across pair (" + p.lower_label + ", " + p.upper_label +
                 ") converges to " + format_estimate(p.min_limit.value) +
                 " instead of " + format_estimate(k_lo);
      return out;
    }
    if (std::abs(p.max_limit.value - k_hi) > plan.cluster_tol) {
      out.note = "pointwise max across pair (" + p.lower_label + ", " + p.upper_label +
                 ") converges to " + format_estimate(p.max_limit.value) +
                 " instead of " + format_estimate(k_hi);
      return out;
    }
  }
  out.complementary_pair = std::make_pair(k_lo, k_hi);
  return out;
}

/// The complementary pair (kL, kU) of a same-side lower/upper profile pair,
/// or absent. Absence is the negative answer, not an error.
inline std::optional<std::pair<double, double>> complementary(const QuotientProfile& lower,
                                                              const QuotientProfile& upper) {
  return analyze_pairing(lower, upper).complementary_pair;
}

/// Outcome of the partial-derivative decision procedure for one coordinate.
struct DerivativeReport {
  DerivativeStatus status = DerivativeStatus::inconclusive;
  std::optional<Interval> value;
  std::optional<CaseTag> case_tag;
  std::string reason;

  int coord = 1;
  std::vector<double> point;

  // diagnostics
  QuotientProfile lower_right, upper_right, lower_left, upper_left;
  PairingReport right_pairing, left_pairing;
  std::optional<double> d_lower_right, d_upper_right, d_lower_left, d_upper_left;
};

namespace detail {

/// Model check from the IVF definition: lower values must not exceed upper
/// values anywhere both get sampled.
inline void check_endpoint_order(const QuotientProfile& lower, const QuotientProfile& upper) {
  const double slack = 1e-9;
  auto fail = [&](double lo, double hi, const std::string& where) {
    throw EvalError("model error: lower endpoint value " + format_double(lo) +
                    " exceeds upper endpoint value " + format_double(hi) + " at " + where);
  };
  if (lower.base_value > upper.base_value +
                             slack * std::max(1.0, std::abs(upper.base_value)))
    fail(lower.base_value, upper.base_value, "the base point");

  const bool matched = participating_labels(lower) == participating_labels(upper);
  for (const auto& blo : lower.branches) {
    for (const auto& bup : upper.branches) {
      if (matched && blo.label != bup.label) continue;
      for (std::size_t k = 0; k < blo.samples.size(); ++k) {
        const double lo = blo.samples[k].value;
        const double hi = bup.samples[k].value;
        if (lo > hi + slack * std::max(1.0, std::abs(hi)))
          fail(lo, hi, "t = " + format_double(blo.samples[k].t) + " (branch pair " +
                           blo.label + "/" + bup.label + ")");
      }
    }
  }
}

inline Interval interval_of(double a, double b) {
  return Interval(std::min(a, b), std::max(a, b));
}

inline bool intervals_match(const Interval& a, const Interval& b, double tol) {
  return std::abs(a.lo() - b.lo()) <= tol && std::abs(a.hi() - b.hi()) <= tol;
}

}  // namespace detail

/// gH-partial derivative with respect to coordinate `coord` at `point`,
/// decided by the four-case characterization:
///
///   (i)  all four one-sided endpoint derivatives exist and the right-side
///        [min, max] interval equals the left-side one;
///   (ii) the right pair exists and the left channels are complementary with
///        the same (kL, kU);
///  (iii) the mirror of (ii);
///   (iv) both sides are complementary with one common (kL, kU).
///
/// Anything else is not_exists, with the violated condition named. Profiles
/// whose tails refuse to stabilize make the outcome inconclusive; the engine
/// never coerces a noisy profile into an answer.
inline DerivativeReport gh_partial(const IvfSpec& spec, std::span<const double> point,
                                   int coord, const SamplingPlan& plan = {}) {
  DerivativeReport rep;
  rep.coord = coord;
  rep.point.assign(point.begin(), point.end());

  rep.lower_right = quotient_profile(spec, Bound::lower, point, coord, Side::right, plan);
  rep.upper_right = quotient_profile(spec, Bound::upper, point, coord, Side::right, plan);
  rep.lower_left = quotient_profile(spec, Bound::lower, point, coord, Side::left, plan);
  rep.upper_left = quotient_profile(spec, Bound::upper, point, coord, Side::left, plan);
  detail::check_endpoint_order(rep.lower_right, rep.upper_right);
  detail::check_endpoint_order(rep.lower_left, rep.upper_left);

  rep.d_lower_right = one_sided_from_profile(rep.lower_right);
  rep.d_upper_right = one_sided_from_profile(rep.upper_right);
  rep.d_lower_left = one_sided_from_profile(rep.lower_left);
  rep.d_upper_left = one_sided_from_profile(rep.upper_left);
  rep.right_pairing = analyze_pairing(rep.lower_right, rep.upper_right);
  rep.left_pairing = analyze_pairing(rep.lower_left, rep.upper_left);

  for (const QuotientProfile* p :
       {&rep.lower_right, &rep.upper_right, &rep.lower_left, &rep.upper_left}) {
    if (p->inconclusive) {
      rep.status = DerivativeStatus::inconclusive;
      rep.reason = std::string(to_string(p->which)) + "-" + to_string(p->side) +
                   " profile did not stabilize: " + p->note;
      return rep;
    }
  }

  const double tol = plan.cluster_tol;
  const bool right_pair = rep.d_lower_right && rep.d_upper_right;
  const bool left_pair = rep.d_lower_left && rep.d_upper_left;

  if (right_pair && left_pair) {
    const Interval right = detail::interval_of(*rep.d_lower_right, *rep.d_upper_right);
    const Interval left = detail::interval_of(*rep.d_lower_left, *rep.d_upper_left);
    if (detail::intervals_match(right, left, tol)) {
      rep.status = DerivativeStatus::exists;
      rep.case_tag = CaseTag::i;
      rep.value = Interval(0.5 * (right.lo() + left.lo()), 0.5 * (right.hi() + left.hi()));
    } else {
      rep.status = DerivativeStatus::not_exists;
      rep.reason = "the one-sided derivative intervals differ: right " +
                   format_interval_estimate(right) + ", left " + format_interval_estimate(left);
    }
    return rep;
  }

  if (right_pair) {
    const Interval right = detail::interval_of(*rep.d_lower_right, *rep.d_upper_right);
    const auto& pg = rep.left_pairing;
    if (pg.inconclusive) {
      rep.status = DerivativeStatus::inconclusive;
      rep.reason = "left pairing did not stabilize: " + pg.note;
    } else if (!pg.complementary_pair) {
      rep.status = DerivativeStatus::not_exists;
      rep.reason = "the left endpoint derivatives do not exist and the left channels are "
                   "not complementary: " + pg.note;
    } else if (!detail::intervals_match(
                   right, Interval(pg.complementary_pair->first, pg.complementary_pair->second),
                   tol)) {
      rep.status = DerivativeStatus::not_exists;
      rep.reason = "the left complementary pair [" +
                   format_estimate(pg.complementary_pair->first) + ", " +
                   format_estimate(pg.complementary_pair->second) +
                   "] does not match the right one-sided interval " + format_interval_estimate(right);
    } else {
      rep.status = DerivativeStatus::exists;
      rep.case_tag = CaseTag::ii;
      rep.value = right;
    }
    return rep;
  }

  if (left_pair) {
    const Interval left = detail::interval_of(*rep.d_lower_left, *rep.d_upper_left);
    const auto& pg = rep.right_pairing;
    if (pg.inconclusive) {
      rep.status = DerivativeStatus::inconclusive;
      rep.reason = "right pairing did not stabilize: " + pg.note;
    } else if (!pg.complementary_pair) {
      rep.status = DerivativeStatus::not_exists;
      rep.reason = "the right endpoint derivatives do not exist and the right channels are "
                   "not complementary: " + pg.note;
    } else if (!detail::intervals_match(
                   left, Interval(pg.complementary_pair->first, pg.complementary_pair->second),
                   tol)) {
      rep.status = DerivativeStatus::not_exists;
      rep.reason = "the right complementary pair [" +
                   format_estimate(pg.complementary_pair->first) + ", " +
                   format_estimate(pg.complementary_pair->second) +
                   "] does not match the left one-sided interval " + format_interval_estimate(left);
    } else {
      rep.status = DerivativeStatus::exists;
      rep.case_tag = CaseTag::iii;
      rep.value = left;
    }
    return rep;
  }

  const auto& rp = rep.right_pairing;
  const auto& lp = rep.left_pairing;
  if (rp.inconclusive || lp.inconclusive) {
    rep.status = DerivativeStatus::inconclusive;
    rep.reason = "pairing did not stabilize: " + (rp.inconclusive ? rp.note : lp.note);
    return rep;
  }
  if (!rp.complementary_pair || !lp.complementary_pair) {
    rep.status = DerivativeStatus::not_exists;
    rep.reason = "no one-sided derivative pair exists and the channels are not "
                 "complementary on both sides";
    if (!rp.complementary_pair) rep.reason += " (right: " + rp.note + ")";
    if (!lp.complementary_pair) rep.reason += " (left: " + lp.note + ")";
    return rep;
  }
  const auto [rkl, rku] = *rp.complementary_pair;
  const auto [lkl, lku] = *lp.complementary_pair;
  if (std::abs(rkl - lkl) > tol || std::abs(rku - lku) > tol) {
    rep.status = DerivativeStatus::not_exists;
    rep.reason = "the complementary pairs differ between the sides: right [" +
                 format_estimate(rkl) + ", " + format_estimate(rku) + "], left [" +
                 format_estimate(lkl) + ", " + format_estimate(lku) + "]";
    return rep;
  }
  rep.status = DerivativeStatus::exists;
  rep.case_tag = CaseTag::iv;
  rep.value = Interval(0.5 * (rkl + lkl), 0.5 * (rku + lku));
  return rep;
}

/// One gradient coordinate: a report, or the evaluation error that stopped it.
struct GradientComponent {
  int coord = 1;
  std::optional<DerivativeReport> report;
  std::string error;
};

/// gH-gradient: one decision per coordinate. Evaluation errors are collected
/// per coordinate instead of aborting the remaining ones.
inline std::vector<GradientComponent> gh_gradient(const IvfSpec& spec,
                                                  std::span<const double> point,
                                                  const SamplingPlan& plan = {}) {
  std::vector<GradientComponent> out;
  out.reserve(static_cast<std::size_t>(spec.arity));
  for (int coord = 1; coord <= spec.arity; ++coord) {
    GradientComponent c;
    c.coord = coord;
    try {
      c.report = gh_partial(spec, point, coord, plan);
    } catch (const EvalError& e) {
      c.error = e.what();
    }
    out.push_back(std::move(c));
  }
  return out;
}

/// The gradient exists only when every coordinate exists.
inline bool gradient_exists(const std::vector<GradientComponent>& components) {
  for (const auto& c : components)
    if (!c.report || c.report->status != DerivativeStatus::exists) return false;
  return true;
}

}  // namespace ghcalc
