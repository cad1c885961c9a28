#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ghcalc/errors.hpp"
#include "ghcalc/ivf.hpp"
#include "ghcalc/sampling.hpp"

namespace ghcalc {

/// One sampled difference quotient gamma(t) = (f(x + t e_i) - f(x)) / t.
struct QuotientSample {
  double t = 0.0;       // signed offset actually applied (made representable)
  double value = 0.0;   // f(x + t e_i)
  double gamma = 0.0;
  double noise = 0.0;   // conservative rounding bound on gamma
};

/// Limit estimate for one quotient sequence.
struct LimitEstimate {
  bool exists = false;
  double value = 0.0;
  int used = 0;          // samples that survived the noise screen
  double tail_spread = std::numeric_limits<double>::quiet_NaN();
  std::string note;      // why the estimate was refused, when it was
};

/// Quotient data for one branch channel on one side.
struct BranchQuotients {
  std::string label;
  std::vector<QuotientSample> samples;  // |t| strictly decreasing
  LimitEstimate limit;
};

/// Sampled one-sided difference-quotient profile of one endpoint function.
///
/// cluster_set holds the tolerance-merged accumulation points of the
/// channels (their limit estimates; for a channel that refused to
/// stabilize, its trailing quotients stand in and the profile is flagged
/// inconclusive). min_limit / max_limit are the limits of the pointwise
/// min / max across the profile's own channels at matched t.
struct QuotientProfile {
  Bound which = Bound::lower;
  Side side = Side::right;
  int coord = 1;
  std::vector<double> point;
  double base_value = 0.0;
  std::string base_branch;
  std::vector<BranchQuotients> branches;
  std::vector<double> cluster_set;  // ascending
  std::optional<double> min_limit;
  std::optional<double> max_limit;
  bool inconclusive = false;
  std::string note;
  SamplingPlan plan;
};

namespace detail {

/// Robust limit of a geometric-step quotient sequence.
///
/// Samples whose rounding bound exceeds a fraction of limit_tol are dropped
/// (they carry no information about the limit), one Richardson level with
/// the known step ratio removes the O(t) term, and the accelerated tail
/// must settle: spread of its final third below limit_tol and the last move
/// below limit_tol. The last accelerated value is reported.
inline LimitEstimate estimate_limit(std::span<const double> gamma,
                                    std::span<const double> noise, double ratio,
                                    double limit_tol) {
  LimitEstimate out;
  const double noise_cap = 0.25 * limit_tol * (1.0 - ratio) / (1.0 + ratio);
  std::size_t kept = 0;
  while (kept < gamma.size() && noise[kept] <= noise_cap) ++kept;
  out.used = static_cast<int>(kept);
  if (kept < 6) {
    out.note = "only " + std::to_string(kept) +
               " samples clear the rounding floor; need at least 6";
    return out;
  }

  std::vector<double> acc(kept - 1);
  for (std::size_t k = 0; k + 1 < kept; ++k)
    acc[k] = (gamma[k + 1] - ratio * gamma[k]) / (1.0 - ratio);

  const std::size_t tail_len = (acc.size() + 2) / 3;
  const auto tail_begin = acc.end() - static_cast<std::ptrdiff_t>(tail_len);
  const auto [mn, mx] = std::minmax_element(tail_begin, acc.end());
  out.tail_spread = *mx - *mn;
  if (!(out.tail_spread < limit_tol)) {
    out.note = "accelerated tail spread " + std::to_string(out.tail_spread) +
               " exceeds limit_tol";
    return out;
  }
  const double last_move = std::abs(acc[acc.size() - 1] - acc[acc.size() - 2]);
  if (!(last_move < limit_tol)) {
    out.note = "limit estimate still moving by " + std::to_string(last_move);
    return out;
  }
  out.exists = true;
  out.value = acc.back();
  return out;
}

/// Single-linkage merge of values into clusters of radius tol; returns the
/// cluster means, ascending.
inline std::vector<double> merge_clusters(std::vector<double> values, double tol) {
  if (values.empty()) return {};
  std::sort(values.begin(), values.end());
  std::vector<double> out;
  double sum = values[0];
  int count = 1;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] - values[i - 1] <= tol) {
      sum += values[i];
      ++count;
    } else {
      out.push_back(sum / count);
      sum = values[i];
      count = 1;
    }
  }
  out.push_back(sum / count);
  return out;
}

inline EvalBound eval_branch_at(const Branch& branch, std::span<const double> point) {
  return eval_bound(*branch.expr, point);
}

inline std::string point_text(std::span<const double> p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ", ";
    out += format_double(p[i]);
  }
  return out + ")";
}

/// Base value f(x): taken from the branch whose guard holds at the point
/// itself. Several branches may be valid there; they must agree.
inline std::pair<EvalBound, std::string> base_value_at(const BranchedEndpoint& endpoint,
                                                       Bound which,
                                                       std::span<const double> point) {
  const Branch* first = nullptr;
  EvalBound value;
  for (const auto& b : endpoint.branches) {
    if (b.guard && !b.guard->holds(point)) continue;
    const EvalBound v = eval_branch_at(b, point);
    if (!first) {
      first = &b;
      value = v;
    } else if (std::abs(v.value - value.value) > 1e-9 * std::max(1.0, std::abs(value.value))) {
      throw EvalError(std::string("model error: ") + to_string(which) +
                      " endpoint is ambiguous at the base point " + point_text(point) +
                      ": branch '" + first->label + "' gives " + format_double(value.value) +
                      " but branch '" + b.label + "' gives " + format_double(v.value));
    }
  }
  if (!first)
    throw EvalError(std::string("no branch of the ") + to_string(which) +
                    " endpoint is valid at the base point " + point_text(point));
  return {value, first->label};
}

constexpr double kNoiseFactor = 2.0;  // headroom over the first-order bound

}  // namespace detail

/// Samples the one-sided difference quotients of one endpoint function along
/// every branch channel defined on that side, estimates per-channel limits,
/// and aggregates the cluster set and the cross-channel min/max limits.
///
/// f(x) comes from the branch valid at the point itself; branch expressions
/// supply f(x + t e_i) only. A branch participates on the side when its
/// guard holds at every sampled point there; a guard that flips inside the
/// sample range is an error (the point must be interior to each guard's
/// one-sided domain).
inline QuotientProfile quotient_profile(const IvfSpec& spec, Bound which,
                                        std::span<const double> point, int coord,
                                        Side side, const SamplingPlan& plan) {
  if (static_cast<int>(point.size()) != spec.arity)
    throw DimensionError("point has length " + std::to_string(point.size()) +
                         " but the function arity is " + std::to_string(spec.arity));
  if (coord < 1 || coord > spec.arity)
    throw PreconditionError("coordinate index " + std::to_string(coord) +
                            " is out of range 1.." + std::to_string(spec.arity));
  plan.validate(point[static_cast<std::size_t>(coord - 1)]);

  QuotientProfile out;
  out.which = which;
  out.side = side;
  out.coord = coord;
  out.point.assign(point.begin(), point.end());
  out.plan = plan;

  const BranchedEndpoint& endpoint = spec.endpoint(which);
  const auto [base, base_branch] = detail::base_value_at(endpoint, which, point);
  out.base_value = base.value;
  out.base_branch = base_branch;

  const double x_i = point[static_cast<std::size_t>(coord - 1)];
  std::vector<double> probe(point.begin(), point.end());

  // offsets, made exactly representable relative to x_i
  std::vector<double> offsets(static_cast<std::size_t>(plan.count));
  std::vector<double> abscissae(offsets.size());
  for (int k = 0; k < plan.count; ++k) {
    const double xt = x_i + plan.step(side, k);
    const double t_eff = xt - x_i;
    if (t_eff == 0.0)
      throw EvalError("sample step underflowed at k=" + std::to_string(k));
    offsets[static_cast<std::size_t>(k)] = t_eff;
    abscissae[static_cast<std::size_t>(k)] = xt;
  }

  const double eps = std::numeric_limits<double>::epsilon();
  for (const auto& branch : endpoint.branches) {
    int holds = 0;
    if (branch.guard) {
      for (double xt : abscissae) {
        probe[static_cast<std::size_t>(coord - 1)] = xt;
        if (branch.guard->holds(probe)) ++holds;
      }
      if (holds == 0) continue;
      if (holds != plan.count)
        throw EvalError("guard " + to_string(*branch.guard) + " of branch '" +
                        branch.label + "' is not constant over the " +
                        std::string(to_string(side)) + " samples of coordinate x" +
                        std::to_string(coord));
    }
    BranchQuotients bq;
    bq.label = branch.label;
    bq.samples.reserve(offsets.size());
    for (std::size_t k = 0; k < offsets.size(); ++k) {
      probe[static_cast<std::size_t>(coord - 1)] = abscissae[k];
      EvalBound f;
      try {
        f = detail::eval_branch_at(branch, probe);
      } catch (const EvalError& e) {
        throw EvalError(std::string(e.what()) + " while sampling branch '" + branch.label +
                        "' at " + detail::point_text(probe));
      }
      QuotientSample s;
      s.t = offsets[k];
      s.value = f.value;
      s.gamma = (f.value - base.value) / offsets[k];
      // evaluation bounds propagated through (f - base)/t, plus the
      // subtraction and division roundings themselves
      s.noise = detail::kNoiseFactor * eps *
                ((f.weight + base.weight) / std::abs(offsets[k]) + 2.0 * std::abs(s.gamma));
      bq.samples.push_back(s);
    }
    std::vector<double> gammas, noises;
    gammas.reserve(bq.samples.size());
    noises.reserve(bq.samples.size());
    for (const auto& s : bq.samples) {
      gammas.push_back(s.gamma);
      noises.push_back(s.noise);
    }
    bq.limit = detail::estimate_limit(gammas, noises, plan.ratio, plan.limit_tol);
    out.branches.push_back(std::move(bq));
  }

  if (out.branches.empty())
    throw EvalError(std::string("no branch of the ") + to_string(which) +
                    " endpoint is defined on the " + to_string(side) +
                    " side of coordinate x" + std::to_string(coord) + " at " +
                    detail::point_text(point));

  // cluster set and inconclusiveness
  std::vector<double> cluster_source;
  for (const auto& bq : out.branches) {
    if (bq.limit.exists) {
      cluster_source.push_back(bq.limit.value);
    } else {
      out.inconclusive = true;
      if (!out.note.empty()) out.note += "; ";
      out.note += "branch '" + bq.label + "': " + bq.limit.note;
      const std::size_t tail = (bq.samples.size() + 2) / 3;
      for (std::size_t k = bq.samples.size() - std::min(tail, bq.samples.size());
           k < bq.samples.size(); ++k)
        cluster_source.push_back(bq.samples[k].gamma);
    }
  }
  out.cluster_set = detail::merge_clusters(std::move(cluster_source), plan.cluster_tol);

  // pointwise min / max across the profile's own channels at matched t
  const std::size_t m = out.branches.front().samples.size();
  std::vector<double> mins(m), maxs(m), mnoise(m);
  for (std::size_t k = 0; k < m; ++k) {
    double lo = out.branches.front().samples[k].gamma;
    double hi = lo;
    double nz = out.branches.front().samples[k].noise;
    for (const auto& bq : out.branches) {
      lo = std::min(lo, bq.samples[k].gamma);
      hi = std::max(hi, bq.samples[k].gamma);
      nz = std::max(nz, bq.samples[k].noise);
    }
    mins[k] = lo;
    maxs[k] = hi;
    mnoise[k] = nz;
  }
  const LimitEstimate lo_est = detail::estimate_limit(mins, mnoise, plan.ratio, plan.limit_tol);
  const LimitEstimate hi_est = detail::estimate_limit(maxs, mnoise, plan.ratio, plan.limit_tol);
  if (lo_est.exists) out.min_limit = lo_est.value;
  if (hi_est.exists) out.max_limit = hi_est.value;
  return out;
}

/// The one-sided endpoint derivative: present when every channel stabilized
/// to the same limit (within cluster_tol); absent when the channels disagree
/// (two accumulation points) or did not stabilize.
inline std::optional<double> one_sided_from_profile(const QuotientProfile& profile) {
  if (profile.inconclusive) return std::nullopt;
  double lo = profile.branches.front().limit.value;
  double hi = lo;
  double sum = 0.0;
  for (const auto& bq : profile.branches) {
    if (!bq.limit.exists) return std::nullopt;
    lo = std::min(lo, bq.limit.value);
    hi = std::max(hi, bq.limit.value);
    sum += bq.limit.value;
  }
  if (hi - lo > profile.plan.cluster_tol) return std::nullopt;
  return sum / static_cast<double>(profile.branches.size());
}

/// Convenience wrapper building the profile and extracting the one-sided
/// endpoint derivative.
inline std::optional<double> endpoint_one_sided(const IvfSpec& spec, Bound which,
                                                std::span<const double> point, int coord,
                                                Side side, const SamplingPlan& plan) {
  return one_sided_from_profile(quotient_profile(spec, which, point, coord, side, plan));
}

}  // namespace ghcalc
