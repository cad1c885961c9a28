#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "ghcalc/errors.hpp"
#include "ghcalc/interval.hpp"

namespace ghcalc {

/// Ordered n-tuple of intervals, n >= 1.
class IntervalVector {
public:
  IntervalVector(std::initializer_list<Interval> items) : items_(items) { check(); }
  explicit IntervalVector(std::vector<Interval> items) : items_(std::move(items)) { check(); }

  std::size_t size() const noexcept { return items_.size(); }
  const Interval& operator[](std::size_t i) const noexcept { return items_[i]; }
  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }

  /// The vector of lower endpoints.
  std::vector<double> lowers() const {
    std::vector<double> out;
    out.reserve(items_.size());
    for (const auto& k : items_) out.push_back(k.lo());
    return out;
  }

  /// The vector of upper endpoints.
  std::vector<double> uppers() const {
    std::vector<double> out;
    out.reserve(items_.size());
    for (const auto& k : items_) out.push_back(k.hi());
    return out;
  }

  bool operator==(const IntervalVector&) const = default;

private:
  void check() const {
    if (items_.empty()) throw ValidationError("interval tuple must have length >= 1");
  }
  std::vector<Interval> items_;
};

/// Ordered tuple of finite reals, n >= 1.
class RealVector {
public:
  RealVector(std::initializer_list<double> items) : items_(items) { check(); }
  explicit RealVector(std::vector<double> items) : items_(std::move(items)) { check(); }

  std::size_t size() const noexcept { return items_.size(); }
  double operator[](std::size_t i) const noexcept { return items_[i]; }
  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }
  const std::vector<double>& values() const noexcept { return items_; }

  bool zero() const noexcept {
    for (double v : items_)
      if (v != 0.0) return false;
    return true;
  }

  bool operator==(const RealVector&) const = default;

private:
  void check() const {
    if (items_.empty()) throw ValidationError("real tuple must have length >= 1");
    for (double v : items_)
      if (!std::isfinite(v)) throw ValidationError("real tuple entries must be finite");
  }
  std::vector<double> items_;
};

inline RealVector operator-(const RealVector& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (double x : v) out.push_back(-x);
  return RealVector(std::move(out));
}

inline RealVector operator*(double s, const RealVector& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (double x : v) out.push_back(s * x);
  return RealVector(std::move(out));
}

inline RealVector operator+(const RealVector& a, const RealVector& b) {
  if (a.size() != b.size()) throw DimensionError("vector lengths differ");
  std::vector<double> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
  return RealVector(std::move(out));
}

}  // namespace ghcalc
