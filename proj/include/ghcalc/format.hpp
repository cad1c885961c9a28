#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

namespace ghcalc {

/// Shortest decimal form that parses back to the same double.
inline std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

/// Display form for numeric limit estimates. The sampler resolves limits to
/// an absolute precision well above 1e-6, so displayed values snap to that
/// grid; anything finer is rounding noise. Machine output keeps raw doubles.
inline std::string format_estimate(double v) {
  const double snapped = std::round(v * 1e6) / 1e6;
  if (snapped == 0.0) return "0";
  return format_double(snapped);
}

}  // namespace ghcalc
