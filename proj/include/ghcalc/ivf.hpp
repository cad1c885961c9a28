#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ghcalc/ast.hpp"
#include "ghcalc/errors.hpp"

namespace ghcalc {

/// Which endpoint function of an interval-valued function.
enum class Bound { lower, upper };

inline const char* to_string(Bound b) { return b == Bound::lower ? "lower" : "upper"; }

/// Sign condition on a single coordinate: x<i> (< | > | =) 0.
/// Richer predicates are rejected at parse time.
struct Guard {
  enum class Rel { Less, Greater, Equal };

  int coord = 1;  // 1-based
  Rel rel = Rel::Less;

  bool holds(std::span<const double> point) const {
    const double x = point[static_cast<std::size_t>(coord - 1)];
    switch (rel) {
      case Rel::Less: return x < 0;
      case Rel::Greater: return x > 0;
      case Rel::Equal: return x == 0;
    }
    return false;
  }

  bool operator==(const Guard&) const = default;
};

inline std::string to_string(const Guard& g) {
  const char* rel = g.rel == Guard::Rel::Less ? "<" : g.rel == Guard::Rel::Greater ? ">" : "=";
  return "[x" + std::to_string(g.coord) + rel + "0]";
}

/// One named channel of a piecewise endpoint definition. The label stands in
/// for a predicate that cannot be sampled (rational vs irrational argument);
/// an absent guard means the channel is defined everywhere.
struct Branch {
  std::string label;
  std::optional<Guard> guard;
  ExprPtr expr;
};

inline bool equal(const Branch& a, const Branch& b) {
  return a.label == b.label && a.guard == b.guard && equal(a.expr, b.expr);
}

/// Endpoint function given as one or more labelled channels.
struct BranchedEndpoint {
  std::vector<Branch> branches;

  const Branch* find(std::string_view label) const {
    for (const auto& b : branches)
      if (b.label == label) return &b;
    return nullptr;
  }
};

inline bool equal(const BranchedEndpoint& a, const BranchedEndpoint& b) {
  if (a.branches.size() != b.branches.size()) return false;
  for (std::size_t i = 0; i < a.branches.size(); ++i)
    if (!equal(a.branches[i], b.branches[i])) return false;
  return true;
}

/// Interval-valued function of n real variables, given by lower and upper
/// endpoint functions. At every concrete point and admissible branch pair
/// the lower value must not exceed the upper value; the sampling engine
/// treats a violation as a model error.
struct IvfSpec {
  int arity = 1;
  BranchedEndpoint lower;
  BranchedEndpoint upper;

  const BranchedEndpoint& endpoint(Bound which) const {
    return which == Bound::lower ? lower : upper;
  }
};

inline bool equal(const IvfSpec& a, const IvfSpec& b) {
  return a.arity == b.arity && equal(a.lower, b.lower) && equal(a.upper, b.upper);
}

/// Value of the chosen branch expression at the point. The guard is not
/// consulted; callers pick the channel explicitly.
inline double eval_endpoint(const IvfSpec& spec, Bound which, std::string_view branch,
                            std::span<const double> point) {
  if (static_cast<int>(point.size()) != spec.arity)
    throw DimensionError("point has length " + std::to_string(point.size()) +
                         " but the function arity is " + std::to_string(spec.arity));
  const Branch* b = spec.endpoint(which).find(branch);
  if (!b)
    throw PreconditionError(std::string("no branch named '") + std::string(branch) +
                            "' in the " + to_string(which) + " endpoint");
  return eval(*b->expr, point);
}

namespace detail {

inline std::string print_endpoint(const BranchedEndpoint& e) {
  if (e.branches.size() == 1 && e.branches[0].label == "main" && !e.branches[0].guard)
    return to_string(*e.branches[0].expr);
  std::string out;
  for (std::size_t i = 0; i < e.branches.size(); ++i) {
    if (i) out += " | ";
    const Branch& b = e.branches[i];
    out += "branch " + b.label;
    if (b.guard) out += " " + to_string(*b.guard);
    out += ": " + to_string(*b.expr);
  }
  return out;
}

}  // namespace detail

/// Canonical one-line rendering; parse(pretty_print(s)) reproduces the AST.
inline std::string pretty_print(const IvfSpec& spec) {
  return "n=" + std::to_string(spec.arity) + "; L: " + detail::print_endpoint(spec.lower) +
         "; U: " + detail::print_endpoint(spec.upper);
}

}  // namespace ghcalc
