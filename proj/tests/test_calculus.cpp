#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "ghcalc/derivative.hpp"
#include "ghcalc/parse.hpp"
#include "ghcalc/reference_suite.hpp"
#include "ghcalc/report_json.hpp"
#include "oracle.hpp"

using namespace ghcalc;

namespace {

const std::vector<double> kOrigin{0.0, 0.0};
const SamplingPlan kPlan;  // defaults

bool close(double a, double b, double tol = 2e-4) { return std::abs(a - b) <= tol; }

bool close(const Interval& a, const Interval& b, double tol = 2e-4) {
  return close(a.lo(), b.lo(), tol) && close(a.hi(), b.hi(), tol);
}

}  // namespace

TEST_CASE("sampling plan validation") {
  CHECK_NOTHROW(kPlan.validate(0.0));
  CHECK_NOTHROW(kPlan.validate(3.0));
  CHECK(kPlan.step(Side::left, 0) == -kPlan.t0);
  CHECK(kPlan.step(Side::right, 2) == kPlan.t0 * 0.25);

  SamplingPlan bad = kPlan;
  bad.t0 = -1;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = kPlan;
  bad.ratio = 1.5;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = kPlan;
  bad.count = 0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = kPlan;
  bad.limit_tol = 0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = kPlan;
  bad.cluster_tol = -1e-4;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  // smallest step under the rounding floor of x_i + t at a large coordinate
  CHECK_THROWS_AS(kPlan.validate(1e6), ValidationError);
}

TEST_CASE("quotient profiles of the worked examples") {
  const IvfSpec mirror = parse(corpus::kMirrorAbs);
  const IvfSpec kinked = parse(corpus::kKinkedSine);
  const IvfSpec split = parse(corpus::kSplitLeft);

  SECTION("single kinked channel, right side") {
    const auto p = quotient_profile(mirror, Bound::lower, kOrigin, 1, Side::right, kPlan);
    REQUIRE(p.branches.size() == 1);
    REQUIRE(p.branches[0].limit.exists);
    CHECK(close(p.branches[0].limit.value, -1.0));
    CHECK_FALSE(p.inconclusive);
    REQUIRE(p.cluster_set.size() == 1);  // singleton cluster for a single channel
    CHECK(close(p.cluster_set[0], -1.0));
    CHECK(p.base_value == 0.0);
  }

  SECTION("kink plus sine, right side of the lower endpoint") {
    const auto p = quotient_profile(kinked, Bound::lower, kOrigin, 1, Side::right, kPlan);
    REQUIRE(p.branches[0].limit.exists);
    CHECK(close(p.branches[0].limit.value, 2.0));
  }

  SECTION("two channels on the left: cluster pair and envelope limits") {
    const auto p = quotient_profile(split, Bound::lower, kOrigin, 1, Side::left, kPlan);
    REQUIRE(p.branches.size() == 2);
    REQUIRE(p.cluster_set.size() == 2);
    CHECK(close(p.cluster_set[0], 1.0));
    CHECK(close(p.cluster_set[1], 2.0));
    REQUIRE(p.min_limit.has_value());
    REQUIRE(p.max_limit.has_value());
    CHECK(close(*p.min_limit, 1.0));
    CHECK(close(*p.max_limit, 2.0));
    CHECK(p.base_value == 0.0);
    CHECK(p.base_branch == "origin");
  }

  SECTION("the base value comes from the branch valid at the point") {
    const auto p = quotient_profile(split, Bound::upper, kOrigin, 1, Side::left, kPlan);
    CHECK(p.base_value == 1.0);
    CHECK(p.base_branch == "origin");
  }
}

TEST_CASE("one-sided endpoint derivatives") {
  const IvfSpec kinked = parse(corpus::kKinkedSine);
  const IvfSpec split = parse(corpus::kSplitLeft);

  const auto up_r = endpoint_one_sided(kinked, Bound::upper, kOrigin, 1, Side::right, kPlan);
  REQUIRE(up_r.has_value());
  CHECK(close(*up_r, -6.0));

  const auto up_l = endpoint_one_sided(kinked, Bound::upper, kOrigin, 1, Side::left, kPlan);
  REQUIRE(up_l.has_value());
  CHECK(close(*up_l, -8.0));

  // two distinct channel limits: no one-sided derivative
  CHECK_FALSE(endpoint_one_sided(split, Bound::lower, kOrigin, 1, Side::left, kPlan).has_value());
}

TEST_CASE("complementary channels") {
  const IvfSpec split = parse(corpus::kSplitLeft);
  const IvfSpec parallel = parse(corpus::kSplitLeftParallel);

  SECTION("the split example is left complementary with (1, 2)") {
    const auto lo = quotient_profile(split, Bound::lower, kOrigin, 1, Side::left, kPlan);
    const auto up = quotient_profile(split, Bound::upper, kOrigin, 1, Side::left, kPlan);
    const auto c = complementary(lo, up);
    REQUIRE(c.has_value());
    CHECK(close(c->first, 1.0));
    CHECK(close(c->second, 2.0));
    const auto pairing = analyze_pairing(lo, up);
    CHECK(pairing.label_matched);
    CHECK(pairing.pairs.size() == 2);
  }

  SECTION("parallel channels are not complementary: the min keeps oscillating") {
    const auto lo = quotient_profile(parallel, Bound::lower, kOrigin, 1, Side::left, kPlan);
    const auto up = quotient_profile(parallel, Bound::upper, kOrigin, 1, Side::left, kPlan);
    CHECK_FALSE(complementary(lo, up).has_value());
    const auto pairing = analyze_pairing(lo, up);
    CHECK_FALSE(pairing.inconclusive);
    CHECK(pairing.note.find("pointwise") != std::string::npos);
  }

  SECTION("singleton cluster sets are never complementary") {
    const IvfSpec degenerate = parse("n=1; L: x1; U: x1");
    const std::vector<double> p{0.0};
    const auto lo = quotient_profile(degenerate, Bound::lower, p, 1, Side::left, kPlan);
    const auto up = quotient_profile(degenerate, Bound::upper, p, 1, Side::left, kPlan);
    CHECK_FALSE(complementary(lo, up).has_value());
  }

  SECTION("profile order is enforced") {
    const auto lo = quotient_profile(split, Bound::lower, kOrigin, 1, Side::left, kPlan);
    const auto up = quotient_profile(split, Bound::upper, kOrigin, 1, Side::left, kPlan);
    CHECK_THROWS_AS(analyze_pairing(up, lo), PreconditionError);
    const auto lo_r = quotient_profile(split, Bound::lower, kOrigin, 1, Side::right, kPlan);
    CHECK_THROWS_AS(analyze_pairing(lo_r, up), PreconditionError);
  }
}

TEST_CASE("partial derivative decision across the worked examples") {
  SECTION("mirror-abs: both one-sided intervals agree") {
    const auto r = gh_partial(parse(corpus::kMirrorAbs), kOrigin, 1, kPlan);
    REQUIRE(r.status == DerivativeStatus::exists);
    CHECK(r.case_tag == CaseTag::i);
    CHECK(close(*r.value, Interval(-1, 1)));
  }

  SECTION("kinked-sine: all four exist but the sides differ") {
    const auto r = gh_partial(parse(corpus::kKinkedSine), kOrigin, 1, kPlan);
    REQUIRE(r.status == DerivativeStatus::not_exists);
    CHECK(close(detail::interval_of(*r.d_lower_right, *r.d_upper_right), Interval(-6, 2)));
    CHECK(close(detail::interval_of(*r.d_lower_left, *r.d_upper_left), Interval(-8, 0)));
    CHECK(r.reason.find("differ") != std::string::npos);
  }

  SECTION("split-left: right pair plus left complementarity") {
    const auto r = gh_partial(parse(corpus::kSplitLeft), kOrigin, 1, kPlan);
    REQUIRE(r.status == DerivativeStatus::exists);
    CHECK(r.case_tag == CaseTag::ii);
    CHECK(close(*r.value, Interval(1, 2)));
  }

  SECTION("split-parallel: complementarity fails") {
    const auto r = gh_partial(parse(corpus::kSplitLeftParallel), kOrigin, 1, kPlan);
    REQUIRE(r.status == DerivativeStatus::not_exists);
    CHECK(r.reason.find("complementary") != std::string::npos);
  }

  SECTION("split-right: the mirror clause") {
    const auto r = gh_partial(parse(corpus::kSplitRight), kOrigin, 1, kPlan);
    REQUIRE(r.status == DerivativeStatus::exists);
    CHECK(r.case_tag == CaseTag::iii);
    CHECK(close(*r.value, Interval(1, 2)));
  }

  SECTION("split-both: complementary on both sides") {
    const auto r = gh_partial(parse(corpus::kSplitBoth), kOrigin, 1, kPlan);
    REQUIRE(r.status == DerivativeStatus::exists);
    CHECK(r.case_tag == CaseTag::iv);
    CHECK(close(*r.value, Interval(1, 2)));
  }

  SECTION("smooth endpoints away from the kink") {
    const IvfSpec s = parse("n=2; L: x1^2; U: x1^2 + 1");
    const std::vector<double> p{3.0, 0.0};
    const auto r = gh_partial(s, p, 1, kPlan);
    REQUIRE(r.status == DerivativeStatus::exists);
    CHECK(r.case_tag == CaseTag::i);
    CHECK(close(*r.value, Interval(6, 6)));
  }
}

TEST_CASE("gradient") {
  SECTION("mirror-abs at the origin") {
    const auto g = gh_gradient(parse(corpus::kMirrorAbs), kOrigin, kPlan);
    REQUIRE(g.size() == 2);
    REQUIRE(g[0].report);
    REQUIRE(g[1].report);
    CHECK(close(*g[0].report->value, Interval(-1, 1)));
    CHECK(close(*g[1].report->value, Interval(0, 0)));
    CHECK(gradient_exists(g));
  }

  SECTION("a degenerate real function embeds its gradient") {
    const IvfSpec s = parse("n=2; L: x1 + 2*x2; U: x1 + 2*x2");
    const std::vector<double> p{1.0, 1.0};
    const auto g = gh_gradient(s, p, kPlan);
    CHECK(close(*g[0].report->value, Interval(1, 1)));
    CHECK(close(*g[1].report->value, Interval(2, 2)));
    CHECK(gradient_exists(g));
  }

  SECTION("split-left: x exists, y does not (the origin channel carries |y|)") {
    const auto g = gh_gradient(parse(corpus::kSplitLeft), kOrigin, kPlan);
    REQUIRE(g[0].report);
    CHECK(g[0].report->status == DerivativeStatus::exists);
    CHECK(close(*g[0].report->value, Interval(1, 2)));
    REQUIRE(g[1].report);
    CHECK(g[1].report->status == DerivativeStatus::not_exists);
    CHECK(close(detail::interval_of(*g[1].report->d_lower_right, *g[1].report->d_upper_right),
                Interval(0, 1)));
    CHECK(close(detail::interval_of(*g[1].report->d_lower_left, *g[1].report->d_upper_left),
                Interval(-1, 0)));
    CHECK_FALSE(gradient_exists(g));
  }

  SECTION("kinked-sine at the origin: x fails, y is flat") {
    const auto g = gh_gradient(parse(corpus::kKinkedSine), kOrigin, kPlan);
    CHECK(g[0].report->status == DerivativeStatus::not_exists);
    CHECK(g[1].report->status == DerivativeStatus::exists);
    CHECK(close(*g[1].report->value, Interval(0, 0)));
    CHECK_FALSE(gradient_exists(g));
  }

  SECTION("evaluation failures are collected per coordinate") {
    const IvfSpec s = parse("n=2; L: sqrt(x1); U: sqrt(x1) + x2^2");
    const std::vector<double> p{0.0, 1.0};  // left samples hit sqrt of a negative
    const auto g = gh_gradient(s, p, kPlan);
    REQUIRE(g.size() == 2);
    CHECK_FALSE(g[0].report);
    CHECK(g[0].error.find("sqrt") != std::string::npos);
    REQUIRE(g[1].report);  // x2 direction never leaves the domain
    CHECK(g[1].report->status == DerivativeStatus::exists);
  }
}

TEST_CASE("agreement with a central-difference oracle on smooth pairs") {
  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> pt(-1.5, 1.5);
  for (int trial = 0; trial < 8; ++trial) {
    const oracle::SmoothFn lower = oracle::random_fn(rng);
    const oracle::SmoothFn upper = lower.plus(oracle::random_margin(rng));
    IvfSpec spec;
    spec.arity = 2;
    spec.lower.branches.push_back(Branch{"main", std::nullopt, lower.ast()});
    spec.upper.branches.push_back(Branch{"main", std::nullopt, upper.ast()});
    for (int k = 0; k < 3; ++k) {
      const std::vector<double> p{pt(rng), pt(rng)};
      for (int coord = 1; coord <= 2; ++coord) {
        const auto r = gh_partial(spec, p, coord, kPlan);
        REQUIRE(r.status == DerivativeStatus::exists);
        const double dl = oracle::central_diff(lower, p[0], p[1], coord);
        const double du = oracle::central_diff(upper, p[0], p[1], coord);
        CHECK(close(*r.value, Interval(std::min(dl, du), std::max(dl, du))));
      }
    }
  }
}

TEST_CASE("the [min,max] construction is symmetric in its two arguments") {
  const auto r = gh_partial(parse(corpus::kMirrorAbs), kOrigin, 1, kPlan);
  const Interval ab = detail::interval_of(*r.d_lower_right, *r.d_upper_right);
  const Interval ba = detail::interval_of(*r.d_upper_right, *r.d_lower_right);
  CHECK(ab == ba);
  REQUIRE(r.value);
  CHECK(close(*r.value, ab));
}

TEST_CASE("degenerate functions embed the real derivative") {
  const IvfSpec s = parse("n=2; L: sin(x1) + x2^2; U: sin(x1) + x2^2");
  const std::vector<double> p{0.3, 0.7};
  const auto r = gh_partial(s, p, 1, kPlan);
  REQUIRE(r.status == DerivativeStatus::exists);
  CHECK(close(*r.value, Interval::point(std::cos(0.3))));
}

TEST_CASE("reports are deterministic bit for bit") {
  const IvfSpec s = parse(corpus::kSplitLeft);
  const auto a = to_json(gh_partial(s, kOrigin, 1, kPlan)).dump();
  const auto b = to_json(gh_partial(s, kOrigin, 1, kPlan)).dump();
  CHECK(a == b);
}

TEST_CASE("no false existence across the plan grid") {
  const IvfSpec kinked = parse(corpus::kKinkedSine);
  const IvfSpec parallel = parse(corpus::kSplitLeftParallel);
  for (double t0 : {1e-2, 1e-3})
    for (double ratio : {0.5, 0.3})
      for (int count : {24, 40}) {
        SamplingPlan plan;
        plan.t0 = t0;
        plan.ratio = ratio;
        plan.count = count;
        CAPTURE(t0, ratio, count);
        CHECK(gh_partial(kinked, kOrigin, 1, plan).status != DerivativeStatus::exists);
        CHECK(gh_partial(parallel, kOrigin, 1, plan).status != DerivativeStatus::exists);
      }
}

TEST_CASE("rescaling the variable rescales the derivative") {
  const IvfSpec s = parse("n=2; L: -abs(2*x1)+x2^2; U: abs(2*x1)+x2^2");
  const auto r = gh_partial(s, kOrigin, 1, kPlan);
  REQUIRE(r.status == DerivativeStatus::exists);
  CHECK(close(*r.value, Interval(-2, 2)));
}

TEST_CASE("sampling failure modes") {
  SECTION("domain errors carry the failing sample") {
    const IvfSpec s = parse("n=1; L: sqrt(x1); U: sqrt(x1)");
    const std::vector<double> p{0.0};
    CHECK_THROWS_WITH(quotient_profile(s, Bound::lower, p, 1, Side::left, kPlan),
                      Catch::Matchers::ContainsSubstring("sampling"));
  }

  SECTION("ambiguous base point") {
    const IvfSpec s = parse("n=1; L: branch a: x1 | branch b: 2*x1 + 1;"
                            " U: branch a: x1 + 5 | branch b: 2*x1 + 5");
    const std::vector<double> p{1.0};
    CHECK_THROWS_WITH(quotient_profile(s, Bound::lower, p, 1, Side::right, kPlan),
                      Catch::Matchers::ContainsSubstring("ambiguous"));
  }

  SECTION("guard must be constant over the sampled side") {
    const IvfSpec s = parse("n=1; L: branch pos [x1>0]: x1 | branch neg [x1<0]: -x1"
                            " | branch origin [x1=0]: 0; U: 99");
    const std::vector<double> p{0.005};  // the left range straddles 0
    CHECK_THROWS_WITH(quotient_profile(s, Bound::lower, p, 1, Side::left, kPlan),
                      Catch::Matchers::ContainsSubstring("not constant"));
  }

  SECTION("a side with no defined branch is an error") {
    const IvfSpec s = parse("n=1; L: branch origin [x1=0]: 0 | branch pos [x1>0]: x1; U: 99");
    const std::vector<double> p{0.0};
    CHECK_NOTHROW(quotient_profile(s, Bound::lower, p, 1, Side::right, kPlan));
    CHECK_THROWS_WITH(quotient_profile(s, Bound::lower, p, 1, Side::left, kPlan),
                      Catch::Matchers::ContainsSubstring("no branch"));
  }

  SECTION("no branch valid at the base point") {
    const IvfSpec s = parse("n=1; L: branch pos [x1>0]: x1; U: 99");
    const std::vector<double> p{-1.0};
    CHECK_THROWS_WITH(quotient_profile(s, Bound::lower, p, 1, Side::left, kPlan),
                      Catch::Matchers::ContainsSubstring("base point"));
  }

  SECTION("a model ordering violation is reported") {
    const IvfSpec s = parse("n=1; L: x1 + 1; U: x1");  // lower above upper
    const std::vector<double> p{0.0};
    CHECK_THROWS_WITH(gh_partial(s, p, 1, kPlan),
                      Catch::Matchers::ContainsSubstring("model error"));
  }

  SECTION("an oscillating quotient is inconclusive, never an answer") {
    const IvfSpec s = parse(
        "n=1;"
        " L: branch oscp [x1>0]: x1*sin(1/x1) | branch oscn [x1<0]: x1*sin(1/x1)"
        " | branch origin [x1=0]: 0;"
        " U: branch oscp [x1>0]: x1*sin(1/x1) + 1 | branch oscn [x1<0]: x1*sin(1/x1) + 1"
        " | branch origin [x1=0]: 1");
    const std::vector<double> p{0.0};
    const auto r = gh_partial(s, p, 1, kPlan);
    CHECK(r.status == DerivativeStatus::inconclusive);
  }
}
