#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>

#include "ghcalc/interval.hpp"

using namespace ghcalc;

namespace {

std::mt19937 rng(20240611);

Interval random_int_interval(int span = 10) {
  std::uniform_int_distribution<int> d(-span, span);
  int a = d(rng), b = d(rng);
  if (a > b) std::swap(a, b);
  return Interval(a, b);
}

Interval random_real_interval() {
  std::uniform_real_distribution<double> d(-10.0, 10.0);
  double a = d(rng), b = d(rng);
  if (a > b) std::swap(a, b);
  return Interval(a, b);
}

}  // namespace

TEST_CASE("interval construction enforces the invariants") {
  CHECK(Interval(1, 2).lo() == 1);
  CHECK(Interval(3, 3).width() == 0);
  CHECK_THROWS_AS(Interval(2, 1), ValidationError);
  CHECK_THROWS_AS(Interval(std::nan(""), 1), ValidationError);
  CHECK_THROWS_AS(Interval(0, std::numeric_limits<double>::infinity()), ValidationError);
  CHECK_THROWS_AS(Interval(-std::numeric_limits<double>::infinity(), 0), ValidationError);
}

TEST_CASE("interval sum") {
  CHECK(add(Interval(0, 1), Interval(0, 1)) == Interval(0, 2));
  CHECK(add(Interval(1, 2), Interval(-2, -1)) == Interval(-1, 1));
  CHECK(add(Interval(-2, -2), Interval(6, 7)) == Interval(4, 5));
  // endpoint-sum oracle: [-4+6, -2+7]
  CHECK(add(Interval(-4, -2), Interval(6, 7)) == Interval(2, 5));
  CHECK_THROWS_AS(add(Interval(-1e308, 1e308), Interval(-1e308, 1e308)), OverflowError);
}

TEST_CASE("negation") {
  CHECK(neg(Interval(0, 1)) == Interval(-1, 0));
  CHECK(neg(Interval(1, 2)) == Interval(-2, -1));
  CHECK(neg(Interval(-3, 5)) == Interval(-5, 3));
}

TEST_CASE("Minkowski difference") {
  CHECK(minkowski_sub(Interval(0, 1), Interval(0, 1)) == Interval(-1, 1));
  CHECK(minkowski_sub(Interval(1, 2), Interval(1, 2)) == Interval(-1, 1));
  CHECK(minkowski_sub(Interval(5, 5), Interval(2, 2)) == Interval(3, 3));

  for (int i = 0; i < 2000; ++i) {
    const Interval a = random_real_interval(), b = random_real_interval();
    CHECK(minkowski_sub(a, b) == add(a, neg(b)));
  }
}

TEST_CASE("scalar multiplication") {
  CHECK(scalar_mul(2, Interval(1.5, 2.5)) == Interval(3, 5));
  CHECK(scalar_mul(0, Interval(-7, 9)) == Interval(0, 0));
  CHECK(scalar_mul(-3, Interval(1, 2)) == Interval(-6, -3));
  CHECK_THROWS_AS(scalar_mul(std::nan(""), Interval(0, 1)), ValidationError);
}

TEST_CASE("Hausdorff distance") {
  CHECK(hausdorff(Interval(0, 1), Interval(0, 1)) == 0);
  CHECK(hausdorff(Interval(1, 2), Interval(3, 6)) == 4);
  CHECK(hausdorff(Interval(0, 4), Interval(0, 10)) == 6);

  SECTION("metric properties on random triples") {
    for (int i = 0; i < 2000; ++i) {
      const Interval a = random_int_interval(), b = random_int_interval(),
                     c = random_int_interval();
      CHECK(hausdorff(a, b) == hausdorff(b, a));
      CHECK((hausdorff(a, b) == 0) == (a == b));
      CHECK(hausdorff(a, c) <= hausdorff(a, b) + hausdorff(b, c));
    }
    for (int i = 0; i < 2000; ++i) {
      const Interval a = random_real_interval(), b = random_real_interval(),
                     c = random_real_interval();
      CHECK(hausdorff(a, b) >= 0);
      CHECK(hausdorff(a, c) <= hausdorff(a, b) + hausdorff(b, c) + 1e-12);
    }
  }
}

TEST_CASE("Hukuhara difference") {
  CHECK(h_diff(Interval(0, 1), Interval(0, 1)) == Interval(0, 0));
  CHECK_FALSE(h_diff(Interval(0, 4), Interval(0, 10)).has_value());
  CHECK(h_diff(Interval(3, 7), Interval(1, 2)) == Interval(2, 5));
}

TEST_CASE("gH-difference") {
  CHECK(gh_diff(Interval(0, 1), Interval(0, 1)) == Interval(0, 0));
  CHECK(gh_diff(Interval(0, 4), Interval(0, 10)) == Interval(-6, 0));
  CHECK(gh_diff(Interval(3, 5), Interval(3, 5)) == Interval(0, 0));

  SECTION("total, self-annihilating, and an extension of the H-difference") {
    for (int i = 0; i < 2000; ++i) {
      const Interval a = random_real_interval(), b = random_real_interval();
      CHECK(gh_diff(a, a) == Interval(0, 0));
      const auto h = h_diff(a, b);
      if (h) CHECK(gh_diff(a, b) == *h);
    }
  }

  SECTION("scalar distributivity, exact on integer data") {
    std::uniform_int_distribution<int> nu(-10, 10);
    for (int i = 0; i < 2000; ++i) {
      const Interval a = random_int_interval(), b = random_int_interval();
      const double v = nu(rng);
      CHECK(scalar_mul(v, gh_diff(a, b)) == gh_diff(scalar_mul(v, a), scalar_mul(v, b)));
    }
    std::uniform_real_distribution<double> nur(-10.0, 10.0);
    for (int i = 0; i < 2000; ++i) {
      const Interval a = random_real_interval(), b = random_real_interval();
      const double v = nur(rng);
      const Interval lhs = scalar_mul(v, gh_diff(a, b));
      const Interval rhs = gh_diff(scalar_mul(v, a), scalar_mul(v, b));
      CHECK(std::abs(lhs.lo() - rhs.lo()) <= 1e-12);
      CHECK(std::abs(lhs.hi() - rhs.hi()) <= 1e-12);
    }
  }

  SECTION("width of the difference is the width gap, on a small integer grid") {
    for (int alo = -4; alo <= 4; ++alo)
      for (int ahi = alo; ahi <= 4; ++ahi)
        for (int blo = -4; blo <= 4; ++blo)
          for (int bhi = blo; bhi <= 4; ++bhi) {
            const Interval a(alo, ahi), b(blo, bhi);
            CHECK(gh_diff(a, b).width() == std::abs(a.width() - b.width()));
          }
  }
}

TEST_CASE("operator sugar matches the named operations") {
  const Interval a(1, 3), b(0, 2);
  CHECK(a + b == add(a, b));
  CHECK(-a == neg(a));
  CHECK(a - b == minkowski_sub(a, b));
  CHECK(2.5 * a == scalar_mul(2.5, a));
}
