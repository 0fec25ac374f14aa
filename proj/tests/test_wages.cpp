#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "epsw/wages.hpp"

using namespace epsw;

TEST_CASE("evaluation of basic schedules") {
  const WageFunction half = wage_linear(0.5);
  CHECK(half(0.8) == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(half(0.0) == doctest::Approx(0.0));

  const WageFunction zero = wage_zero();
  CHECK(zero(0.0) == 0.0);
  CHECK(zero(0.37) == 0.0);
  CHECK(zero(1.0) == 0.0);

  const WageFunction id = wage_identity();
  CHECK(id(0.37) == doctest::Approx(0.37).epsilon(1e-14));

  CHECK_THROWS_AS(half(1.5), std::invalid_argument);
  CHECK_THROWS_AS(half(-0.2), std::invalid_argument);
}

TEST_CASE("cap and threshold schedules") {
  const WageFunction cap = wage_cap(0.6);
  CHECK(cap(0.3) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(cap(0.6) == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(cap(0.9) == doctest::Approx(0.6).epsilon(1e-14));

  const WageFunction thr = wage_threshold(0.4);
  CHECK(thr(0.2) == 0.0);
  CHECK(thr(0.4) == doctest::Approx(0.4).epsilon(1e-14));  // jump takes the upper value
  CHECK(thr(0.7) == doctest::Approx(0.7).epsilon(1e-14));

  CHECK(wage_cap(1.0)(0.8) == doctest::Approx(0.8));
  CHECK(wage_cap(0.0)(0.8) == 0.0);
  CHECK(wage_threshold(0.0)(0.8) == doctest::Approx(0.8));
  CHECK(wage_threshold(1.0)(0.5) == 0.0);
  CHECK(wage_threshold(1.0)(1.0) == doctest::Approx(1.0));
}

TEST_CASE("construction rejects bad knot lists") {
  CHECK_THROWS_AS(WageFunction({{0.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(WageFunction({{0.1, 0.0}, {1.0, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(WageFunction({{0.0, 0.0}, {0.9, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(WageFunction({{0.0, 0.5}, {1.0, 0.2}}), std::invalid_argument);
  CHECK_THROWS_AS(WageFunction({{0.0, 0.0}, {0.5, 1.2}, {1.0, 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(WageFunction({{0.0, 0.0}, {0.6, 0.5}, {0.4, 0.6}, {1.0, 1.0}}),
                  std::invalid_argument);
}

TEST_CASE("generalized inverse of continuous schedules") {
  const WageFunction half = wage_linear(0.5);
  CHECK(generalized_inverse(half, 0.25) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(generalized_inverse(half, 0.6) == doctest::Approx(1.0));
  CHECK(generalized_inverse(half, 0.0) == doctest::Approx(0.0));

  const WageFunction zero = wage_zero();
  CHECK(generalized_inverse(zero, 0.0) == doctest::Approx(1.0));
  CHECK(generalized_inverse(zero, 0.7) == doctest::Approx(1.0));

  const WageFunction id = wage_identity();
  CHECK(generalized_inverse(id, 0.42) == doctest::Approx(0.42).epsilon(1e-14));
}

TEST_CASE("generalized inverse at jumps returns the jump point") {
  const WageFunction thr = wage_threshold(0.5);
  // Below the jump the sublevel set is [0, 0.5); its sup is the jump point.
  CHECK(generalized_inverse(thr, 0.3) == doctest::Approx(0.5));
  CHECK(generalized_inverse(thr, 0.0) == doctest::Approx(0.5));
  CHECK(generalized_inverse(thr, 0.7) == doctest::Approx(0.7).epsilon(1e-14));

  // Empty sublevel set: schedule everywhere above eps.
  const WageFunction high = WageFunction({{0.0, 0.5}, {1.0, 1.0}});
  CHECK(generalized_inverse(high, 0.2) == 0.0);
}

TEST_CASE("generalized inverse is monotone and inverts strictly increasing schedules") {
  const WageFunction w = WageFunction({{0.0, 0.0}, {0.4, 0.1}, {1.0, 0.8}});
  double prev = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double eps = static_cast<double>(i) / 100.0;
    const double inv = generalized_inverse(w, eps);
    CHECK(inv >= prev);
    prev = inv;
    if (eps < 0.8 && inv > 1e-9 && inv < 1.0 - 1e-9) {
      CHECK(std::abs(w(inv) - eps) < 1e-9);
    }
  }
}

TEST_CASE("individual rationality check") {
  CHECK(individual_rationality(wage_linear(0.5)).ok);
  CHECK(individual_rationality(wage_identity()).ok);
  CHECK(individual_rationality(wage_zero()).ok);

  // min(v + 0.1, 1): above the diagonal everywhere below 0.9.
  const WageFunction bad = WageFunction({{0.0, 0.1}, {0.9, 1.0}, {1.0, 1.0}});
  const IRReport r = individual_rationality(bad);
  CHECK_FALSE(r.ok);
  CHECK(r.violation == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("ir passes imply the inverse dominates the diagonal") {
  for (const WageFunction& w :
       {wage_linear(0.5), wage_zero(), wage_identity(), wage_cap(0.3),
        wage_threshold(0.6)}) {
    REQUIRE(individual_rationality(w).ok);
    for (int i = 0; i <= 50; ++i) {
      const double eps = static_cast<double>(i) / 50.0;
      CHECK(generalized_inverse(w, eps) >= eps - 1e-12);
    }
  }
}

TEST_CASE("flattening a schedule") {
  const WageFunction flat = flatten_above(wage_identity(), 0.6);
  CHECK(flat(0.3) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(flat(0.6) == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(flat(0.9) == doctest::Approx(0.6).epsilon(1e-14));

  const WageFunction same = flatten_above(wage_linear(0.5), 1.0);
  for (double v : {0.0, 0.25, 0.7, 1.0}) {
    CHECK(same(v) == doctest::Approx(wage_linear(0.5)(v)).epsilon(1e-14));
  }

  // max(0, v - 0.5) flattened at 0.8 is constant 0.3 from there on.
  const WageFunction shifted = WageFunction({{0.0, 0.0}, {0.5, 0.0}, {1.0, 0.5}});
  const WageFunction g = flatten_above(shifted, 0.8);
  CHECK(g(0.8) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(g(1.0) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(g(0.6) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(individual_rationality(g).ok);

  // Flattening keeps values below the kink untouched, jumps included.
  const WageFunction thr = wage_threshold(0.4);
  const WageFunction h = flatten_above(thr, 0.7);
  CHECK(h(0.2) == 0.0);
  CHECK(h(0.4) == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(h(0.9) == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("splicing the identity above a point") {
  const WageFunction w = splice_identity_above(wage_zero(), 0.5);
  CHECK(w(0.3) == 0.0);
  CHECK(w(0.5) == doctest::Approx(0.5).epsilon(1e-14));  // jump up to the diagonal
  CHECK(w(0.8) == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(generalized_inverse(w, 0.2) == doctest::Approx(0.5));

  const WageFunction all = splice_identity_above(wage_zero(), 0.0);
  CHECK(all(0.4) == doctest::Approx(0.4).epsilon(1e-14));

  const WageFunction none = splice_identity_above(wage_cap(0.2), 1.0);
  CHECK(none(0.9) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(none(1.0) == doctest::Approx(1.0));
}
