#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "epsw/numerics.hpp"

using namespace epsw;

TEST_CASE("polynomial evaluation and arithmetic") {
  Polynomial p({1.0, 2.0, 3.0});  // 1 + 2v + 3v^2
  CHECK(p(0.0) == doctest::Approx(1.0));
  CHECK(p(1.0) == doctest::Approx(6.0));
  CHECK(p(2.0) == doctest::Approx(17.0));
  CHECK(p.degree() == 2);

  Polynomial q({0.0, 1.0});  // v
  Polynomial pq = p * q;     // v + 2v^2 + 3v^3
  CHECK(pq(2.0) == doctest::Approx(34.0));
  CHECK(pq.degree() == 3);

  Polynomial s = p + q;  // 1 + 3v + 3v^2
  CHECK(s(2.0) == doctest::Approx(19.0));

  // Trailing zeros trim away.
  Polynomial z({1.0, 0.0, 0.0});
  CHECK(z.degree() == 0);
  CHECK(Polynomial({0.0, 0.0}).degree() == 0);
}

TEST_CASE("polynomial antiderivative and exact integrals") {
  Polynomial v({0.0, 1.0});
  CHECK(v.integral(0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));

  Polynomial p({0.0, 0.0, 0.0, 0.0, 0.0, 5.0});  // 5 v^5
  CHECK(p.integral(0.0, 1.0) == doctest::Approx(5.0 / 6.0).epsilon(1e-14));

  Polynomial F = p.antiderivative();
  CHECK(F(0.0) == doctest::Approx(0.0));
  CHECK(F(1.0) == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("gauss quadrature is exact on high-degree polynomials") {
  // 20 nodes integrate degree <= 39 exactly up to rounding.
  std::mt19937 rng(20240817u);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<double> c(40);
    for (double& x : c) x = coef(rng);
    Polynomial p(c);
    const double exact = p.integral(0.1, 0.9);
    const double quad = gl_integrate(p, 0.1, 0.9);
    CHECK(quad == doctest::Approx(exact).epsilon(1e-12));
  }
  // Degenerate and reversed ranges integrate to zero.
  Polynomial one({1.0});
  CHECK(gl_integrate(one, 0.4, 0.4) == 0.0);
  CHECK(gl_integrate(one, 0.7, 0.2) == 0.0);
}

TEST_CASE("piecewise integration over contiguous segments") {
  Polynomial v({0.0, 1.0});
  CHECK(integrate_piecewise({{0.0, 1.0, v}}) == doctest::Approx(0.5).epsilon(1e-14));

  Polynomial p({0.0, 0.0, 0.0, 0.0, 0.0, 5.0});
  CHECK(integrate_piecewise({{0.0, 1.0, p}}) == doctest::Approx(5.0 / 6.0).epsilon(1e-14));

  // Triangle density: 4v on [0, 1/2], 4 - 4v on [1/2, 1]; mass below 1/2 is 1/2,
  // and v * f integrates to 1/4 on the left half... actually compute both halves.
  Polynomial up({0.0, 4.0});
  Polynomial down({4.0, -4.0});
  const double mass = integrate_piecewise({{0.0, 0.5, up}, {0.5, 1.0, down}});
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-14));
  const double mean = integrate_piecewise({{0.0, 0.5, up * v}, {0.5, 1.0, down * v}});
  CHECK(mean == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(integrate_piecewise({{0.0, 0.5, up}}) == doctest::Approx(0.5).epsilon(1e-14));

  CHECK_THROWS_AS(integrate_piecewise({{0.0, 0.4, v}, {0.6, 1.0, v}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(integrate_piecewise({{-0.2, 0.4, v}}), std::invalid_argument);
  CHECK_THROWS_AS(integrate_piecewise({{0.5, 0.4, v}}), std::invalid_argument);
}

TEST_CASE("piecewise integration is additive across cut points") {
  std::mt19937 rng(7u);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> cut(0.2, 0.8);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> c(6);
    for (double& x : c) x = coef(rng);
    Polynomial p(c);
    const double m = cut(rng);
    const double whole = integrate_piecewise({{0.0, 1.0, p}});
    const double split = integrate_piecewise({{0.0, m, p}, {m, 1.0, p}});
    CHECK(std::abs(whole - split) < 1e-12);
  }
}

TEST_CASE("bisection finds bracketed roots") {
  auto shift = [](double x) { return x - 0.3; };
  CHECK(bisect_root(shift, {0.0, 1.0}) == doctest::Approx(0.3).epsilon(1e-9));

  auto quad = [](double x) { return x * x / 2.0 - 1.0 / 18.0; };
  CHECK(bisect_root(quad, {0.0, 1.0}) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));

  auto scaled = [](double x) { return 2.0 * x * x - 5.0 / 12.0; };
  CHECK(bisect_root(scaled, {0.0, 1.0}) ==
        doctest::Approx(std::sqrt(5.0 / 24.0)).epsilon(1e-9));

  // Decreasing function, root at endpoint, and non-bracketing cases.
  auto dec = [](double x) { return 0.5 - x; };
  CHECK(bisect_root(dec, {0.0, 1.0}) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(bisect_root(shift, {0.3, 1.0}) == doctest::Approx(0.3));
  CHECK_THROWS_AS(bisect_root(shift, {0.5, 1.0}), BracketError);
  CHECK_THROWS_AS(bisect_root(shift, {1.0, 0.5}), BracketError);
}

TEST_CASE("bisection reports the last bracket when the cap is hit") {
  Tolerance tight;
  tight.abs_tol = 1e-18;  // unreachable from a unit-width bracket in 8 steps
  tight.max_iter = 8;
  auto shift = [](double x) { return x - 0.3; };
  try {
    bisect_root(shift, {0.0, 1.0}, tight);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.last.lo <= 0.3);
    CHECK(e.last.hi >= 0.3);
    CHECK(e.last.hi - e.last.lo == doctest::Approx(1.0 / 256.0));
  }
}

TEST_CASE("running right infimum produces the monotone minorant") {
  const std::vector<double> xs{0.0, 1.0, 2.0, 3.0};
  const std::vector<double> ys{1.0, 3.0, 2.0, 4.0};
  const auto z = running_right_infimum(xs, ys);
  CHECK(z == std::vector<double>{1.0, 2.0, 2.0, 4.0});

  // Already non-decreasing input is a fixed point.
  const std::vector<double> mono{0.5, 0.5, 1.0, 2.0};
  CHECK(running_right_infimum(xs, mono) == mono);

  // Pointwise below input, non-decreasing, idempotent.
  std::mt19937 rng(99u);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> grid(64), vals(64);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = static_cast<double>(i);
    vals[i] = u(rng);
  }
  const auto m = running_right_infimum(grid, vals);
  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK(m[i] <= vals[i]);
    if (i > 0) CHECK(m[i] >= m[i - 1]);
  }
  CHECK(running_right_infimum(grid, m) == m);

  CHECK_THROWS_AS(running_right_infimum({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(running_right_infimum({0.0, 0.0}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(running_right_infimum({0.0, 1.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("sampled Simpson rule matches exact integrals and reports refinement error") {
  const std::size_t n = 257;
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = static_cast<double>(i) / static_cast<double>(n - 1);
    ys[i] = std::sin(3.0 * xs[i]);
  }
  const auto r = simpson_sampled(xs, ys);
  const double exact = (1.0 - std::cos(3.0)) / 3.0;
  CHECK(r.value == doctest::Approx(exact).epsilon(1e-10));
  CHECK(r.richardson_delta < 1e-8);
  CHECK(r.richardson_delta >= 0.0);

  CHECK_THROWS_AS(simpson_sampled({0.0, 1.0}, {0.0, 1.0}), std::invalid_argument);
  std::vector<double> bad = xs;
  bad[5] += 1e-3;
  CHECK_THROWS_AS(simpson_sampled(bad, ys), std::invalid_argument);
}

TEST_CASE("economic tolerance is positive and adjustable") {
  const double base = econ_tol();
  CHECK(base > 0.0);
  set_econ_tol(1e-6);
  CHECK(econ_tol() == doctest::Approx(1e-6));
  CHECK_THROWS_AS(set_econ_tol(0.0), std::invalid_argument);
  CHECK_THROWS_AS(set_econ_tol(-1.0), std::invalid_argument);
  set_econ_tol(base);
}
