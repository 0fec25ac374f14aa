#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "epsw/nongroup_epsw.hpp"

using namespace epsw;

namespace {

Market uniform_market(double beta) {
  return make_market(beta, make_uniform(), make_uniform());
}

MultiMarket uniform_firms(int n) {
  return make_multi_market(n, {{1.0, make_uniform()}});
}

ProductivityDist random_dist(std::mt19937& rng) {
  std::uniform_int_distribution<int> kind(0, 2);
  switch (kind(rng)) {
    case 0:
      return make_uniform();
    case 1: {
      std::uniform_int_distribution<int> k(1, 5);
      return make_power(k(rng));
    }
    default: {
      std::uniform_real_distribution<double> level(0.2, 2.0);
      double a = level(rng), b = level(rng), c = level(rng);
      const double mass = 0.3 * a + 0.4 * b + 0.3 * c;
      return make_step({0.3, 0.7}, {a / mass, b / mass, c / mass});
    }
  }
}

Market random_market(std::mt19937& rng) {
  std::uniform_real_distribution<double> beta(1.0, 8.0);
  ProductivityDist a = random_dist(rng);
  ProductivityDist b = random_dist(rng);
  return make_market(beta(rng), std::move(a), std::move(b));
}

// Best profit either firm can reach with a single deviation wage, hiring any
// workers who at least weakly gain: the unemployed at any wage, its own
// workers at their current wage, the rival's workers only at a strict raise.
double best_uniform_deviation(const ProductivityDist& f, double w1, double w2) {
  const double raise = 1e-6;
  const auto dev_profit = [&](double w, bool as_firm1) {
    double total = 0.0;
    const auto seg = [&](double lo, double hi) {
      lo = std::max(lo, w);
      if (hi > lo) total += f.integrate_against(Polynomial{-w, 1.0}, lo, hi);
    };
    seg(0.0, w1);
    if (w >= (as_firm1 ? w1 : w1 + raise)) seg(w1, w2);
    if (w >= (as_firm1 ? w2 + raise : w2)) seg(w2, 1.0);
    return total;
  };
  double best = 0.0;
  const auto consider = [&](double w) {
    if (w < 0.0 || w > 1.0) return;
    best = std::max({best, dev_profit(w, true), dev_profit(w, false)});
  };
  for (int i = 0; i <= 2000; ++i) consider(static_cast<double>(i) / 2000.0);
  for (double w : {w1, w1 + raise, w2, w2 + raise}) consider(w);
  return best;
}

}  // namespace

TEST_CASE("equal-profit partner wage, uniform closed form") {
  const Market m = uniform_market(3.0);
  CHECK(w2_of_w1(m, 0.0) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(w2_of_w1(m, 1.0 / 3.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  for (int i = 0; i <= 9; ++i) {
    const double w1 = 0.1 * static_cast<double>(i);
    CHECK(w2_of_w1(m, w1) == doctest::Approx((1.0 + w1) / 2.0).epsilon(1e-9));
  }
  CHECK(w2_of_w1(m, 0.999) == doctest::Approx(0.9995).epsilon(1e-8));
  CHECK_THROWS_AS(w2_of_w1(m, 1.0), std::invalid_argument);
}

TEST_CASE("largest supportable bottom wage") {
  CHECK(w1_star(uniform_market(1.0)) == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
  CHECK(w1_star(uniform_market(5.0)) == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
  std::mt19937 rng(20240818u);
  for (int trial = 0; trial < 10; ++trial) {
    CHECK(w1_star(random_market(rng)) > 0.0);
  }
}

TEST_CASE("two-firm cores on the uniform market") {
  const Market m = uniform_market(2.0);

  const UniformWageCore base = nongroup_core(m, 0.0);
  CHECK(base.w2 == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(base.profit == doctest::Approx(0.125).epsilon(1e-9));
  CHECK(base.unemployed_measure == doctest::Approx(0.0));
  CHECK(base.gap == doctest::Approx(0.0));
  CHECK(base.w1_star == doctest::Approx(1.0 / 3.0).epsilon(1e-8));

  const UniformWageCore mid = nongroup_core(m, 0.2);
  CHECK(mid.w2 == doctest::Approx(0.6).epsilon(1e-10));
  CHECK(mid.profit == doctest::Approx(0.08).epsilon(1e-9));
  CHECK(mid.unemployed_measure == doctest::Approx(0.6).epsilon(1e-9));

  CHECK_NOTHROW(nongroup_core(m, 1.0 / 3.0));
  CHECK_THROWS_AS(nongroup_core(m, 0.34), NotACoreError);
  try {
    nongroup_core(m, 0.34);
  } catch (const NotACoreError& e) {
    CHECK(e.entry_profit > e.core_profit);
    CHECK(e.entry_profit == doctest::Approx(0.34 * 0.34 / 2.0).epsilon(1e-9));
  }
}

TEST_CASE("group-resolved gap from the pooled thresholds") {
  const Market m = make_market(4.0, make_uniform(), make_power(5));
  const UniformWageCore core = nongroup_core(m, 0.2);
  const double w1 = core.w1, w2 = core.w2;
  // Direct closed forms: F_A(v) = v, F_B(v) = v^5, pooled F = 0.8 v + v^5 / 5.
  const double aw_a = w1 * (w2 - w1) + w2 * (1.0 - w2);
  const double aw_b = w1 * (std::pow(w2, 5) - std::pow(w1, 5)) +
                      w2 * (1.0 - std::pow(w2, 5));
  CHECK(core.gap == doctest::Approx(aw_a - aw_b).epsilon(1e-10));
  CHECK(core.unemployed_measure ==
        doctest::Approx(5.0 * (0.8 * w1 + std::pow(w1, 5) / 5.0)).epsilon(1e-10));
}

TEST_CASE("unemployment rises and profit falls along the core interval") {
  const Market m = make_market(4.0, make_uniform(), make_power(5));
  const double top = w1_star(m);
  double prev_unemp = -1.0;
  double prev_profit = 2.0;
  for (int i = 0; i <= 12; ++i) {
    const double w1 = top * 0.999 * static_cast<double>(i) / 12.0;
    const UniformWageCore core = nongroup_core(m, w1);
    CHECK(core.w1 < core.w2);
    CHECK(core.w2 < 1.0);
    CHECK(core.w1 <= core.w1_star + 1e-9);
    if (i > 0) {
      CHECK(core.unemployed_measure > prev_unemp);
      CHECK(core.profit < prev_profit);
    }
    prev_unemp = core.unemployed_measure;
    prev_profit = core.profit;
  }
}

TEST_CASE("both firms earn the same profit in every returned core") {
  std::mt19937 rng(771u);
  for (int trial = 0; trial < 8; ++trial) {
    const Market m = random_market(rng);
    const ProductivityDist f = pooled_density(m);
    const double w1 = 0.6 * w1_star(m);
    const UniformWageCore core = nongroup_core(m, w1);
    const double p1 = f.integrate_against(Polynomial{-core.w1, 1.0}, core.w1, core.w2);
    const double p2 = f.integrate_against(Polynomial{-core.w2, 1.0}, core.w2, 1.0);
    CHECK(std::abs(p1 - p2) < 1e-9);
    CHECK(core.profit == doctest::Approx(p1).epsilon(1e-8));
  }
}

TEST_CASE("single-wage deviation search agrees with the core interval") {
  std::mt19937 rng(90210u);
  for (int trial = 0; trial < 30; ++trial) {
    const Market m = random_market(rng);
    const ProductivityDist f = pooled_density(m);
    const double top = w1_star(m);

    const double inside = 0.9 * top;
    const UniformWageCore core = nongroup_core(m, inside);
    const double best = best_uniform_deviation(f, core.w1, core.w2);
    CHECK(best <= core.profit + 2e-6);
    CHECK(best >= core.profit - 1e-3);

    const double outside = top + 0.1 * (1.0 - top);
    const double w2 = w2_of_w1(m, outside);
    const double incumbent = f.integrate_against(Polynomial{-outside, 1.0}, outside, w2);
    CHECK(best_uniform_deviation(f, outside, w2) > incumbent + 1e-6);
    CHECK_THROWS_AS(nongroup_core(m, outside), NotACoreError);
  }
}

TEST_CASE("profit ladder residual") {
  CHECK(multifirm_eta(uniform_firms(2), 1.0 / 18.0) ==
        doctest::Approx(1.0 / 18.0).epsilon(1e-9));
  CHECK(multifirm_eta(uniform_firms(3), 1.0 / 32.0) ==
        doctest::Approx(1.0 / 32.0).epsilon(1e-9));
  CHECK(multifirm_eta(uniform_firms(2), 0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(multifirm_eta(uniform_firms(2), 1.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(multifirm_eta(uniform_firms(2), -0.1), std::invalid_argument);
}

TEST_CASE("wage ladders on the uniform market") {
  const MultiFirmCore two = multifirm_core(uniform_firms(2), 0.0);
  REQUIRE(two.wages.size() == 2);
  CHECK(two.wages[0] == doctest::Approx(0.0));
  CHECK(two.wages[1] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(two.p == doctest::Approx(0.125).epsilon(1e-9));
  CHECK(two.w1_star == doctest::Approx(1.0 / 3.0).epsilon(1e-8));

  const MultiFirmCore two_top = multifirm_core(uniform_firms(2), 1.0 / 3.0);
  CHECK(two_top.wages[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
  CHECK(two_top.p == doctest::Approx(1.0 / 18.0).epsilon(1e-8));

  const MultiFirmCore three = multifirm_core(uniform_firms(3), 0.0);
  REQUIRE(three.wages.size() == 3);
  CHECK(three.wages[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
  CHECK(three.wages[2] == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
  CHECK(three.p == doctest::Approx(1.0 / 18.0).epsilon(1e-8));
  CHECK(three.w1_star == doctest::Approx(0.25).epsilon(1e-8));

  // Anchoring at the threshold reproduces the evenly spaced ladder i/(n+1)
  // with common profit 1/(2(n+1)^2).
  for (int n : {2, 3, 5}) {
    const double start = 1.0 / static_cast<double>(n + 1);
    const MultiFirmCore core = multifirm_core(uniform_firms(n), start);
    REQUIRE(core.wages.size() == static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      CHECK(core.wages[static_cast<std::size_t>(i)] ==
            doctest::Approx(static_cast<double>(i + 1) / (n + 1)).epsilon(1e-8));
    }
    CHECK(core.p ==
          doctest::Approx(0.5 / ((n + 1.0) * (n + 1.0))).epsilon(1e-8));
    CHECK(core.w1_star == doctest::Approx(start).epsilon(1e-8));
  }

  CHECK_THROWS_AS(multifirm_core(uniform_firms(3), 0.3), NotACoreError);
}

TEST_CASE("every ladder interval earns the common profit") {
  std::mt19937 rng(424242u);
  for (int trial = 0; trial < 6; ++trial) {
    const Market m = random_market(rng);
    const double wa = m.beta / (1.0 + m.beta);
    const MultiMarket mm =
        make_multi_market(4, {{wa, m.dist_A}, {1.0 - wa, m.dist_B}});
    const ProductivityDist f = pooled_density(mm);
    const MultiFirmCore core = multifirm_core(mm, 0.0);
    REQUIRE(core.wages.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
      const double lo = core.wages[i];
      const double hi = i + 1 < 4 ? core.wages[i + 1] : 1.0;
      CHECK(lo < hi);
      const double p = f.integrate_against(Polynomial{-lo, 1.0}, lo, hi);
      CHECK(std::abs(p - core.p) < 1e-9);
    }
  }
}

TEST_CASE("two-firm ladder matches the direct two-firm solver") {
  std::mt19937 rng(1899u);
  for (int trial = 0; trial < 20; ++trial) {
    const Market m = random_market(rng);
    const double wa = m.beta / (1.0 + m.beta);
    const MultiMarket mm =
        make_multi_market(2, {{wa, m.dist_A}, {1.0 - wa, m.dist_B}});
    const double w1 = 0.5 * w1_star(m);
    const MultiFirmCore ladder = multifirm_core(mm, w1);
    const UniformWageCore direct = nongroup_core(m, w1);
    CHECK(std::abs(ladder.wages[1] - direct.w2) < 1e-8);
    CHECK(std::abs(ladder.p - direct.profit) < 1e-8);
    CHECK(std::abs(ladder.w1_star - direct.w1_star) < 1e-7);
  }
}

TEST_CASE("tail-heavy step market supports a near-top bottom wage") {
  const double eps = 0.05;
  const Market m = tail_heavy_market(eps);
  const double split = 1.0 - eps / 2.0;
  CHECK(m.dist_A.cdf(split) == doctest::Approx(eps * eps / 4.0).epsilon(1e-12));
  CHECK(w1_star(m) >= split);
  const UniformWageCore core = nongroup_core(m, split);
  CHECK(core.w2 == doctest::Approx((split + 1.0) / 2.0).epsilon(1e-9));
  CHECK(core.unemployed_measure == doctest::Approx(eps * eps / 2.0).epsilon(1e-9));
  CHECK(core.gap == doctest::Approx(0.0));
  CHECK_THROWS_AS(tail_heavy_market(0.0), std::invalid_argument);
}

TEST_CASE("the one-wage rule can move the gap either way") {
  const AnythingGoesReport rep = anything_goes_scenarios(0.05);
  CHECK(rep.beta == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(rep.benchmark_gap == doctest::Approx(0.45).epsilon(1e-12));

  CHECK(rep.raised.w1 == doctest::Approx(0.5));
  CHECK(rep.raised.w2 == doctest::Approx(0.75).epsilon(1e-9));
  CHECK(rep.raised.gap == doctest::Approx(5.0 * 0.9 / 8.0).epsilon(1e-9));
  CHECK(rep.raised.gap > 0.5);
  CHECK(rep.raised.gap > rep.benchmark_gap);

  CHECK(rep.lowered.w1 == doctest::Approx(0.0));
  // Closed form for the bottom-wage-zero split on the two-step market.
  const double f_lo = (2.0 * 0.05 * 6.0 + 2.0 * 0.95) / 7.0;
  const double f_up = (2.0 * 0.95 * 6.0 + 2.0 * 0.05) / 7.0;
  const double w2 = 5.0 / 8.0 - f_lo / (8.0 * f_up);
  CHECK(rep.lowered.w2 == doctest::Approx(w2).epsilon(1e-9));
  CHECK(rep.lowered.gap == doctest::Approx(2.0 * 0.9 * w2 * (1.0 - w2)).epsilon(1e-8));
  CHECK(rep.lowered.gap < rep.benchmark_gap);

  // A smaller minority share still works; the cutoff is exactly one tenth.
  const AnythingGoesReport near = anything_goes_scenarios(0.09);
  CHECK(near.raised.gap > 0.5);
  CHECK(near.raised.gap > near.benchmark_gap);
  CHECK(near.lowered.gap < near.benchmark_gap);
  for (double bad : {0.0, 0.1, 0.15, -0.05}) {
    CHECK_THROWS_AS(anything_goes_scenarios(bad), std::invalid_argument);
  }
}
