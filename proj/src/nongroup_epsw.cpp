#include "epsw/nongroup_epsw.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "epsw/numerics.hpp"

namespace epsw {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

// Profit from hiring [a, b) at the uniform wage a.
double wedge(const ProductivityDist& f, double a, double b) {
  if (b <= a) return 0.0;
  return f.integrate_against(Polynomial{-a, 1.0}, a, b);
}

// Profit an entrant makes on the unemployed segment at wage zero.
double entry_profit(const ProductivityDist& f, double w1) {
  return f.integrate_against(Polynomial{0.0, 1.0}, 0.0, w1);
}

double equal_split(const ProductivityDist& f, double w1) {
  if (wedge(f, w1, 1.0) <= 0.0) return 1.0;
  Tolerance tol;
  tol.abs_tol = 1e-11;
  return bisect_root(
      [&](double w2) { return wedge(f, w1, w2) - wedge(f, w2, 1.0); }, {w1, 1.0},
      tol);
}

double bottom_threshold(const ProductivityDist& f) {
  const auto slack = [&](double w1) {
    return wedge(f, w1, equal_split(f, w1)) - entry_profit(f, w1);
  };
  const double hi = 1.0 - 1e-9;
  if (slack(hi) >= 0.0) return 1.0;
  Tolerance tol;
  tol.abs_tol = 1e-9;
  return bisect_root(slack, {0.0, hi}, tol);
}

// sup{w: profit of [lo, w) at wage lo is at most p}, capped at 1 when the
// whole remaining interval cannot absorb p.
double ladder_step(const ProductivityDist& f, double lo, double p) {
  if (wedge(f, lo, 1.0) <= p) return 1.0;
  Tolerance tol;
  tol.abs_tol = 1e-12;
  return bisect_root([&](double w) { return wedge(f, lo, w) - p; }, {lo, 1.0}, tol);
}

// Fixed point of a weakly decreasing eta with eta(0) >= 0.
template <typename Eta>
double profit_fixed_point(Eta&& eta) {
  const double at_zero = eta(0.0);
  if (at_zero <= 0.0) return 0.0;
  Tolerance tol;
  tol.abs_tol = 1e-12;
  return bisect_root([&](double p) { return eta(p) - p; }, {0.0, at_zero}, tol);
}

}  // namespace

NotACoreError::NotACoreError(double entry_profit_, double core_profit_)
    : std::runtime_error("not a core outcome: hiring the unemployed below the "
                         "bottom wage at wage zero earns " +
                         fmt(entry_profit_) + ", above the equal-profit level " +
                         fmt(core_profit_)),
      entry_profit(entry_profit_),
      core_profit(core_profit_) {}

ProductivityDist pooled_density(const Market& market) {
  return pooled(market.dist_A, market.dist_B, market.beta);
}

ProductivityDist pooled_density(const MultiMarket& market) {
  ProductivityDist acc = market.groups.front().dist;
  double seen = market.groups.front().size;
  for (std::size_t i = 1; i < market.groups.size(); ++i) {
    acc = pooled(acc, market.groups[i].dist, seen / market.groups[i].size);
    seen += market.groups[i].size;
  }
  return acc;
}

double w2_of_w1(const Market& market, double w1) {
  if (!(w1 >= 0.0 && w1 < 1.0)) {
    throw std::invalid_argument("w2_of_w1: w1 must lie in [0, 1)");
  }
  return equal_split(pooled_density(market), w1);
}

double w1_star(const Market& market) {
  return bottom_threshold(pooled_density(market));
}

UniformWageCore nongroup_core(const Market& market, double w1) {
  if (!(w1 >= 0.0 && w1 < 1.0)) {
    throw std::invalid_argument("nongroup_core: w1 must lie in [0, 1)");
  }
  const ProductivityDist f = pooled_density(market);
  const double threshold = bottom_threshold(f);
  const double w2 = equal_split(f, w1);
  const double p1 = wedge(f, w1, w2);
  if (w1 > threshold + econ_tol()) throw NotACoreError(entry_profit(f, w1), p1);

  const auto avg_wage = [&](const ProductivityDist& g) {
    return w1 * (g.cdf(w2) - g.cdf(w1)) + w2 * (1.0 - g.cdf(w2));
  };
  UniformWageCore core;
  core.w1 = w1;
  core.w2 = w2;
  core.w1_star = threshold;
  core.profit = 0.5 * (p1 + wedge(f, w2, 1.0));
  core.unemployed_measure = (1.0 + market.beta) * f.cdf(w1);
  core.gap = avg_wage(market.dist_A) - avg_wage(market.dist_B);
  return core;
}

double multifirm_eta(const MultiMarket& market, double p) {
  if (!(p >= 0.0)) throw std::invalid_argument("multifirm_eta: p must be nonnegative");
  const ProductivityDist f = pooled_density(market);
  double w = 0.0;
  for (int i = 0; i < market.n_firms; ++i) w = ladder_step(f, w, p);
  return wedge(f, w, 1.0);
}

MultiFirmCore multifirm_core(const MultiMarket& market, double w1) {
  if (!(w1 >= 0.0 && w1 < 1.0)) {
    throw std::invalid_argument("multifirm_core: w1 must lie in [0, 1)");
  }
  const ProductivityDist f = pooled_density(market);
  const int n = market.n_firms;

  const auto eta_from = [&](double base, double p) {
    double w = base;
    for (int i = 1; i < n; ++i) w = ladder_step(f, w, p);
    return wedge(f, w, 1.0);
  };

  const double p_star =
      profit_fixed_point([&](double p) { return eta_from(ladder_step(f, 0.0, p), p); });
  const double threshold = ladder_step(f, 0.0, p_star);

  const double p = profit_fixed_point([&](double q) { return eta_from(w1, q); });
  if (entry_profit(f, w1) > p + econ_tol()) throw NotACoreError(entry_profit(f, w1), p);

  MultiFirmCore core;
  core.p = p;
  core.w1_star = threshold;
  core.wages.reserve(static_cast<std::size_t>(n));
  double w = w1;
  core.wages.push_back(w);
  for (int i = 1; i < n; ++i) {
    w = ladder_step(f, w, p);
    core.wages.push_back(w);
  }
  return core;
}

Market tail_heavy_market(double eps) {
  if (!(eps > 0.0 && eps < 0.5)) {
    throw std::invalid_argument("tail_heavy_market: eps must lie in (0, 1/2)");
  }
  const double split = 1.0 - eps / 2.0;
  const double low = eps * eps / (4.0 * split);
  const double high = (1.0 - eps * eps / 4.0) / (eps / 2.0);
  ProductivityDist d = make_step({split}, {low, high});
  return make_market(1.0, d, d);
}

AnythingGoesReport anything_goes_scenarios(double eps) {
  if (!(eps > 0.0 && eps < 0.1)) {
    throw std::invalid_argument(
        "anything_goes_scenarios: eps must lie in (0, 1/10); the widened gap "
        "exceeds one half if and only if eps < 1/10");
  }
  // Smallest majority share that keeps the high bottom wage supportable is
  // (4 - 5 eps) / (1 - 5 eps); stay strictly above it.
  const double beta = (4.0 - 5.0 * eps) / (1.0 - 5.0 * eps) + 1.0;
  Market market =
      make_market(beta, make_step({0.5}, {2.0 * eps, 2.0 * (1.0 - eps)}),
                  make_step({0.5}, {2.0 * (1.0 - eps), 2.0 * eps}));
  AnythingGoesReport report{eps,
                            beta,
                            market,
                            nongroup_core(market, 0.5),
                            nongroup_core(market, 0.0),
                            moment(market.dist_A, 1) - moment(market.dist_B, 1)};
  return report;
}

}  // namespace epsw
