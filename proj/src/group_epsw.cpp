#include "epsw/group_epsw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace epsw {

namespace {

// Exact integral of (v - c) f(v) dv over [a, b].
double wedge(const ProductivityDist& f, double c, double a, double b) {
  return f.integrate_against(Polynomial({-c, 1.0}), a, b);
}

double pi2_of(const Market& m, const WageFunction& w2) {
  return surplus_integral(m.dist_B, w2, 0.0, 1.0);
}

double phi_given_pi2(const Market& m, const WageFunction& w2, double pi2, double eps) {
  const double b = poach_gain_b(m, w2, eps);
  const auto raid_margin = [&](double vt) {
    return m.beta * wedge(m.dist_A, eps, eps, vt) + b - pi2;
  };
  if (raid_margin(1.0) <= 0.0) return 1.0;
  if (raid_margin(eps) >= 0.0) return eps;
  Tolerance t;
  t.abs_tol = 1e-12;
  return bisect_root(raid_margin, {eps, 1.0}, t);
}

constexpr double kCapThresh = 1.0 - 1e-9;

PhiCurve raw_curve(const Market& m, const WageFunction& w2, std::size_t n) {
  PhiCurve c;
  c.pi2 = pi2_of(m, w2);
  c.eps_grid.resize(n);
  c.phi.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    c.eps_grid[i] = static_cast<double>(i) / static_cast<double>(n - 1);
    c.phi[i] = phi_given_pi2(m, w2, c.pi2, c.eps_grid[i]);
  }
  c.w1hat_inv = running_right_infimum(c.eps_grid, c.phi);

  c.E_cap = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (c.phi[i] < kCapThresh) continue;
    if (i == 0) {
      c.E_cap = 0.0;
    } else {
      const auto h = [&](double e) {
        return phi_given_pi2(m, w2, c.pi2, e) - kCapThresh;
      };
      const double lo = c.eps_grid[i - 1];
      if (h(lo) >= 0.0) {
        c.E_cap = lo;
      } else {
        Tolerance t;
        t.abs_tol = 1e-10;
        c.E_cap = bisect_root(h, {lo, c.eps_grid[i]}, t);
      }
    }
    break;
  }

  // Flip the sampled minorant into the first-firm schedule: below the lowest
  // frontier value the wage is 0, flats become jumps, the top pins at (1, 1).
  std::vector<WageKnot> knots;
  knots.push_back({0.0, 0.0});
  for (std::size_t i = 0; i < n; ++i) knots.push_back({c.w1hat_inv[i], c.eps_grid[i]});
  c.w1_hat = WageFunction(std::move(knots));
  c.pi1_hat = m.beta * surplus_integral(m.dist_A, c.w1_hat, 0.0, 1.0);

  // Widest genuine flat stretch of the minorant below the cap, refined to the
  // exact point where the frontier first reaches the flat value.
  std::size_t best_len = 0;
  std::size_t best_start = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && c.w1hat_inv[j + 1] == c.w1hat_inv[i]) ++j;
    if (c.w1hat_inv[i] < kCapThresh && j - i > best_len) {
      best_len = j - i;
      best_start = i;
    }
    i = j + 1;
  }
  if (best_len >= 2) {
    double es = c.eps_grid[best_start];
    const double value = c.w1hat_inv[best_start];
    if (best_start > 0) {
      const auto h = [&](double e) {
        return phi_given_pi2(m, w2, c.pi2, e) - value;
      };
      const double lo = c.eps_grid[best_start - 1];
      if (h(lo) < 0.0 && h(es) >= 0.0) {
        Tolerance t;
        t.abs_tol = 1e-10;
        es = bisect_root(h, {lo, es}, t);
      }
    }
    c.eps_star = es;
  }
  return c;
}

}  // namespace

double poach_gain_b(const Market& market, const WageFunction& w2, double eps) {
  const double hi = generalized_inverse(w2, eps);
  return wedge(market.dist_B, eps, eps, hi);
}

double ndc_slack(const Market& market, const WageFunction& w1, const WageFunction& w2,
                 double eps) {
  const double a_hi = generalized_inverse(w1, eps);
  return pi2_of(market, w2) - market.beta * wedge(market.dist_A, eps, eps, a_hi) -
         poach_gain_b(market, w2, eps);
}

double phi(const Market& market, const WageFunction& w2, double eps) {
  return phi_given_pi2(market, w2, pi2_of(market, w2), eps);
}

PhiCurve build_phi_curve(const Market& market, const WageFunction& w2,
                         std::size_t grid_size) {
  if (grid_size < 33) {
    throw std::invalid_argument("frontier grid needs at least 33 points");
  }
  PhiCurve c1 = raw_curve(market, w2, grid_size);
  const PhiCurve c2 = raw_curve(market, w2, 2 * (grid_size - 1) + 1);
  if (std::abs(c2.pi1_hat - c1.pi1_hat) <= 1e-5) return c1;
  const PhiCurve c3 = raw_curve(market, w2, 4 * (grid_size - 1) + 1);
  if (std::abs(c3.pi1_hat - c2.pi1_hat) <= 1e-5) return c2;
  throw ResolutionError(
      "frontier profit is still shifting after doubling the grid; rerun with a larger "
      "grid");
}

ExistsResult core_exists_with_w2(const Market& market, const WageFunction& w2) {
  ExistsResult r;
  r.curve = build_phi_curve(market, w2);
  r.exists = r.curve.pi1_hat >= r.curve.pi2 - econ_tol();
  return r;
}

CompletedW1 complete_w1(const Market& market, const WageFunction& w2,
                        const PhiCurve& curve) {
  if (std::abs(pi2_of(market, w2) - curve.pi2) > 1e-9) {
    throw std::invalid_argument("frontier curve was built against a different schedule");
  }
  CompletedW1 out;
  if (curve.pi2 <= econ_tol()) {
    out.w1 = wage_identity();
    out.x_star = 0.0;
    out.profit = 0.0;
    return out;
  }
  if (curve.pi1_hat < curve.pi2 - econ_tol()) {
    throw CoreExistenceError(
        "no segregated core pays this second-firm schedule: the frontier-optimal "
        "first-firm profit falls short of pi2");
  }
  const auto margin = [&](double x) {
    return market.beta * surplus_integral(market.dist_A, curve.w1_hat, 0.0, x) -
           curve.pi2;
  };
  if (margin(1.0) <= 0.0) {
    out.x_star = 1.0;
  } else {
    Tolerance t;
    t.abs_tol = 1e-10;
    out.x_star = bisect_root(margin, {0.0, 1.0}, t);
  }
  out.w1 = splice_identity_above(curve.w1_hat, out.x_star);
  out.profit = market.beta * surplus_integral(market.dist_A, out.w1, 0.0, 1.0);
  return out;
}

GroupCoreReport verify_group_core(const Market& market, const WageFunction& w1,
                                  const WageFunction& w2) {
  GroupCoreReport r;
  r.ir_ok = individual_rationality(w1).ok && individual_rationality(w2).ok;
  const AccountingReport acc = accounting(market, segregated_outcome(w1, w2));
  r.profit_1 = acc.profit_1;
  r.profit_2 = acc.profit_2;
  r.gap = acc.gap;
  r.equal_profit_residual = acc.profit_1 - acc.profit_2;

  const double pi2 = acc.profit_2;
  const auto slack_at = [&](double eps) {
    const double a_hi = generalized_inverse(w1, eps);
    return pi2 - market.beta * wedge(market.dist_A, eps, eps, a_hi) -
           poach_gain_b(market, w2, eps);
  };

  const std::size_t n = 2049;
  std::size_t worst_i = 0;
  double worst = std::numeric_limits<double>::infinity();
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = static_cast<double>(i) / static_cast<double>(n - 1);
    const double s = slack_at(grid[i]);
    if (s < worst) {
      worst = s;
      worst_i = i;
    }
  }
  // Golden-section refinement around the worst grid cell.
  double a = grid[worst_i == 0 ? 0 : worst_i - 1];
  double b = grid[std::min(worst_i + 1, n - 1)];
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - gr * (b - a);
  double x2 = a + gr * (b - a);
  double f1 = slack_at(x1);
  double f2 = slack_at(x2);
  for (int it = 0; it < 90; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = slack_at(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = slack_at(x2);
    }
  }
  r.ndc_worst = {grid[worst_i], worst};
  for (const auto& [x, fx] : {std::pair{x1, f1}, std::pair{x2, f2}}) {
    if (fx < r.ndc_worst.slack) r.ndc_worst = {x, fx};
  }

  r.is_core = r.ir_ok && std::abs(r.equal_profit_residual) <= econ_tol() &&
              r.ndc_worst.slack >= -econ_tol();
  return r;
}

DeltaFamilyMember delta_family(const Market& market, double delta) {
  if (delta < 0.0 || delta > 1.0) {
    throw std::invalid_argument("wage cap must lie in [0, 1]");
  }
  DeltaFamilyMember out;
  out.delta = delta;
  const double target = market.beta * wedge(market.dist_A, delta, delta, 1.0);
  const auto below_mass_margin = [&](double dp) {
    return market.dist_B.integrate_against(Polynomial({0.0, 1.0}), 0.0, dp) - target;
  };
  if (below_mass_margin(1.0) < 0.0) {
    throw DeltaInfeasibleError(
        "first-firm profit at this cap exceeds the entire B-side surplus; no "
        "threshold partner exists");
  }
  if (target <= 0.0) {
    out.delta_prime = 0.0;
  } else {
    Tolerance t;
    t.abs_tol = 1e-12;
    out.delta_prime = bisect_root(below_mass_margin, {0.0, 1.0}, t);
  }
  out.outcome = segregated_outcome(wage_cap(delta), wage_threshold(out.delta_prime));
  const AccountingReport acc = accounting(market, out.outcome);
  out.profit = acc.profit_2;
  out.gap_value = acc.gap;
  out.is_core = delta >= out.delta_prime - econ_tol();
  return out;
}

double beta_star(const ProductivityDist& dist_A, const ProductivityDist& dist_B,
                 const WageFunction& w2, double beta_hi) {
  if (beta_hi < 1.0) {
    throw std::invalid_argument("search ceiling must be at least 1");
  }
  const auto exists_at = [&](double beta) {
    const Market m{beta, dist_A, dist_B};
    const PhiCurve c = raw_curve(m, w2, 2049);
    return c.pi1_hat >= c.pi2 - econ_tol();
  };
  if (exists_at(1.0)) return 1.0;
  if (!exists_at(beta_hi)) return std::numeric_limits<double>::infinity();
  double lo = 1.0;
  double hi = beta_hi;
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    (exists_at(mid) ? hi : lo) = mid;
  }
  return hi;
}

ShortfallBound shortfall_bound(const Market& market, const WageFunction& w1,
                               double pi2) {
  ShortfallBound r;
  for (const WageKnot& k : w1.knots()) r.delta = std::max(r.delta, k.v - k.w);
  r.applicable = market.dist_A.f_lower() > 0.0;
  r.lhs = 0.5 * market.beta * r.delta * r.delta * market.dist_A.f_lower();
  r.holds = !r.applicable || r.lhs <= pi2 + econ_tol();
  return r;
}

}  // namespace epsw
