#include "epsw/extensions.hpp"

#include <algorithm>
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

// Measure hired by the plan, per unit of group density.
double plan_measure(const ProductivityDist& d, const std::vector<HiringInterval>& iv) {
  double total = 0.0;
  for (const HiringInterval& h : iv) total += h.share * d.mass(h.lo, h.hi);
  return total;
}

// sup |w(v) - v| over the hired intervals; jump points carry no mass and are
// skipped, each linear segment attains its extremes at the clipped ends.
double identity_deviation(const WageFunction& w, const std::vector<HiringInterval>& iv) {
  double worst = 0.0;
  const auto& ks = w.knots();
  for (const HiringInterval& h : iv) {
    if (!(h.share > 0.0) || !(h.hi > h.lo)) continue;
    for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
      if (!(ks[i + 1].v > ks[i].v)) continue;
      const double lo = std::max(h.lo, ks[i].v);
      const double hi = std::min(h.hi, ks[i + 1].v);
      if (!(hi > lo)) continue;
      const double slope = (ks[i + 1].w - ks[i].w) / (ks[i + 1].v - ks[i].v);
      for (double x : {lo, hi}) {
        const double wx = ks[i].w + slope * (x - ks[i].v);
        worst = std::max(worst, std::abs(wx - x));
      }
    }
  }
  return worst;
}

}  // namespace

BiasParams make_bias(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw std::invalid_argument("make_bias: lambda must lie strictly inside (0, 1)");
  }
  return BiasParams{lambda};
}

VbarInfeasibleError::VbarInfeasibleError(double vbar1_, double needed_, double capacity_)
    : std::runtime_error("bias_group_family: flattening at " + fmt(vbar1_) +
                         " needs a wage reduction of " + fmt(needed_) +
                         " on the B side, but only " + fmt(capacity_) +
                         " is available; move vbar1 closer to 1"),
      vbar1(vbar1_),
      needed(needed_),
      capacity(capacity_) {}

WageFunction wage_shifted(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw std::invalid_argument("wage_shifted: lambda must lie strictly inside (0, 1)");
  }
  return WageFunction({{0.0, 0.0}, {lambda, 0.0}, {1.0, 1.0 - lambda}});
}

Verdict hetero_verify(const Market& market, const Outcome& outcome) {
  Verdict verdict = verify_no_epsw_core(market, outcome);
  const double in_a = plan_measure(market.dist_A, outcome.plan(1, Group::A).intervals);
  const double in_b = plan_measure(market.dist_B, outcome.plan(1, Group::B).intervals);
  if (in_a > econ_tol() && in_b > econ_tol()) {
    verdict.ok = false;
    verdict.violations.push_back(
        {"single-group restriction, firm 1", 0.0, 1.0, std::min(in_a, in_b)});
  }
  return verdict;
}

Outcome bias_no_epsw_core(const Market&, const BiasParams& bias, double vbar) {
  if (!(vbar >= 0.0 && vbar <= 1.0)) {
    throw std::invalid_argument("bias_no_epsw_core: vbar must lie in [0, 1]");
  }
  const WageFunction w2 = splice_identity_above(wage_shifted(bias.lambda), vbar);
  return segregated_outcome(wage_identity(), w2);
}

BiasGapInterval bias_gap_interval(const Market& market, const BiasParams& bias) {
  const double mean_a = moment(market.dist_A, 1);
  const double lo = mean_a - moment(market.dist_B, 1);
  const double hi =
      mean_a - wage_bill(market.dist_B, wage_shifted(bias.lambda), 0.0, 1.0);
  return {lo, hi};
}

BiasFamilyMember bias_group_family(const Market& market, const BiasParams& bias,
                                   double vbar1) {
  if (!(vbar1 >= 0.0 && vbar1 <= 1.0)) {
    throw std::invalid_argument("bias_group_family: vbar1 must lie in [0, 1]");
  }
  const double lambda = bias.lambda;
  const double needed =
      market.beta *
      market.dist_A.integrate_against(Polynomial{-vbar1, 1.0}, vbar1, 1.0);
  const double capacity =
      market.dist_B.integrate_against(Polynomial{-lambda, 1.0}, lambda, 1.0);
  if (needed > capacity) throw VbarInfeasibleError(vbar1, needed, capacity);

  Tolerance tol;
  tol.abs_tol = 1e-11;
  const double vbar2 = bisect_root(
      [&](double c) {
        return market.dist_B.integrate_against(Polynomial{-c, 1.0}, c, 1.0) - needed;
      },
      {lambda, 1.0}, tol);

  Outcome outcome = segregated_outcome(flatten_above(wage_identity(), vbar1),
                                       flatten_above(wage_shifted(lambda), vbar2));
  const AccountingReport report = accounting(market, outcome);
  return {vbar1, vbar2, report.gap, std::move(outcome)};
}

Verdict group_epsw_bias_segregation_check(const Market& market, const BiasParams&,
                                          const Outcome& outcome) {
  Verdict verdict;
  const auto flag = [&](const std::string& condition, double magnitude) {
    verdict.ok = false;
    verdict.violations.push_back({condition, 0.0, 1.0, magnitude});
  };
  const double own_a = plan_measure(market.dist_A, outcome.plan(1, Group::A).intervals);
  const double own_b = plan_measure(market.dist_B, outcome.plan(2, Group::B).intervals);
  const double cross_a =
      plan_measure(market.dist_A, outcome.plan(2, Group::A).intervals);
  const double cross_b =
      plan_measure(market.dist_B, outcome.plan(1, Group::B).intervals);
  if (std::abs(own_a - 1.0) > econ_tol()) {
    flag("coverage, firm 1 group A", std::abs(own_a - 1.0));
  }
  if (std::abs(own_b - 1.0) > econ_tol()) {
    flag("coverage, firm 2 group B", std::abs(own_b - 1.0));
  }
  if (cross_a > econ_tol()) flag("cross-hiring, firm 2 group A", cross_a);
  if (cross_b > econ_tol()) flag("cross-hiring, firm 1 group B", cross_b);
  return verdict;
}

CompetitiveBenchmark n_gt_m_group_benchmark(const MultiMarket& market) {
  const int n_groups = static_cast<int>(market.groups.size());
  if (market.n_firms <= n_groups) {
    throw std::invalid_argument(
        "n_gt_m_group_benchmark: applies only when firms outnumber groups (" +
        std::to_string(market.n_firms) + " firms, " + std::to_string(n_groups) +
        " groups)");
  }
  CompetitiveBenchmark bench;
  bench.n_firms = market.n_firms;
  bench.n_groups = n_groups;
  for (int g = 0; g < n_groups; ++g) {
    bench.competitive.plans.push_back(
        {g + 1, g, {{0.0, 1.0, 1.0}}, wage_identity()});
  }
  return bench;
}

Verdict n_gt_m_verify(const MultiMarket& market, const MultiOutcome& candidate) {
  Verdict verdict;
  const int n_groups = static_cast<int>(market.groups.size());
  const auto flag = [&](const std::string& condition, double lo, double hi,
                        double magnitude) {
    verdict.ok = false;
    verdict.violations.push_back({condition, lo, hi, magnitude});
  };

  std::vector<double> employed(static_cast<std::size_t>(n_groups), 0.0);
  std::vector<double> profits(static_cast<std::size_t>(market.n_firms), 0.0);
  std::vector<std::vector<double>> hired(
      static_cast<std::size_t>(market.n_firms),
      std::vector<double>(static_cast<std::size_t>(n_groups), 0.0));

  for (const MultiPlan& plan : candidate.plans) {
    if (plan.firm < 1 || plan.firm > market.n_firms || plan.group < 0 ||
        plan.group >= n_groups) {
      throw std::invalid_argument("n_gt_m_verify: plan indexes are out of range");
    }
    const MultiGroup& grp = market.groups[static_cast<std::size_t>(plan.group)];
    const double measure = plan_measure(grp.dist, plan.intervals);
    employed[static_cast<std::size_t>(plan.group)] += measure;
    hired[static_cast<std::size_t>(plan.firm - 1)]
         [static_cast<std::size_t>(plan.group)] += measure;
    double surplus = 0.0;
    for (const HiringInterval& h : plan.intervals) {
      surplus += h.share * surplus_integral(grp.dist, plan.wage, h.lo, h.hi);
    }
    profits[static_cast<std::size_t>(plan.firm - 1)] += grp.size * surplus;
    const double dev = identity_deviation(plan.wage, plan.intervals);
    if (dev > econ_tol()) {
      flag("wage, firm " + std::to_string(plan.firm) + ", group " +
               std::to_string(plan.group),
           0.0, 1.0, dev);
    }
  }

  for (int g = 0; g < n_groups; ++g) {
    const double miss = std::abs(employed[static_cast<std::size_t>(g)] - 1.0);
    if (miss > econ_tol()) flag("employment, group " + std::to_string(g), 0.0, 1.0, miss);
  }
  for (int f = 0; f < market.n_firms; ++f) {
    if (std::abs(profits[static_cast<std::size_t>(f)]) > econ_tol()) {
      flag("profit, firm " + std::to_string(f + 1), 0.0, 1.0,
           std::abs(profits[static_cast<std::size_t>(f)]));
    }
    int touched = 0;
    double smallest = 1.0;
    for (int g = 0; g < n_groups; ++g) {
      const double m = hired[static_cast<std::size_t>(f)][static_cast<std::size_t>(g)];
      if (m > econ_tol()) {
        ++touched;
        smallest = std::min(smallest, m);
      }
    }
    if (touched > 1) {
      flag("single-group restriction, firm " + std::to_string(f + 1), 0.0, 1.0,
           smallest);
    }
  }
  return verdict;
}

}  // namespace epsw
