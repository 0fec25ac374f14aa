#include "epsw/market.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace epsw {

namespace {

constexpr double kShareTol = 1e-9;

void validate_plan(const FirmGroupPlan& plan, const char* label) {
  double prev_hi = 0.0;
  bool first = true;
  for (const HiringInterval& iv : plan.intervals) {
    if (!(iv.lo <= iv.hi) || iv.lo < -1e-12 || iv.hi > 1.0 + 1e-12) {
      std::ostringstream msg;
      msg << label << ": hiring interval [" << iv.lo << ", " << iv.hi
          << "] outside [0, 1] or reversed";
      throw FeasibilityError(msg.str(), iv.lo, iv.hi);
    }
    if (iv.share < -kShareTol || iv.share > 1.0 + kShareTol) {
      std::ostringstream msg;
      msg << label << ": hiring share " << iv.share << " outside [0, 1]";
      throw FeasibilityError(msg.str(), iv.lo, iv.hi);
    }
    if (!first && iv.lo < prev_hi - 1e-12) {
      std::ostringstream msg;
      msg << label << ": hiring intervals overlap at " << iv.lo;
      throw FeasibilityError(msg.str(), prev_hi, iv.lo);
    }
    prev_hi = iv.hi;
    first = false;
  }
}

double share_at(const FirmGroupPlan& plan, double v) {
  for (const HiringInterval& iv : plan.intervals) {
    if (v >= iv.lo && v < iv.hi) return iv.share;
  }
  return 0.0;
}

// Wage bill against share-weighted hiring: sum over intervals of
// share * integral of w f on the interval.
double plan_bill(const ProductivityDist& f, const FirmGroupPlan& plan) {
  double acc = 0.0;
  for (const HiringInterval& iv : plan.intervals) {
    acc += iv.share * wage_bill(f, plan.wage, iv.lo, iv.hi);
  }
  return acc;
}

double plan_surplus(const ProductivityDist& f, const FirmGroupPlan& plan) {
  double acc = 0.0;
  for (const HiringInterval& iv : plan.intervals) {
    acc += iv.share * surplus_integral(f, plan.wage, iv.lo, iv.hi);
  }
  return acc;
}

double plan_mass(const ProductivityDist& f, const FirmGroupPlan& plan) {
  double acc = 0.0;
  for (const HiringInterval& iv : plan.intervals) {
    acc += iv.share * f.mass(iv.lo, iv.hi);
  }
  return acc;
}

}  // namespace

Market make_market(double beta, ProductivityDist dist_A, ProductivityDist dist_B) {
  if (!(beta >= 1.0) || !std::isfinite(beta)) {
    throw std::invalid_argument(
        "group size ratio must be at least 1 (group A is the larger group)");
  }
  return Market{beta, std::move(dist_A), std::move(dist_B)};
}

MultiMarket make_multi_market(int n_firms, std::vector<MultiGroup> groups) {
  if (n_firms < 2) throw std::invalid_argument("need at least two firms");
  if (groups.empty()) throw std::invalid_argument("need at least one group");
  double total = 0.0;
  for (const MultiGroup& g : groups) {
    if (!(g.size > 0.0)) throw std::invalid_argument("group sizes must be positive");
    total += g.size;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    std::ostringstream msg;
    msg << "group sizes must sum to 1, got " << total;
    throw std::invalid_argument(msg.str());
  }
  return MultiMarket{n_firms, std::move(groups)};
}

FirmGroupPlan& Outcome::plan(int firm, Group g) {
  if (firm < 1 || firm > 2) throw std::invalid_argument("firm index must be 1 or 2");
  return plans[static_cast<std::size_t>(firm - 1)][static_cast<std::size_t>(g)];
}

const FirmGroupPlan& Outcome::plan(int firm, Group g) const {
  if (firm < 1 || firm > 2) throw std::invalid_argument("firm index must be 1 or 2");
  return plans[static_cast<std::size_t>(firm - 1)][static_cast<std::size_t>(g)];
}

double wage_bill(const ProductivityDist& f, const WageFunction& w, double lo, double hi) {
  lo = std::max(lo, 0.0);
  hi = std::min(hi, 1.0);
  if (hi <= lo) return 0.0;
  double acc = 0.0;
  const auto& k = w.knots();
  for (std::size_t i = 0; i + 1 < k.size(); ++i) {
    if (k[i + 1].v <= k[i].v) continue;  // jump, measure zero
    const double a = std::max(lo, k[i].v);
    const double b = std::min(hi, k[i + 1].v);
    if (b <= a) continue;
    const double slope = (k[i + 1].w - k[i].w) / (k[i + 1].v - k[i].v);
    const Polynomial line({k[i].w - slope * k[i].v, slope});
    acc += f.integrate_against(line, a, b);
  }
  return acc;
}

double surplus_integral(const ProductivityDist& f, const WageFunction& w, double lo,
                        double hi) {
  return f.integrate_against(Polynomial({0.0, 1.0}), lo, hi) - wage_bill(f, w, lo, hi);
}

void check_feasible(const Market& market, const Outcome& outcome) {
  (void)market;
  for (int firm = 1; firm <= 2; ++firm) {
    validate_plan(outcome.plan(firm, Group::A), firm == 1 ? "firm 1, group A" : "firm 2, group A");
    validate_plan(outcome.plan(firm, Group::B), firm == 1 ? "firm 1, group B" : "firm 2, group B");
  }
  for (Group g : {Group::A, Group::B}) {
    std::vector<double> edges{0.0, 1.0};
    for (int firm = 1; firm <= 2; ++firm) {
      for (const HiringInterval& iv : outcome.plan(firm, g).intervals) {
        edges.push_back(std::clamp(iv.lo, 0.0, 1.0));
        edges.push_back(std::clamp(iv.hi, 0.0, 1.0));
      }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      if (edges[i + 1] - edges[i] < 1e-12) continue;
      const double mid = 0.5 * (edges[i] + edges[i + 1]);
      const double total =
          share_at(outcome.plan(1, g), mid) + share_at(outcome.plan(2, g), mid);
      if (total > 1.0 + kShareTol) {
        std::ostringstream msg;
        msg << "group " << (g == Group::A ? "A" : "B") << " is over-hired (total share "
            << total << ") on [" << edges[i] << ", " << edges[i + 1] << "]";
        throw FeasibilityError(msg.str(), edges[i], edges[i + 1]);
      }
    }
  }
}

double profit(const Market& market, const Outcome& outcome, int firm) {
  check_feasible(market, outcome);
  return market.beta * plan_surplus(market.dist_A, outcome.plan(firm, Group::A)) +
         plan_surplus(market.dist_B, outcome.plan(firm, Group::B));
}

AccountingReport accounting(const Market& market, const Outcome& outcome) {
  check_feasible(market, outcome);
  AccountingReport r;
  r.profit_1 = market.beta * plan_surplus(market.dist_A, outcome.plan(1, Group::A)) +
               plan_surplus(market.dist_B, outcome.plan(1, Group::B));
  r.profit_2 = market.beta * plan_surplus(market.dist_A, outcome.plan(2, Group::A)) +
               plan_surplus(market.dist_B, outcome.plan(2, Group::B));
  r.aw_A = plan_bill(market.dist_A, outcome.plan(1, Group::A)) +
           plan_bill(market.dist_A, outcome.plan(2, Group::A));
  r.aw_B = plan_bill(market.dist_B, outcome.plan(1, Group::B)) +
           plan_bill(market.dist_B, outcome.plan(2, Group::B));
  r.ts_A = market.beta * market.dist_A.mean();
  r.ts_B = market.dist_B.mean();
  r.gap = r.aw_A - r.aw_B;
  r.employment_A =
      market.beta * (plan_mass(market.dist_A, outcome.plan(1, Group::A)) +
                     plan_mass(market.dist_A, outcome.plan(2, Group::A)));
  r.employment_B = plan_mass(market.dist_B, outcome.plan(1, Group::B)) +
                   plan_mass(market.dist_B, outcome.plan(2, Group::B));
  return r;
}

double gap_identity_residual(const Market& market, const AccountingReport& report) {
  const double lhs = report.ts_A - report.ts_B + (1.0 - market.beta) * report.aw_A;
  const double rhs = report.aw_A - report.aw_B;
  return std::abs(lhs - rhs);
}

Outcome segregated_outcome(const WageFunction& w1, const WageFunction& w2) {
  Outcome o;
  o.plan(1, Group::A) = {{{0.0, 1.0, 1.0}}, w1};
  o.plan(2, Group::B) = {{{0.0, 1.0, 1.0}}, w2};
  return o;
}

Outcome split_outcome(double cut, const WageFunction& wage) {
  if (cut < 0.0 || cut > 1.0) throw std::invalid_argument("split must lie in [0, 1]");
  Outcome o;
  o.plan(1, Group::A) = {{{0.0, cut, 1.0}}, wage};
  o.plan(1, Group::B) = {{{0.0, cut, 1.0}}, wage};
  o.plan(2, Group::A) = {{{cut, 1.0, 1.0}}, wage};
  o.plan(2, Group::B) = {{{cut, 1.0, 1.0}}, wage};
  return o;
}

}  // namespace epsw
