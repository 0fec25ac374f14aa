#pragma once

#include <array>
#include <string>
#include <vector>

#include "epsw/distributions.hpp"
#include "epsw/wages.hpp"

namespace epsw {

enum class Group { A = 0, B = 1 };

// Two-firm labor market: group A has measure beta (at least the measure 1 of
// group B), productivities drawn from dist_A and dist_B.
struct Market {
  double beta = 1.0;
  ProductivityDist dist_A;
  ProductivityDist dist_B;
};

Market make_market(double beta, ProductivityDist dist_A, ProductivityDist dist_B);

struct MultiGroup {
  double size = 0.0;
  ProductivityDist dist;
};

// n firms, any number of groups; group sizes are normalized to sum to one.
struct MultiMarket {
  int n_firms = 2;
  std::vector<MultiGroup> groups;
};

MultiMarket make_multi_market(int n_firms, std::vector<MultiGroup> groups);

// Hiring of share * f_g on [lo, hi].
struct HiringInterval {
  double lo = 0.0;
  double hi = 0.0;
  double share = 0.0;
};

struct FirmGroupPlan {
  std::vector<HiringInterval> intervals;
  WageFunction wage = wage_zero();
};

// Hiring densities and wage schedules for both firms and groups. Firms are
// indexed 1 and 2.
struct Outcome {
  std::array<std::array<FirmGroupPlan, 2>, 2> plans;

  FirmGroupPlan& plan(int firm, Group g);
  const FirmGroupPlan& plan(int firm, Group g) const;
};

struct FeasibilityError : std::runtime_error {
  FeasibilityError(const std::string& what, double lo_, double hi_)
      : std::runtime_error(what), lo(lo_), hi(hi_) {}
  double lo;
  double hi;
};

struct AccountingReport {
  double profit_1 = 0.0;
  double profit_2 = 0.0;
  // Group averages over the whole group, unemployed workers counting as wage 0.
  double aw_A = 0.0;
  double aw_B = 0.0;
  // Total surpluses: beta * E_A and E_B regardless of the outcome.
  double ts_A = 0.0;
  double ts_B = 0.0;
  double gap = 0.0;
  // Employed measures; beta and 1 mean full employment.
  double employment_A = 0.0;
  double employment_B = 0.0;
};

// Exact integral of w(v) f(v) dv over [lo, hi].
double wage_bill(const ProductivityDist& f, const WageFunction& w, double lo, double hi);

// Exact integral of (v - w(v)) f(v) dv over [lo, hi].
double surplus_integral(const ProductivityDist& f, const WageFunction& w, double lo,
                        double hi);

// Throws FeasibilityError when hiring shares are malformed or total hiring of
// some group exceeds its supply.
void check_feasible(const Market& market, const Outcome& outcome);

double profit(const Market& market, const Outcome& outcome, int firm);

AccountingReport accounting(const Market& market, const Outcome& outcome);

// Absolute residual of the surplus decomposition that ties the wage gap to
// total surpluses under equal profits and full segregation:
// ts_A - ts_B + (1 - beta) aw_A = aw_A - aw_B.
double gap_identity_residual(const Market& market, const AccountingReport& report);

// Firm 1 hires all of A under w1, firm 2 all of B under w2.
Outcome segregated_outcome(const WageFunction& w1, const WageFunction& w2);

// Both groups split at the cut: firm 1 hires [0, cut], firm 2 the rest, with
// the same wage schedule everywhere.
Outcome split_outcome(double cut, const WageFunction& wage);

}  // namespace epsw
