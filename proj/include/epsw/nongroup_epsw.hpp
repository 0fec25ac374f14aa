#pragma once

#include <stdexcept>
#include <vector>

#include "epsw/market.hpp"

namespace epsw {

// Core outcome when each firm must pay one wage to everybody it hires.
// Firm 1 hires [w1, w2) at wage w1, firm 2 hires [w2, 1] at wage w2, and
// workers below w1 stay unemployed.
struct UniformWageCore {
  double w1 = 0.0;
  double w2 = 0.0;
  double w1_star = 0.0;
  double profit = 0.0;
  double unemployed_measure = 0.0;
  // Group A average pay minus group B average pay, per unit of group mass,
  // with the unemployed counted at wage zero.
  double gap = 0.0;
};

// Ladder of n single-wage firms: firm i hires [wages[i-1], wages[i]) and the
// top firm hires up to 1. Every firm earns the common profit p.
struct MultiFirmCore {
  std::vector<double> wages;
  double p = 0.0;
  double w1_star = 0.0;
};

// The requested bottom wage is too high to survive: hiring the workers left
// unemployed below it at wage zero would beat the going equal-profit level.
struct NotACoreError : std::runtime_error {
  NotACoreError(double entry_profit_, double core_profit_);
  double entry_profit;
  double core_profit;
};

// Productivity density faced by group-blind firms: sizes-weighted mixture.
ProductivityDist pooled_density(const Market& market);
ProductivityDist pooled_density(const MultiMarket& market);

// The unique higher wage that equalizes the two firms' profits when firm 1
// pays w1: the profit difference is strictly decreasing in w2.
double w2_of_w1(const Market& market, double w1);

// Largest supportable bottom wage. Above it the entry profit from the
// unemployed segment exceeds what the incumbents earn.
double w1_star(const Market& market);

UniformWageCore nongroup_core(const Market& market, double w1);

// Residual top-interval profit after every lower interval, starting with the
// unemployment segment [0, w_1), is stretched to absorb profit p. The core
// profit level is the fixed point of this map.
double multifirm_eta(const MultiMarket& market, double p);

MultiFirmCore multifirm_core(const MultiMarket& market, double w1);

// Step market with total mass eps^2/4 spread below 1 - eps/2. It supports a
// core outcome whose bottom wage leaves that whole range unemployed; one
// admissible construction among many.
Market tail_heavy_market(double eps);

// Paired demonstration that the one-wage rule can move the pay gap either way
// against the wage-equals-productivity benchmark in the same market.
struct AnythingGoesReport {
  double eps = 0.0;
  double beta = 0.0;
  Market market;
  UniformWageCore raised;   // bottom wage 1/2: gap above the benchmark
  UniformWageCore lowered;  // bottom wage 0: gap below the benchmark
  double benchmark_gap = 0.0;
};

AnythingGoesReport anything_goes_scenarios(double eps);

}  // namespace epsw
