#pragma once

#include <cstddef>
#include <optional>

#include "epsw/market.hpp"

namespace epsw {

// Grid too coarse: key statistics still moving after refinement.
struct ResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested construction needs a core that does not exist.
struct CoreExistenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// No feasible partner threshold: firm 1's profit target exceeds the whole
// surplus available on the other side.
struct DeltaInfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sampled poaching frontier for a fixed second-firm schedule. phi(eps) is the
// highest productivity firm 2 could raid up to, paying eps across the board,
// before the raid stops being profitable; w1hat_inv is its largest
// non-decreasing minorant and w1_hat the induced first-firm schedule.
struct PhiCurve {
  std::vector<double> eps_grid;
  std::vector<double> phi;
  std::vector<double> w1hat_inv;
  double E_cap = 1.0;   // first wage level whose frontier reaches the top
  double pi2 = 0.0;     // second-firm profit the curve was built against
  double pi1_hat = 0.0; // best first-firm profit compatible with no raids
  std::optional<double> eps_star;  // left edge of the widest flat stretch
  WageFunction w1_hat = wage_zero();
};

struct NdcWorst {
  double eps = 0.0;
  double slack = 0.0;
};

struct GroupCoreReport {
  bool ir_ok = false;
  double equal_profit_residual = 0.0;  // profit_1 - profit_2
  NdcWorst ndc_worst;
  bool is_core = false;
  double profit_1 = 0.0;
  double profit_2 = 0.0;
  double gap = 0.0;
};

// Profit a raider could still make on workers currently priced by w2: the
// exact integral of (v - eps) f_B between eps and the highest productivity
// whose w2-wage is at most eps.
double poach_gain_b(const Market& market, const WageFunction& w2, double eps);

// pi2 minus the total two-group raid gain at uniform raid wage eps.
// Non-negative for every eps exactly when no desegregating raid is profitable.
double ndc_slack(const Market& market, const WageFunction& w1, const WageFunction& w2,
                 double eps);

double phi(const Market& market, const WageFunction& w2, double eps);

PhiCurve build_phi_curve(const Market& market, const WageFunction& w2,
                         std::size_t grid_size = 2049);

struct ExistsResult {
  bool exists = false;
  PhiCurve curve;
};

// A segregated core paying w2 on the B side exists iff the frontier-optimal
// first-firm profit weakly exceeds pi2.
ExistsResult core_exists_with_w2(const Market& market, const WageFunction& w2);

struct CompletedW1 {
  WageFunction w1 = wage_zero();
  double x_star = 0.0;
  double profit = 0.0;
};

// Splices identity wages on top of the frontier schedule at the point where
// firm 1's profit falls to pi2, yielding an equal-profit core schedule.
CompletedW1 complete_w1(const Market& market, const WageFunction& w2,
                        const PhiCurve& curve);

GroupCoreReport verify_group_core(const Market& market, const WageFunction& w1,
                                  const WageFunction& w2);

struct DeltaFamilyMember {
  double delta = 0.0;
  double delta_prime = 0.0;
  Outcome outcome;
  bool is_core = false;
  double profit = 0.0;
  double gap_value = 0.0;
};

// Equal-profit pair (cap(delta), threshold(delta_prime)); supportable as a
// core exactly when delta >= delta_prime.
DeltaFamilyMember delta_family(const Market& market, double delta);

// Smallest group-size ratio in [1, beta_hi] at which a core paying w2 exists.
// Returns 1 when it already exists at beta = 1 and +infinity when beta_hi is
// not enough. The threshold is sharp only when the raid gain on the B side is
// non-increasing in the raid wage; otherwise this is the smallest value found
// on the bisection lattice.
double beta_star(const ProductivityDist& dist_A, const ProductivityDist& dist_B,
                 const WageFunction& w2, double beta_hi);

struct ShortfallBound {
  bool applicable = false;
  bool holds = false;
  double delta = 0.0;  // largest wage shortfall sup_v (v - w1(v))
  double lhs = 0.0;    // (beta/2) delta^2 f_lower_A
};

// Necessary condition on any core: the cheapest raid on the most underpaid
// first-firm workers already earns (beta/2) delta^2 f_lower_A, so that amount
// can be at most pi2. Inapplicable when the A-density is not bounded away
// from zero.
ShortfallBound shortfall_bound(const Market& market, const WageFunction& w1,
                               double pi2);

}  // namespace epsw
