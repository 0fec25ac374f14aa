#pragma once

#include <stdexcept>
#include <vector>

#include "epsw/core_no_epsw.hpp"
#include "epsw/market.hpp"

namespace epsw {

// Firm 1 suffers a constant per-worker disutility for B-group hires, so it
// values such a worker at v - lambda.
struct BiasParams {
  double lambda = 0.0;
};

BiasParams make_bias(double lambda);

// Range of pay gaps supported across frictionless cores when firm 1 is
// biased: from the wage-equals-productivity gap up to the gap of the outcome
// that pays B-group workers only firm 1's depressed valuation.
struct BiasGapInterval {
  double lo = 0.0;
  double hi = 0.0;
};

// Requested flattening point on the A side needs more wage reduction than the
// whole depressed B-side schedule can give up.
struct VbarInfeasibleError : std::runtime_error {
  VbarInfeasibleError(double vbar1_, double needed_, double capacity_);
  double vbar1;
  double needed;
  double capacity;
};

// The schedule max(0, v - lambda): firm 1's valuation of a B-group worker,
// floored at zero.
WageFunction wage_shifted(double lambda);

// Both firms are unconstrained, but firm 1 may hire only one group. A valid
// outcome is a competitive one (full employment, wage equals productivity)
// whose firm-1 support stays inside a single group.
Verdict hetero_verify(const Market& market, const Outcome& outcome);

// Frictionless core with a biased firm 1: firm 2 hires all of B at the
// depressed wage below vbar and at productivity above, firm 1 hires all of A
// at productivity. The gap moves continuously in vbar across the whole
// supported interval.
Outcome bias_no_epsw_core(const Market& market, const BiasParams& bias, double vbar);

BiasGapInterval bias_gap_interval(const Market& market, const BiasParams& bias);

// One member of the segregated family under the equal-pay rule with bias:
// flatten the A schedule at vbar1, then flatten the depressed B schedule at
// the point that gives up the same profit-weighted wage reduction.
struct BiasFamilyMember {
  double vbar1 = 0.0;
  double vbar2 = 0.0;
  double gap = 0.0;
  Outcome outcome;
};

BiasFamilyMember bias_group_family(const Market& market, const BiasParams& bias,
                                   double vbar1);

// Bias pins the direction of segregation: firm 1 takes the A group, firm 2
// the B group, with no positive cross-hiring.
Verdict group_epsw_bias_segregation_check(const Market& market, const BiasParams& bias,
                                          const Outcome& outcome);

// Hiring plan of one firm for one group in a many-firm market. Group indexes
// into MultiMarket::groups; firms are numbered from 1.
struct MultiPlan {
  int firm = 1;
  int group = 0;
  std::vector<HiringInterval> intervals;
  WageFunction wage = wage_zero();
};

struct MultiOutcome {
  std::vector<MultiPlan> plans;
};

// When firms outnumber groups, competition for whole groups drives every
// profit to zero: full employment, wages equal to productivity, and each firm
// hiring inside a single group.
struct CompetitiveBenchmark {
  int n_firms = 0;
  int n_groups = 0;
  MultiOutcome competitive;
};

CompetitiveBenchmark n_gt_m_group_benchmark(const MultiMarket& market);

Verdict n_gt_m_verify(const MultiMarket& market, const MultiOutcome& candidate);

}  // namespace epsw
