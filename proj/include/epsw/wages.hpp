#pragma once

#include <vector>

#include "epsw/numerics.hpp"

namespace epsw {

struct WageKnot {
  double v = 0.0;
  double w = 0.0;
};

struct IRReport {
  bool ok = false;
  // Productivity level where w(v) - v is largest, and that largest value.
  double witness_v = 0.0;
  double violation = 0.0;
};

// Monotone non-decreasing wage schedule on [0, 1], piecewise linear between
// knots. A repeated v-coordinate encodes a jump: the first knot carries the
// left limit, the second the value, so evaluation is right-continuous and
// picks the upper value at the jump point.
class WageFunction {
 public:
  explicit WageFunction(std::vector<WageKnot> knots);

  double operator()(double v) const;
  const std::vector<WageKnot>& knots() const { return knots_; }

 private:
  std::vector<WageKnot> knots_;
};

WageFunction wage_identity();
WageFunction wage_zero();
WageFunction wage_linear(double slope);

// min(v, delta): identity up to delta, then flat.
WageFunction wage_cap(double delta);

// v for v >= delta_prime, zero below (jump at delta_prime).
WageFunction wage_threshold(double delta_prime);

// sup{v : w(v) <= eps}, or 0 when no productivity level clears the bar. The
// sup only sees left limits, so a jump from below eps to above eps at v0
// returns v0 itself.
double generalized_inverse(const WageFunction& w, double eps);

// Checks w(v) <= v + econ_tol() everywhere and reports the worst offender.
IRReport individual_rationality(const WageFunction& w);

// Equals w up to vbar, then constant at w(vbar).
WageFunction flatten_above(const WageFunction& w, double vbar);

// Equals w strictly below x, then the identity from x on. Used to extend a
// low-productivity schedule with market-clearing wages at the top.
WageFunction splice_identity_above(const WageFunction& w, double x);

}  // namespace epsw
