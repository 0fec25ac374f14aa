#pragma once

#include <string>
#include <utility>
#include <vector>

#include "epsw/numerics.hpp"

namespace epsw {

struct DistPiece {
  double lo = 0.0;
  double hi = 0.0;
  Polynomial density;
};

struct RegularityReport {
  bool strictly_positive = false;
  double f_lower = 0.0;
  double f_upper = 0.0;
  std::vector<std::string> warnings;
};

// Absolutely continuous productivity distribution on [0, 1] with a piecewise
// polynomial density. Construction validates the partition, non-negativity and
// unit mass; CDF, moments and weighted integrals are exact (antiderivatives).
class ProductivityDist {
 public:
  explicit ProductivityDist(std::vector<DistPiece> pieces);

  double density(double v) const;
  double cdf(double v) const;
  double mean() const;
  double f_lower() const { return f_lower_; }
  double f_upper() const { return f_upper_; }
  const std::vector<DistPiece>& pieces() const { return pieces_; }

  // Exact integral of g(v) f(v) dv over [a, b] clipped to [0, 1]; zero when
  // the clipped range is empty.
  double integrate_against(const Polynomial& g, double a, double b) const;
  double mass(double a, double b) const;

 private:
  std::vector<DistPiece> pieces_;
  std::vector<Polynomial> antiderivs_;
  std::vector<double> cdf_at_lo_;
  double f_lower_ = 0.0;
  double f_upper_ = 0.0;
};

ProductivityDist make_uniform();

// Density k v^(k-1), CDF v^k.
ProductivityDist make_power(int k);

// Piecewise-constant density with the given interior breakpoints. The levels
// must integrate to one over the induced partition.
ProductivityDist make_step(const std::vector<double>& breaks,
                           const std::vector<double>& levels);

// Convex combination with weight beta/(1+beta) on fa and 1/(1+beta) on fb.
ProductivityDist pooled(const ProductivityDist& fa, const ProductivityDist& fb,
                        double beta);

double moment(const ProductivityDist& d, int order);

// Reports the density's extrema and whether it is bounded away from zero.
// A vanishing infimum is a warning, not an error: results that rely on a
// strictly positive density may be sensitive to small perturbations.
RegularityReport regularity(const ProductivityDist& d);

// {min, max} of p on [lo, hi]. Exact through the endpoints and interior
// critical points; critical points come from a sign-change scan of p'.
std::pair<double, double> poly_range(const Polynomial& p, double lo, double hi);

}  // namespace epsw
