#include "epsw/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace epsw {

namespace {

constexpr double kEdgeTol = 1e-12;

Polynomial derivative(const Polynomial& p) {
  const auto& c = p.coeffs();
  if (c.size() <= 1) return Polynomial{0.0};
  std::vector<double> d(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
  return Polynomial(std::move(d));
}

}  // namespace

std::pair<double, double> poly_range(const Polynomial& p, double lo, double hi) {
  double mn = std::min(p(lo), p(hi));
  double mx = std::max(p(lo), p(hi));
  if (p.degree() >= 2 && hi > lo) {
    const Polynomial dp = derivative(p);
    const int cells = 64 * p.degree();
    double px = dp(lo);
    for (int i = 1; i <= cells; ++i) {
      const double x = lo + (hi - lo) * static_cast<double>(i) / cells;
      const double fx = dp(x);
      if ((px > 0.0) != (fx > 0.0) || px == 0.0) {
        const double a = lo + (hi - lo) * static_cast<double>(i - 1) / cells;
        double root = a;
        if (px != 0.0) {
          Tolerance t;
          t.abs_tol = 1e-13;
          root = bisect_root([&dp](double u) { return dp(u); }, {a, x}, t);
        }
        mn = std::min(mn, p(root));
        mx = std::max(mx, p(root));
      }
      px = fx;
    }
  }
  return {mn, mx};
}

ProductivityDist::ProductivityDist(std::vector<DistPiece> pieces)
    : pieces_(std::move(pieces)) {
  if (pieces_.empty()) {
    throw std::invalid_argument("distribution needs at least one density piece");
  }
  if (std::abs(pieces_.front().lo) > kEdgeTol || std::abs(pieces_.back().hi - 1.0) > kEdgeTol) {
    throw std::invalid_argument("density pieces must cover [0, 1]");
  }
  pieces_.front().lo = 0.0;
  pieces_.back().hi = 1.0;
  f_lower_ = std::numeric_limits<double>::infinity();
  f_upper_ = -std::numeric_limits<double>::infinity();
  double total = 0.0;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    DistPiece& pc = pieces_[i];
    if (!(pc.hi > pc.lo)) {
      throw std::invalid_argument("density pieces must have positive width");
    }
    if (i > 0) {
      if (std::abs(pc.lo - pieces_[i - 1].hi) > kEdgeTol) {
        throw std::invalid_argument("density pieces must be contiguous");
      }
      pc.lo = pieces_[i - 1].hi;
    }
    const auto [mn, mx] = poly_range(pc.density, pc.lo, pc.hi);
    if (mn < -1e-10) {
      std::ostringstream msg;
      msg << "density is negative (min " << mn << " on [" << pc.lo << ", " << pc.hi << "])";
      throw std::invalid_argument(msg.str());
    }
    f_lower_ = std::min(f_lower_, std::max(mn, 0.0));
    f_upper_ = std::max(f_upper_, mx);
    antiderivs_.push_back(pc.density.antiderivative());
    cdf_at_lo_.push_back(total);
    total += pc.density.integral(pc.lo, pc.hi);
  }
  if (std::abs(total - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "density mass is " << total << ", off by " << total - 1.0;
    throw std::invalid_argument(msg.str());
  }
}

double ProductivityDist::density(double v) const {
  if (v < 0.0 || v > 1.0) {
    throw std::invalid_argument("density argument outside [0, 1]");
  }
  // The piece containing v, with breakpoints belonging to the right piece.
  std::size_t i = 0;
  while (i + 1 < pieces_.size() && v >= pieces_[i].hi) ++i;
  return pieces_[i].density(v);
}

double ProductivityDist::cdf(double v) const {
  if (v <= 0.0) return 0.0;
  if (v >= 1.0) return 1.0;
  std::size_t i = 0;
  while (i + 1 < pieces_.size() && v >= pieces_[i].hi) ++i;
  return cdf_at_lo_[i] + antiderivs_[i](v) - antiderivs_[i](pieces_[i].lo);
}

double ProductivityDist::mean() const { return moment(*this, 1); }

double ProductivityDist::integrate_against(const Polynomial& g, double a, double b) const {
  a = std::max(a, 0.0);
  b = std::min(b, 1.0);
  if (b <= a) return 0.0;
  double acc = 0.0;
  for (const DistPiece& pc : pieces_) {
    const double lo = std::max(a, pc.lo);
    const double hi = std::min(b, pc.hi);
    if (hi > lo) acc += (g * pc.density).integral(lo, hi);
  }
  return acc;
}

double ProductivityDist::mass(double a, double b) const {
  return integrate_against(Polynomial::constant(1.0), a, b);
}

ProductivityDist make_uniform() {
  return ProductivityDist({{0.0, 1.0, Polynomial::constant(1.0)}});
}

ProductivityDist make_power(int k) {
  if (k < 1) throw std::invalid_argument("power exponent must be at least 1");
  std::vector<double> c(static_cast<std::size_t>(k), 0.0);
  c.back() = static_cast<double>(k);
  return ProductivityDist({{0.0, 1.0, Polynomial(std::move(c))}});
}

ProductivityDist make_step(const std::vector<double>& breaks,
                           const std::vector<double>& levels) {
  if (levels.size() != breaks.size() + 1) {
    throw std::invalid_argument("need exactly one more level than breakpoints");
  }
  std::vector<double> edges{0.0};
  for (double b : breaks) {
    if (!(b > edges.back() && b < 1.0)) {
      throw std::invalid_argument("breakpoints must be sorted and interior to (0, 1)");
    }
    edges.push_back(b);
  }
  edges.push_back(1.0);
  std::vector<DistPiece> pieces;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    pieces.push_back({edges[i], edges[i + 1], Polynomial::constant(levels[i])});
  }
  return ProductivityDist(std::move(pieces));
}

ProductivityDist pooled(const ProductivityDist& fa, const ProductivityDist& fb,
                        double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("group size ratio must be positive and finite");
  }
  const double wa = beta / (1.0 + beta);
  const double wb = 1.0 / (1.0 + beta);
  std::vector<double> edges;
  for (const DistPiece& pc : fa.pieces()) edges.push_back(pc.hi);
  for (const DistPiece& pc : fb.pieces()) edges.push_back(pc.hi);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](double x, double y) { return std::abs(x - y) <= kEdgeTol; }),
              edges.end());
  std::vector<DistPiece> pieces;
  double lo = 0.0;
  for (double hi : edges) {
    const double mid = 0.5 * (lo + hi);
    const auto owning = [mid](const ProductivityDist& d) {
      std::size_t i = 0;
      while (i + 1 < d.pieces().size() && mid >= d.pieces()[i].hi) ++i;
      return d.pieces()[i].density;
    };
    pieces.push_back({lo, hi,
                      Polynomial::constant(wa) * owning(fa) +
                          Polynomial::constant(wb) * owning(fb)});
    lo = hi;
  }
  return ProductivityDist(std::move(pieces));
}

double moment(const ProductivityDist& d, int order) {
  if (order < 0) throw std::invalid_argument("moment order must be non-negative");
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  c.back() = 1.0;
  return d.integrate_against(Polynomial(std::move(c)), 0.0, 1.0);
}

RegularityReport regularity(const ProductivityDist& d) {
  RegularityReport r;
  r.f_lower = d.f_lower();
  r.f_upper = d.f_upper();
  r.strictly_positive = r.f_lower > 0.0;
  if (!r.strictly_positive) {
    r.warnings.push_back(
        "density infimum is 0: uniqueness and comparative-statics results assume a "
        "density bounded away from zero, and outputs may be sensitive to small "
        "perturbations of the distribution");
  }
  return r;
}

}  // namespace epsw
