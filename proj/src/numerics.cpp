#include "epsw/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace epsw {

namespace {

double& econ_tol_slot() {
  static double value = [] {
    if (const char* s = std::getenv("EPSW_ECON_TOL")) {
      char* end = nullptr;
      const double t = std::strtod(s, &end);
      if (end != s && t > 0.0 && std::isfinite(t)) return t;
    }
    return 1e-7;
  }();
  return value;
}

}  // namespace

double econ_tol() { return econ_tol_slot(); }

void set_econ_tol(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("economic tolerance must be positive and finite");
  }
  econ_tol_slot() = t;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (c_.empty() || o.c_.empty()) return Polynomial{};
  std::vector<double> out(c_.size() + o.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<double> out(std::max(c_.size(), o.c_.size()), 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) out[i] += o.c_[i];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::antiderivative() const {
  std::vector<double> out(c_.size() + 1, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) out[i + 1] = c_[i] / static_cast<double>(i + 1);
  return Polynomial(std::move(out));
}

double Polynomial::integral(double lo, double hi) const {
  const Polynomial F = antiderivative();
  return F(hi) - F(lo);
}

double integrate_piecewise(const std::vector<Segment>& segments) {
  constexpr double kEdgeTol = 1e-12;
  double acc = 0.0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const Segment& s = segments[i];
    if (!(s.lo <= s.hi)) {
      throw std::invalid_argument("integrate_piecewise: segment with lo > hi");
    }
    if (s.lo < -kEdgeTol || s.hi > 1.0 + kEdgeTol) {
      throw std::invalid_argument("integrate_piecewise: segment outside [0, 1]");
    }
    if (i > 0 && std::abs(s.lo - segments[i - 1].hi) > kEdgeTol) {
      throw std::invalid_argument(
          "integrate_piecewise: segments must be contiguous and ordered");
    }
    acc += gl_integrate(s.poly, s.lo, s.hi);
  }
  return acc;
}

double bisect_root(const std::function<double(double)>& f, Bracket b, Tolerance t) {
  if (!(b.lo <= b.hi) || !std::isfinite(b.lo) || !std::isfinite(b.hi)) {
    throw BracketError("bisect_root: invalid bracket");
  }
  double flo = f(b.lo);
  double fhi = f(b.hi);
  if (flo == 0.0) return b.lo;
  if (fhi == 0.0) return b.hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw BracketError("bisect_root: endpoints have the same sign");
  }
  for (int it = 0; it < t.max_iter; ++it) {
    const double mid = 0.5 * (b.lo + b.hi);
    const double fmid = f(mid);
    if (fmid == 0.0 || b.hi - b.lo < t.abs_tol) return mid;
    if ((fmid > 0.0) == (fhi > 0.0)) {
      b.hi = mid;
      fhi = fmid;
    } else {
      b.lo = mid;
      flo = fmid;
    }
  }
  if (b.hi - b.lo < t.abs_tol) return 0.5 * (b.lo + b.hi);
  throw ConvergenceError("bisect_root: iteration cap reached", b);
}

std::vector<double> running_right_infimum(const std::vector<double>& xs,
                                          const std::vector<double>& ys) {
  if (xs.empty() || xs.size() != ys.size()) {
    throw std::invalid_argument("running_right_infimum: empty or mismatched input");
  }
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) {
      throw std::invalid_argument("running_right_infimum: xs must be strictly increasing");
    }
  }
  std::vector<double> z(ys.size());
  double running = ys.back();
  for (std::size_t i = ys.size(); i-- > 0;) {
    running = std::min(running, ys[i]);
    z[i] = running;
  }
  return z;
}

SimpsonResult simpson_sampled(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  if (n != ys.size() || n < 5 || (n - 1) % 4 != 0) {
    throw std::invalid_argument(
        "simpson_sampled: need matching samples with point count 2^k + 1, k >= 2");
  }
  const double h = (xs.back() - xs.front()) / static_cast<double>(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs((xs[i] - xs[i - 1]) - h) > 1e-9 * std::max(1.0, std::abs(h))) {
      throw std::invalid_argument("simpson_sampled: grid must be uniform");
    }
  }
  const auto composite = [&](std::size_t stride) {
    double acc = ys.front() + ys.back();
    for (std::size_t i = stride; i < n - 1; i += stride) {
      acc += ys[i] * ((i / stride) % 2 == 1 ? 4.0 : 2.0);
    }
    return acc * (h * static_cast<double>(stride)) / 3.0;
  };
  const double full = composite(1);
  const double half = composite(2);
  return {full, std::abs(full - half)};
}

}  // namespace epsw
