#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace epsw {

struct Tolerance {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_iter = 200;
};

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

struct BracketError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& what, Bracket last_bracket)
      : std::runtime_error(what), last(last_bracket) {}
  Bracket last;
};

// Economic tolerance used by all equilibrium-condition comparisons, distinct
// from solver tolerances. Initialized from EPSW_ECON_TOL if set, else 1e-7.
double econ_tol();
void set_econ_tol(double t);

// Dense polynomial, coefficients in ascending order: c[0] + c[1] x + ...
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<double> coeffs) : c_(coeffs) { trim(); }
  explicit Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial constant(double c) { return Polynomial{c}; }

  double operator()(double x) const {
    double acc = 0.0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial antiderivative() const;

  // Exact integral over [lo, hi] via the antiderivative.
  double integral(double lo, double hi) const;

  int degree() const { return c_.empty() ? 0 : static_cast<int>(c_.size()) - 1; }
  const std::vector<double>& coeffs() const { return c_; }

 private:
  void trim() {
    while (c_.size() > 1 && c_.back() == 0.0) c_.pop_back();
  }
  std::vector<double> c_;
};

struct Segment {
  double lo = 0.0;
  double hi = 0.0;
  Polynomial poly;
};

namespace detail {
// 20-point Gauss-Legendre rule on [-1, 1]; exact for degree <= 39.
inline constexpr std::array<std::array<double, 2>, 20> kGauss20 = {{
    {-9.93128599185094885e-01, 1.76140071391532732e-02},
    {-9.63971927277913809e-01, 4.06014298003862170e-02},
    {-9.12234428251325835e-01, 6.26720483341094425e-02},
    {-8.39116971822218782e-01, 8.32767415767046715e-02},
    {-7.46331906460150796e-01, 1.01930119817240261e-01},
    {-6.36053680726515025e-01, 1.18194531961518245e-01},
    {-5.10867001950827126e-01, 1.31688638449176526e-01},
    {-3.73706088715419549e-01, 1.42096109318381875e-01},
    {-2.27785851141645096e-01, 1.49172986472603658e-01},
    {-7.65265211334973383e-02, 1.52753387130725782e-01},
    {+7.65265211334973383e-02, 1.52753387130725782e-01},
    {+2.27785851141645096e-01, 1.49172986472603658e-01},
    {+3.73706088715419549e-01, 1.42096109318381875e-01},
    {+5.10867001950827126e-01, 1.31688638449176526e-01},
    {+6.36053680726515025e-01, 1.18194531961518245e-01},
    {+7.46331906460150796e-01, 1.01930119817240261e-01},
    {+8.39116971822218782e-01, 8.32767415767046715e-02},
    {+9.12234428251325835e-01, 6.26720483341094425e-02},
    {+9.63971927277913809e-01, 4.06014298003862170e-02},
    {+9.93128599185094885e-01, 1.76140071391532732e-02},
}};
}  // namespace detail

// Fixed-order Gauss-Legendre quadrature of f on [lo, hi]. Exact (to machine
// rounding) whenever f is a polynomial of degree <= 39, which covers every
// integrand this library produces after splitting at breakpoints.
template <typename F>
double gl_integrate(F&& f, double lo, double hi) {
  if (hi <= lo) return 0.0;
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double acc = 0.0;
  for (const auto& [x, w] : detail::kGauss20) acc += w * f(mid + half * x);
  return acc * half;
}

// Integrates a list of contiguous polynomial segments. The segments must be
// ordered and partition a subinterval of [0, 1].
double integrate_piecewise(const std::vector<Segment>& segments);

// Bisection for a sign change of f on b. Requires opposite (or zero) signs at
// the endpoints; intended for monotone f, where the root is unique.
double bisect_root(const std::function<double(double)>& f, Bracket b, Tolerance t = {});

// z[i] = min(ys[i..end]): the largest non-decreasing sequence pointwise <= ys.
// xs is the (strictly increasing) abscissa vector and is used for validation.
std::vector<double> running_right_infimum(const std::vector<double>& xs,
                                          const std::vector<double>& ys);

struct SimpsonResult {
  double value = 0.0;
  // |full-resolution - half-resolution| estimate; small when the grid resolves
  // the integrand.
  double richardson_delta = 0.0;
};

// Composite Simpson on a uniformly spaced sample (point count 2^k + 1, k >= 2),
// with a consistency estimate from the half-resolution rule.
SimpsonResult simpson_sampled(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace epsw
