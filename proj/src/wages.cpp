#include "epsw/wages.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace epsw {

namespace {

constexpr double kSnap = 1e-12;

double snap_unit(double x, const char* what) {
  if (x < -kSnap || x > 1.0 + kSnap) {
    throw std::invalid_argument(std::string(what) + " outside [0, 1]");
  }
  return std::clamp(x, 0.0, 1.0);
}

// Left limit of w at v. Differs from w(v) only at jump knots.
double eval_left(const std::vector<WageKnot>& k, double v) {
  if (v <= k.front().v) return k.front().w;
  std::size_t j = 0;
  while (k[j].v < v) ++j;
  if (k[j].v == v) return k[j].w;  // first knot at v carries the left limit
  const WageKnot& a = k[j - 1];
  const WageKnot& b = k[j];
  return a.w + (b.w - a.w) * (v - a.v) / (b.v - a.v);
}

}  // namespace

WageFunction::WageFunction(std::vector<WageKnot> knots) : knots_(std::move(knots)) {
  if (knots_.size() < 2) {
    throw std::invalid_argument("wage schedule needs at least two knots");
  }
  for (WageKnot& k : knots_) {
    k.v = snap_unit(k.v, "wage knot productivity");
    k.w = snap_unit(k.w, "wage knot value");
  }
  if (knots_.front().v != 0.0 || knots_.back().v != 1.0) {
    throw std::invalid_argument("wage schedule must span [0, 1]");
  }
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (knots_[i].v < knots_[i - 1].v) {
      throw std::invalid_argument("wage knots must have non-decreasing productivity");
    }
    if (knots_[i].w < knots_[i - 1].w - kSnap) {
      throw std::invalid_argument("wage schedule must be non-decreasing");
    }
    knots_[i].w = std::max(knots_[i].w, knots_[i - 1].w);
  }
  // Collapse each run of knots sharing a v-coordinate to its left limit and,
  // when they differ, the jump value.
  std::vector<WageKnot> cleaned;
  std::size_t i = 0;
  while (i < knots_.size()) {
    std::size_t j = i;
    while (j + 1 < knots_.size() && knots_[j + 1].v == knots_[i].v) ++j;
    cleaned.push_back(knots_[i]);
    if (j > i && knots_[j].w != knots_[i].w) cleaned.push_back(knots_[j]);
    i = j + 1;
  }
  knots_ = std::move(cleaned);
}

double WageFunction::operator()(double v) const {
  v = snap_unit(v, "wage argument");
  const auto it = std::upper_bound(
      knots_.begin(), knots_.end(), v,
      [](double x, const WageKnot& k) { return x < k.v; });
  const std::size_t prev = static_cast<std::size_t>(it - knots_.begin()) - 1;
  const WageKnot& a = knots_[prev];
  if (a.v == v || it == knots_.end()) return a.w;
  const WageKnot& b = *it;
  return a.w + (b.w - a.w) * (v - a.v) / (b.v - a.v);
}

WageFunction wage_identity() { return WageFunction({{0.0, 0.0}, {1.0, 1.0}}); }

WageFunction wage_zero() { return WageFunction({{0.0, 0.0}, {1.0, 0.0}}); }

WageFunction wage_linear(double slope) {
  if (slope < 0.0 || slope > 1.0) {
    throw std::invalid_argument("wage slope must lie in [0, 1]");
  }
  return WageFunction({{0.0, 0.0}, {1.0, slope}});
}

WageFunction wage_cap(double delta) {
  delta = snap_unit(delta, "wage cap");
  if (delta == 0.0) return wage_zero();
  if (delta == 1.0) return wage_identity();
  return WageFunction({{0.0, 0.0}, {delta, delta}, {1.0, delta}});
}

WageFunction wage_threshold(double delta_prime) {
  delta_prime = snap_unit(delta_prime, "wage threshold");
  if (delta_prime == 0.0) return wage_identity();
  if (delta_prime == 1.0) {
    return WageFunction({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}});
  }
  return WageFunction(
      {{0.0, 0.0}, {delta_prime, 0.0}, {delta_prime, delta_prime}, {1.0, 1.0}});
}

double generalized_inverse(const WageFunction& w, double eps) {
  eps = std::clamp(eps, 0.0, 1.0);
  const auto& k = w.knots();
  if (k.back().w <= eps) return k.back().v;
  for (std::size_t i = k.size() - 1; i > 0; --i) {
    const WageKnot& a = k[i - 1];
    const WageKnot& b = k[i];
    if (b.w <= eps) return b.v;
    if (a.w <= eps) {
      if (b.v == a.v || b.w == a.w) return a.v;
      return a.v + (eps - a.w) * (b.v - a.v) / (b.w - a.w);
    }
  }
  return 0.0;
}

IRReport individual_rationality(const WageFunction& w) {
  IRReport r;
  r.violation = -std::numeric_limits<double>::infinity();
  for (const WageKnot& k : w.knots()) {
    const double gap = k.w - k.v;
    if (gap > r.violation) {
      r.violation = gap;
      r.witness_v = k.v;
    }
  }
  r.ok = r.violation <= econ_tol();
  return r;
}

WageFunction flatten_above(const WageFunction& w, double vbar) {
  vbar = snap_unit(vbar, "flattening point");
  const double c = w(vbar);
  const double left = eval_left(w.knots(), vbar);
  std::vector<WageKnot> out;
  for (const WageKnot& k : w.knots()) {
    if (k.v < vbar) out.push_back(k);
  }
  out.push_back({vbar, left});
  if (c != left) out.push_back({vbar, c});
  if (vbar < 1.0) out.push_back({1.0, c});
  if (out.front().v > 0.0) out.insert(out.begin(), {0.0, out.front().w});
  return WageFunction(std::move(out));
}

WageFunction splice_identity_above(const WageFunction& w, double x) {
  x = snap_unit(x, "splice point");
  std::vector<WageKnot> out;
  for (const WageKnot& k : w.knots()) {
    if (k.v < x) out.push_back(k);
  }
  const double left = out.empty() ? x : eval_left(w.knots(), x);
  if (left < x) out.push_back({x, left});
  out.push_back({x, x});
  if (x < 1.0) out.push_back({1.0, 1.0});
  if (out.front().v > 0.0) out.insert(out.begin(), {0.0, out.front().w});
  return WageFunction(std::move(out));
}

}  // namespace epsw
