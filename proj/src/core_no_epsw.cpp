#include "epsw/core_no_epsw.hpp"

#include <algorithm>
#include <cmath>

namespace epsw {

namespace {

double share_at(const FirmGroupPlan& plan, double v) {
  for (const HiringInterval& iv : plan.intervals) {
    if (v >= iv.lo && v < iv.hi) return iv.share;
  }
  return 0.0;
}

// Sup of |w(v) - v| over the open interval (lo, hi); jump points are measure
// zero and are judged by their one-sided limits.
double max_wage_deviation(const WageFunction& w, double lo, double hi) {
  double worst = 0.0;
  const auto& k = w.knots();
  for (std::size_t i = 0; i + 1 < k.size(); ++i) {
    if (k[i + 1].v <= k[i].v) continue;
    const double a = std::max(lo, k[i].v);
    const double b = std::min(hi, k[i + 1].v);
    if (b <= a) continue;
    const double slope = (k[i + 1].w - k[i].w) / (k[i + 1].v - k[i].v);
    const auto line = [&](double v) { return k[i].w + slope * (v - k[i].v); };
    worst = std::max({worst, std::abs(line(a) - a), std::abs(line(b) - b)});
  }
  return worst;
}

}  // namespace

Outcome make_bertrand(const Market& market, double v_star) {
  (void)market;
  return split_outcome(v_star, wage_identity());
}

Verdict verify_no_epsw_core(const Market& market, const Outcome& outcome) {
  check_feasible(market, outcome);
  Verdict verdict;
  const double tol = econ_tol();

  for (Group g : {Group::A, Group::B}) {
    const char* gname = g == Group::A ? "A" : "B";
    std::vector<double> edges{0.0, 1.0};
    for (int firm = 1; firm <= 2; ++firm) {
      for (const HiringInterval& iv : outcome.plan(firm, g).intervals) {
        edges.push_back(std::clamp(iv.lo, 0.0, 1.0));
        edges.push_back(std::clamp(iv.hi, 0.0, 1.0));
      }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      if (edges[i + 1] - edges[i] < 1e-12) continue;
      const double mid = 0.5 * (edges[i] + edges[i + 1]);
      const double total =
          share_at(outcome.plan(1, g), mid) + share_at(outcome.plan(2, g), mid);
      if (std::abs(total - 1.0) > tol) {
        verdict.ok = false;
        verdict.violations.push_back({std::string("employment, group ") + gname,
                                      edges[i], edges[i + 1],
                                      std::abs(total - 1.0)});
      }
    }

    for (int firm = 1; firm <= 2; ++firm) {
      const FirmGroupPlan& plan = outcome.plan(firm, g);
      for (const HiringInterval& iv : plan.intervals) {
        if (iv.share <= tol || iv.hi - iv.lo < 1e-12) continue;
        const double dev = max_wage_deviation(plan.wage, iv.lo, iv.hi);
        if (dev > tol) {
          verdict.ok = false;
          verdict.violations.push_back(
              {std::string("wage, firm ") + (firm == 1 ? "1" : "2") + ", group " +
                   gname,
               iv.lo, iv.hi, dev});
        }
      }
    }
  }
  return verdict;
}

}  // namespace epsw
