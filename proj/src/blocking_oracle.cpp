#include "epsw/blocking_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "epsw/wages.hpp"

namespace epsw {
namespace {

// One wage-grid step: a poacher must beat the incumbent wage by at least this.
constexpr double kEta = 1e-4;
constexpr double kEdgeTol = 1e-12;

double group_weight(const Market& market, int g) { return g == 0 ? market.beta : 1.0; }

const ProductivityDist& group_dist(const Market& market, int g) {
  return g == 0 ? market.dist_A : market.dist_B;
}

// Extra cost per unit of hiring: firm 1 discounts group-B output by the bias.
double bias_offset(int firm_ix, int g, const std::optional<double>& bias) {
  return (bias && firm_ix == 0 && g == 1) ? *bias : 0.0;
}

double own_payoff(const DiscreteMarket& dm, int f, const std::optional<double>& bias) {
  double total = 0.0;
  for (int g = 0; g < 2; ++g) {
    const DiscreteCellBook& b = dm.book[f][g];
    const double off = bias_offset(f, g, bias);
    for (int i = 0; i < dm.bins; ++i) total += b.value[i] - off * b.mass[i];
  }
  return total;
}

}  // namespace

std::string to_string(Regime r) {
  switch (r) {
    case Regime::none: return "none";
    case Regime::group_epsw: return "group";
    case Regime::nongroup_epsw: return "nongroup";
  }
  return "?";
}

std::string to_string(BlockKind k) {
  switch (k) {
    case BlockKind::fire: return "fire";
    case BlockKind::poach_all: return "poach_all";
    case BlockKind::desegregate_at_eps: return "desegregate_at_eps";
    case BlockKind::uniform_wage_at_w: return "uniform_wage_at_w";
  }
  return "?";
}

Regime parse_regime(const std::string& name) {
  if (name == "none") return Regime::none;
  if (name == "group") return Regime::group_epsw;
  if (name == "nongroup") return Regime::nongroup_epsw;
  throw std::invalid_argument("parse_regime: unknown regime '" + name +
                              "' (expected none, group, or nongroup)");
}

DiscreteMarket discretize(const Market& market, const Outcome& outcome, int bins) {
  if (bins < 8 || bins > 256)
    throw std::invalid_argument("discretize: bins must lie in [8, 256]");

  DiscreteMarket dm;
  dm.bins = bins;
  const double width = 1.0 / bins;
  const Polynomial v_poly{0.0, 1.0};

  for (int g = 0; g < 2; ++g) {
    const ProductivityDist& dist = group_dist(market, g);
    const double weight = group_weight(market, g);
    dm.avail[g].resize(bins);
    dm.avail_vmass[g].resize(bins);
    for (int i = 0; i < bins; ++i) {
      const double lo = i * width;
      const double hi = (i + 1) * width;
      dm.avail[g][i] = weight * dist.mass(lo, hi);
      dm.avail_vmass[g][i] = weight * dist.integrate_against(v_poly, lo, hi);
    }
    for (int f = 0; f < 2; ++f) {
      DiscreteCellBook& b = dm.book[f][g];
      b.mass.assign(bins, 0.0);
      b.vmass.assign(bins, 0.0);
      b.value.assign(bins, 0.0);
      b.wage_top.assign(bins, 0.0);
      const FirmGroupPlan& plan = outcome.plans[f][g];
      for (int i = 0; i < bins; ++i) {
        const double lo = i * width;
        const double hi = (i + 1) * width;
        // Sup of the schedule over [lo, hi): the right edge belongs to the
        // next cell, so sample just inside.
        b.wage_top[i] = std::max(plan.wage(lo), plan.wage(hi - 1e-9));
        for (const HiringInterval& iv : plan.intervals) {
          const double a = std::max(lo, iv.lo);
          const double c = std::min(hi, iv.hi);
          if (c <= a) continue;
          const double s = iv.share * weight;
          b.mass[i] += s * dist.mass(a, c);
          b.vmass[i] += s * dist.integrate_against(v_poly, a, c);
          b.value[i] += s * surplus_integral(dist, plan.wage, a, c);
        }
      }
    }
    for (int i = 0; i < bins; ++i) {
      const double hired = dm.book[0][g].mass[i] + dm.book[1][g].mass[i];
      if (hired > dm.avail[g][i] + 1e-9 * std::max(1.0, weight))
        throw std::invalid_argument("discretize: hired mass exceeds availability");
    }
  }
  return dm;
}

std::optional<BlockCertificate> find_block(const DiscreteMarket& dm, Regime regime,
                                           std::optional<double> bias) {
  const double width = 1.0 / dm.bins;
  std::optional<BlockCertificate> best;
  auto offer = [&](int firm, BlockKind kind, double wage, double gain) {
    if (gain <= econ_tol()) return;
    if (!best || gain > best->profit_gain)
      best = BlockCertificate{firm, kind, wage, gain};
  };

  // Flat-wage candidates: cell edges plus minimal undercuts of every booked
  // wage level; the latter catch raids priced just above an incumbent cap.
  std::vector<double> cands;
  cands.reserve(5 * dm.bins + 1);
  for (int j = 0; j <= dm.bins; ++j) cands.push_back(j * width);
  for (int bf = 0; bf < 2; ++bf)
    for (int g = 0; g < 2; ++g) {
      const DiscreteCellBook& b = dm.book[bf][g];
      for (int i = 0; i < dm.bins; ++i) {
        if (b.mass[i] <= 0.0) continue;
        const double u = b.wage_top[i] + kEta;
        if (u < 1.0) cands.push_back(u);
      }
    }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

  for (int f = 0; f < 2; ++f) {
    const int r = 1 - f;
    const double own = own_payoff(dm, f, bias);

    // Drop every cell the firm loses money on; always admissible.
    double fire_gain = 0.0;
    for (int g = 0; g < 2; ++g) {
      const DiscreteCellBook& b = dm.book[f][g];
      const double off = bias_offset(f, g, bias);
      for (int i = 0; i < dm.bins; ++i)
        fire_gain += std::max(0.0, off * b.mass[i] - b.value[i]);
    }
    offer(f + 1, BlockKind::fire, 0.0, fire_gain);

    // Take over the rival's whole book at a one-step raise. Under no law the
    // firm keeps its own book too; under the group law it adopts the rival's
    // schedule outright so the combined book stays equal-pay. A flat-wage
    // rival book is already covered by the threshold search, so skip this
    // under the non-group law.
    if (regime != Regime::nongroup_epsw) {
      double booked = 0.0;
      for (int g = 0; g < 2; ++g) {
        const DiscreteCellBook& b = dm.book[r][g];
        const double off = bias_offset(f, g, bias);
        for (int i = 0; i < dm.bins; ++i)
          booked += b.value[i] - (off + kEta) * b.mass[i];
      }
      const double gain = regime == Regime::none ? booked : booked - own;
      offer(f + 1, BlockKind::poach_all, 0.0, gain);
    }

    // Flat wage w: hire every willing cell worth keeping. Rival cells accept
    // only if w beats their top wage by a step, own cells at no raise, the
    // unemployed at any wage. Cell sums are exact integrals, so each gain
    // prices a real deviation and a positive one is a genuine block.
    const BlockKind kind = regime == Regime::group_epsw
                               ? BlockKind::desegregate_at_eps
                               : BlockKind::uniform_wage_at_w;
    for (const double w : cands) {
      double take = 0.0;
      for (int g = 0; g < 2; ++g) {
        const double off = bias_offset(f, g, bias);
        const DiscreteCellBook& mine = dm.book[f][g];
        const DiscreteCellBook& theirs = dm.book[r][g];
        for (int i = 0; i < dm.bins; ++i) {
          const double unem_mass =
              std::max(0.0, dm.avail[g][i] - mine.mass[i] - theirs.mass[i]);
          if (unem_mass > 0.0) {
            const double unem_vmass =
                dm.avail_vmass[g][i] - mine.vmass[i] - theirs.vmass[i];
            const double c = unem_vmass - (w + off) * unem_mass;
            if (c > 0.0) take += c;
          }
          if (mine.mass[i] > 0.0 && mine.wage_top[i] <= w + kEdgeTol) {
            const double c = mine.vmass[i] - (w + off) * mine.mass[i];
            if (c > 0.0) take += c;
          }
          if (theirs.mass[i] > 0.0 && theirs.wage_top[i] + kEta <= w + kEdgeTol) {
            const double c = theirs.vmass[i] - (w + off) * theirs.mass[i];
            if (c > 0.0) take += c;
          }
        }
      }
      offer(f + 1, kind, w, take - own);
    }
  }
  return best;
}

namespace {

// Exact integral of max(0, w(v) - v + off) f over [lo, hi]: the amount the
// owner saves by firing the loss-making stretch.
double overpay_integral(const ProductivityDist& dist, const WageFunction& wage,
                        double off, double lo, double hi) {
  const auto& ks = wage.knots();
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < ks.size(); ++s) {
    double a = std::max(lo, ks[s].v);
    double b = std::min(hi, ks[s + 1].v);
    if (b <= a) continue;
    const double seg = ks[s + 1].v - ks[s].v;
    const double slope = (ks[s + 1].w - ks[s].w) / seg;
    // net(v) = w(v) - v + off is linear on the segment.
    const double b1 = slope - 1.0;
    const double b0 = ks[s].w - slope * ks[s].v + off;
    if (std::abs(b1) < 1e-14) {
      if (b0 <= 0.0) continue;
    } else {
      const double root = -b0 / b1;
      if (b1 > 0.0) a = std::max(a, root);  // positive above the root
      else b = std::min(b, root);           // positive below the root
      if (b <= a) continue;
    }
    total += dist.integrate_against(Polynomial{b0, b1}, a, b);
  }
  return total;
}

double continuum_own(const Market& market, const Outcome& outcome, int f,
                     const std::optional<double>& bias) {
  double total = 0.0;
  for (int g = 0; g < 2; ++g) {
    const ProductivityDist& dist = group_dist(market, g);
    const double s0 = group_weight(market, g);
    const double off = bias_offset(f, g, bias);
    const FirmGroupPlan& plan = outcome.plans[f][g];
    for (const HiringInterval& iv : plan.intervals)
      total += iv.share * s0 *
               (surplus_integral(dist, plan.wage, iv.lo, iv.hi) -
                off * dist.mass(iv.lo, iv.hi));
  }
  return total;
}

// Re-prices a certificate's deviation with continuum integrals instead of
// cell sums. Eligibility uses the exact wage sets, so this can only find more
// workers than the cell-level search did.
double continuum_gain(const Market& market, const Outcome& outcome,
                      const BlockCertificate& cert, Regime regime,
                      const std::optional<double>& bias) {
  const int f = cert.firm - 1;
  const int r = 1 - f;
  switch (cert.kind) {
    case BlockKind::fire: {
      double total = 0.0;
      for (int g = 0; g < 2; ++g) {
        const ProductivityDist& dist = group_dist(market, g);
        const double s0 = group_weight(market, g);
        const double off = bias_offset(f, g, bias);
        const FirmGroupPlan& plan = outcome.plans[f][g];
        for (const HiringInterval& iv : plan.intervals)
          total += iv.share * s0 *
                   overpay_integral(dist, plan.wage, off, iv.lo, iv.hi);
      }
      return total;
    }
    case BlockKind::poach_all: {
      double booked = 0.0;
      for (int g = 0; g < 2; ++g) {
        const ProductivityDist& dist = group_dist(market, g);
        const double s0 = group_weight(market, g);
        const double off = bias_offset(f, g, bias);
        const FirmGroupPlan& plan = outcome.plans[r][g];
        for (const HiringInterval& iv : plan.intervals)
          booked += iv.share * s0 *
                    (surplus_integral(dist, plan.wage, iv.lo, iv.hi) -
                     (off + kEta) * dist.mass(iv.lo, iv.hi));
      }
      if (regime == Regime::none) return booked;
      return booked - continuum_own(market, outcome, f, bias);
    }
    case BlockKind::desegregate_at_eps:
    case BlockKind::uniform_wage_at_w: {
      const double w = cert.wage;
      double total = 0.0;
      for (int g = 0; g < 2; ++g) {
        const ProductivityDist& dist = group_dist(market, g);
        const double s0 = group_weight(market, g);
        const double off = bias_offset(f, g, bias);
        const double floor = std::min(1.0, w + off);
        const Polynomial margin{-(w + off), 1.0};
        // Everyone with positive margin, minus the hired, plus the hired who
        // would accept the flat offer.
        double part = dist.integrate_against(margin, floor, 1.0);
        for (int fp = 0; fp < 2; ++fp) {
          const FirmGroupPlan& plan = outcome.plans[fp][g];
          const double bar = fp == f ? w : w - kEta;
          const double bound = generalized_inverse(plan.wage, bar);
          for (const HiringInterval& iv : plan.intervals) {
            const double a = std::max(iv.lo, floor);
            if (iv.hi > a) part -= iv.share * dist.integrate_against(margin, a, iv.hi);
            const double c = std::min(iv.hi, bound);
            if (c > a) part += iv.share * dist.integrate_against(margin, a, c);
          }
        }
        total += s0 * part;
      }
      return total - continuum_own(market, outcome, f, bias);
    }
  }
  return 0.0;
}

}  // namespace

OracleVerdict oracle_is_core(const Market& market, const Outcome& outcome,
                             Regime regime, int bins, std::optional<double> bias) {
  const DiscreteMarket dm = discretize(market, outcome, bins);
  OracleVerdict verdict;
  verdict.certificate = find_block(dm, regime, bias);
  verdict.core_at_resolution = !verdict.certificate.has_value();
  if (verdict.certificate)
    verdict.continuum_gain =
        continuum_gain(market, outcome, *verdict.certificate, regime, bias);
  return verdict;
}

}  // namespace epsw
