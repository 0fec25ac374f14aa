#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "epsw/market.hpp"

namespace epsw {

enum class Regime { none, group_epsw, nongroup_epsw };

enum class BlockKind { fire, poach_all, desegregate_at_eps, uniform_wage_at_w };

std::string to_string(Regime r);
std::string to_string(BlockKind k);
Regime parse_regime(const std::string& name);

// One firm-group hiring book aggregated to grid cells. All entries are
// group-weighted measures or exact integrals over the hired portion of the
// cell, so any bundle of whole cells prices an actual deviation exactly.
struct DiscreteCellBook {
  std::vector<double> mass;      // hired measure
  std::vector<double> vmass;     // integral of v over the hired measure
  std::vector<double> value;     // integral of v - w(v): the book's surplus
  std::vector<double> wage_top;  // sup of the schedule on the cell
};

struct DiscreteMarket {
  int bins = 0;
  std::array<std::vector<double>, 2> avail;        // [group][cell] measure
  std::array<std::vector<double>, 2> avail_vmass;  // [group][cell] integral of v
  std::array<std::array<DiscreteCellBook, 2>, 2> book;  // [firm-1][group]
};

// A deviation that strictly improves one firm's payoff: dropping loss-making
// cells, taking over the rival's whole book at a small raise, or hiring every
// willing cell above a flat wage (the regime's equal-pay rules allow a flat
// wage everywhere).
struct BlockCertificate {
  int firm = 0;
  BlockKind kind = BlockKind::fire;
  double wage = 0.0;  // flat deviation wage; unused for fire and poach_all
  double profit_gain = 0.0;
};

DiscreteMarket discretize(const Market& market, const Outcome& outcome, int bins);

// Searches the closed family of cell-level deviations. A rival's cell can be
// poached only by beating its top wage by one wage-grid step (1e-4), own
// cells are kept at no raise; every reported gain is the exact payoff of an
// admissible deviation, so certificates are never spurious. Finding nothing
// is only a statement at this resolution.
std::optional<BlockCertificate> find_block(const DiscreteMarket& dm, Regime regime,
                                           std::optional<double> bias = {});

struct OracleVerdict {
  bool core_at_resolution = true;
  std::optional<BlockCertificate> certificate;
  // The certificate's deviation re-priced by continuum integrals; stays within
  // a one-cell error of the discrete gain.
  double continuum_gain = 0.0;
};

OracleVerdict oracle_is_core(const Market& market, const Outcome& outcome,
                             Regime regime, int bins,
                             std::optional<double> bias = {});

}  // namespace epsw
