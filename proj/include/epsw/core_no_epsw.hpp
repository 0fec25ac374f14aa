#pragma once

#include <string>
#include <vector>

#include "epsw/market.hpp"

namespace epsw {

struct Violation {
  std::string condition;
  double lo = 0.0;
  double hi = 0.0;
  double magnitude = 0.0;
};

struct Verdict {
  bool ok = true;
  std::vector<Violation> violations;
};

// Competitive benchmark outcome: both groups split at v_star, everyone works
// at a wage equal to their productivity, both firms earn zero.
Outcome make_bertrand(const Market& market, double v_star);

// Without a wage law the core is exactly: full employment and wage equal to
// productivity almost everywhere. Reports every interval where either fails.
Verdict verify_no_epsw_core(const Market& market, const Outcome& outcome);

}  // namespace epsw
