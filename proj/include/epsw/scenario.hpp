#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "epsw/market.hpp"

namespace epsw {

// Parse failure carrying one diagnostic per violation, each prefixed with the
// file (or preset) and the offending key.
struct ScenarioError : std::runtime_error {
  ScenarioError(const std::string& what, std::vector<std::string> diagnostics_)
      : std::runtime_error(what), diagnostics(std::move(diagnostics_)) {}
  std::vector<std::string> diagnostics;
};

struct Scenario {
  std::string name;  // preset name or source path
  Market market = make_market(2.0, make_uniform(), make_uniform());
  std::string dist_a_token = "uniform";
  std::string dist_b_token = "uniform";
  std::optional<MultiMarket> mmarket;
  std::string regime = "group";
  std::optional<double> bias;
  WageFunction w2 = wage_zero();
  std::string w2_token = "zero";
  double eps = 0.05;  // step parameter for the anything-goes construction
  int grid = 2049;
  int bins = 64;
};

bool is_preset(const std::string& name);
Scenario preset_scenario(const std::string& name);

// Accepts a preset name or a path to a JSON scenario file.
Scenario parse_scenario(const std::string& path_or_preset);

// identity | zero | linear:S | cap:D | threshold:D | const:C
WageFunction parse_wage_token(const std::string& token);

// Stable description of everything that affects results; input to the
// scenario hash. Excludes the name so equal content hashes equally.
std::string canonical_scenario(const Scenario& s);

// Outcome files: {"plans": {"1A": {"intervals": [[lo,hi,share],...],
// "wage": <token or {"kind":"knots","knots":[[v,w],...]}>}, ...}}.
Outcome parse_outcome_file(const std::string& path);
std::string outcome_json(const Outcome& outcome);

}  // namespace epsw
