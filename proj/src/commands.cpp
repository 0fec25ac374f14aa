#include "epsw/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "epsw/blocking_oracle.hpp"
#include "epsw/core_no_epsw.hpp"
#include "epsw/emit.hpp"
#include "epsw/extensions.hpp"
#include "epsw/group_epsw.hpp"
#include "epsw/market.hpp"
#include "epsw/nongroup_epsw.hpp"
#include "epsw/scenario.hpp"
#include "epsw/wages.hpp"

namespace epsw {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json manifest_of(const std::string& command, const Scenario& s) {
  return {{"command", command},
          {"scenario_hash", fnv1a_hex(canonical_scenario(s))},
          {"tool_version", kToolVersion},
          {"econ_tol", j12(econ_tol())}};
}

void print_json(const ordered_json& j) {
  std::fputs((j.dump(2) + "\n").c_str(), stdout);
}

std::string csv_head(const ordered_json& manifest, const std::string& header) {
  return "# " + manifest.dump() + "\n" + header + "\n";
}

ordered_json core_fields(const UniformWageCore& c) {
  return {{"w1", j12(c.w1)},
          {"w2", j12(c.w2)},
          {"w1_star", j12(c.w1_star)},
          {"profit", j12(c.profit)},
          {"unemployed_measure", j12(c.unemployed_measure)},
          {"gap", j12(c.gap)}};
}

// Group wage schedule named on the command line; "completed" builds the
// frontier schedule against the scenario's second-firm wage.
WageFunction resolve_w1(const std::string& token, const Scenario& s) {
  if (token != "completed") return parse_wage_token(token);
  const ExistsResult ex = core_exists_with_w2(s.market, s.w2);
  if (!ex.exists)
    throw std::runtime_error("no segregated core exists with this w2 (pi1_hat " +
                             fmt12(ex.curve.pi1_hat) + " < pi2 " +
                             fmt12(ex.curve.pi2) + ")");
  return complete_w1(s.market, s.w2, ex.curve).w1;
}

MultiMarket resolve_mmarket(const Scenario& s, int n) {
  if (s.mmarket) {
    if (n == s.mmarket->n_firms) return *s.mmarket;
    return make_multi_market(n, s.mmarket->groups);
  }
  const double beta = s.market.beta;
  return make_multi_market(n, {{beta / (1.0 + beta), s.market.dist_A},
                               {1.0 / (1.0 + beta), s.market.dist_B}});
}

std::optional<double> resolve_bias(const std::optional<double>& flag,
                                   const Scenario& s) {
  if (flag) return flag;
  return s.bias;
}

double require_lambda(const std::optional<double>& flag, const Scenario& s) {
  const std::optional<double> lam = resolve_bias(flag, s);
  if (!lam)
    throw std::invalid_argument(
        "lambda required: pass --lambda or use a scenario with a bias field");
  return *lam;
}

// Both firms hire both groups: flat w1 on [w1, w2), flat w2 on [w2, 1].
Outcome uniform_pair(double w1, double w2) {
  Outcome o;
  for (int g = 0; g < 2; ++g) {
    const Group gg = static_cast<Group>(g);
    if (w2 > w1)
      o.plan(1, gg) = {{{w1, w2, 1.0}}, WageFunction({{0.0, w1}, {1.0, w1}})};
    o.plan(2, gg) = {{{w2, 1.0, 1.0}}, WageFunction({{0.0, w2}, {1.0, w2}})};
  }
  return o;
}

int cmd_bertrand(const Scenario& s, const std::optional<double>& split,
                 const std::string& out) {
  const Outcome o = split ? make_bertrand(s.market, *split)
                          : segregated_outcome(wage_identity(), wage_identity());
  const Verdict v = verify_no_epsw_core(s.market, o);
  const AccountingReport rep = accounting(s.market, o);
  ordered_json doc{{"manifest", manifest_of("bertrand", s)}};
  if (split) doc["split"] = j12(*split);
  doc["core_ok"] = v.ok;
  doc["report"] = {{"profit_1", j12(rep.profit_1)},
                   {"profit_2", j12(rep.profit_2)},
                   {"aw_A", j12(rep.aw_A)},
                   {"aw_B", j12(rep.aw_B)},
                   {"gap", j12(rep.gap)},
                   {"employment_A", j12(rep.employment_A)},
                   {"employment_B", j12(rep.employment_B)}};
  if (!out.empty()) write_file(out, outcome_json(o));
  print_json(doc);
  return v.ok ? 0 : 2;
}

int cmd_phi_curve(const Scenario& s, int grid, const std::string& out) {
  const PhiCurve curve = build_phi_curve(s.market, s.w2, grid);
  ordered_json doc{{"manifest", manifest_of("phi-curve", s)},
                   {"grid", grid},
                   {"E_cap", j12(curve.E_cap)},
                   {"pi2", j12(curve.pi2)},
                   {"pi1_hat", j12(curve.pi1_hat)}};
  doc["eps_star"] = curve.eps_star ? ordered_json(j12(*curve.eps_star))
                                   : ordered_json(nullptr);
  const bool exists = curve.pi1_hat >= curve.pi2 - econ_tol();
  doc["exists"] = exists;
  if (exists) {
    const CompletedW1 done = complete_w1(s.market, s.w2, curve);
    doc["completion"] = {{"x_star", j12(done.x_star)},
                         {"profit", j12(done.profit)},
                         {"residual", j12(done.profit - curve.pi2)}};
  }
  if (!out.empty()) {
    std::string csv =
        csv_head(doc["manifest"], "epsilon,phi,w1hat_inv,ndc_slack");
    for (std::size_t i = 0; i < curve.eps_grid.size(); ++i) {
      const double eps = curve.eps_grid[i];
      csv += fmt12(eps) + "," + fmt12(curve.phi[i]) + "," +
             fmt12(curve.w1hat_inv[i]) + "," +
             fmt12(ndc_slack(s.market, curve.w1_hat, s.w2, eps)) + "\n";
    }
    write_file(out, csv);
  }
  print_json(doc);
  return 0;
}

int cmd_group_exists(const Scenario& s) {
  const ExistsResult ex = core_exists_with_w2(s.market, s.w2);
  print_json({{"manifest", manifest_of("group-exists", s)},
              {"exists", ex.exists},
              {"pi1_hat", j12(ex.curve.pi1_hat)},
              {"pi2", j12(ex.curve.pi2)},
              {"E_cap", j12(ex.curve.E_cap)}});
  return ex.exists ? 0 : 2;
}

int cmd_group_verify(const Scenario& s, const std::string& w1_token,
                     const std::string& w2_token, const std::string& out) {
  const WageFunction w1 = resolve_w1(w1_token, s);
  const WageFunction w2 =
      w2_token.empty() ? s.w2 : parse_wage_token(w2_token);
  const GroupCoreReport rep = verify_group_core(s.market, w1, w2);
  std::string failed;
  if (!rep.ir_ok)
    failed = "individual rationality";
  else if (std::abs(rep.equal_profit_residual) > econ_tol())
    failed = "equal profit";
  else if (!rep.is_core)
    failed = "no desegregation";
  print_json({{"manifest", manifest_of("group-verify", s)},
              {"w1", w1_token},
              {"w2", w2_token.empty() ? s.w2_token : w2_token},
              {"is_core", rep.is_core},
              {"ir_ok", rep.ir_ok},
              {"equal_profit_residual", j12(rep.equal_profit_residual)},
              {"profit_1", j12(rep.profit_1)},
              {"profit_2", j12(rep.profit_2)},
              {"gap", j12(rep.gap)},
              {"ndc_worst",
               {{"eps", j12(rep.ndc_worst.eps)}, {"slack", j12(rep.ndc_worst.slack)}}},
              {"failed_condition", failed}});
  if (!out.empty()) write_file(out, outcome_json(segregated_outcome(w1, w2)));
  return rep.is_core ? 0 : 2;
}

int cmd_delta_family(const Scenario& s, const std::optional<double>& delta,
                     int points, double lo, double hi, const std::string& out) {
  std::vector<DeltaFamilyMember> rows;
  if (delta) {
    rows.push_back(delta_family(s.market, *delta));
  } else {
    for (int i = 0; i < points; ++i) {
      const double d =
          points == 1 ? lo : lo + (hi - lo) * i / (points - 1.0);
      rows.push_back(delta_family(s.market, d));
    }
  }
  ordered_json jrows = ordered_json::array();
  for (const auto& r : rows)
    jrows.push_back({{"delta", j12(r.delta)},
                     {"delta_prime", j12(r.delta_prime)},
                     {"profit", j12(r.profit)},
                     {"gap", j12(r.gap_value)},
                     {"is_core", r.is_core}});
  ordered_json doc{{"manifest", manifest_of("delta-family", s)},
                   {"rows", std::move(jrows)}};
  if (!out.empty()) {
    std::string csv =
        csv_head(doc["manifest"], "delta,delta_prime,profit,gap,is_core");
    for (const auto& r : rows)
      csv += fmt12(r.delta) + "," + fmt12(r.delta_prime) + "," +
             fmt12(r.profit) + "," + fmt12(r.gap_value) + "," +
             (r.is_core ? "true" : "false") + "\n";
    write_file(out, csv);
  }
  print_json(doc);
  return 0;
}

int cmd_beta_star(const Scenario& s, const std::string& w2_token,
                  double beta_hi) {
  const WageFunction w2 =
      w2_token.empty() ? s.w2 : parse_wage_token(w2_token);
  const double bs = beta_star(s.market.dist_A, s.market.dist_B, w2, beta_hi);
  ordered_json doc{{"manifest", manifest_of("beta-star", s)},
                   {"beta_hi", j12(beta_hi)},
                   {"found", std::isfinite(bs)}};
  doc["beta_star"] = std::isfinite(bs) ? ordered_json(j12(bs)) : ordered_json(nullptr);
  print_json(doc);
  return 0;
}

int cmd_nongroup(const Scenario& s, double w1) {
  try {
    const UniformWageCore core = nongroup_core(s.market, w1);
    ordered_json doc{{"manifest", manifest_of("nongroup", s)}};
    doc.update(core_fields(core));
    print_json(doc);
    return 0;
  } catch (const NotACoreError& e) {
    print_json({{"manifest", manifest_of("nongroup", s)},
                {"w1", j12(w1)},
                {"error", e.what()},
                {"entry_profit", j12(e.entry_profit)},
                {"core_profit", j12(e.core_profit)}});
    return 2;
  }
}

int cmd_nongroup_sweep(const Scenario& s, int points, const std::string& out) {
  const double top = w1_star(s.market);
  std::vector<UniformWageCore> rows;
  for (int i = 0; i < points; ++i)
    rows.push_back(nongroup_core(s.market, top * i / (points - 1.0)));
  ordered_json doc{{"manifest", manifest_of("nongroup-sweep", s)},
                   {"points", points},
                   {"w1_star", j12(top)}};
  if (!out.empty()) {
    std::string csv = csv_head(doc["manifest"], "w1,w2,profit,unemployment,gap");
    for (const auto& r : rows)
      csv += fmt12(r.w1) + "," + fmt12(r.w2) + "," + fmt12(r.profit) + "," +
             fmt12(r.unemployed_measure) + "," + fmt12(r.gap) + "\n";
    write_file(out, csv);
  }
  print_json(doc);
  return 0;
}

int cmd_multifirm(const Scenario& s, int n, std::optional<double> w1) {
  const MultiMarket mm = resolve_mmarket(s, n);
  try {
    if (!w1) w1 = multifirm_core(mm, 0.0).w1_star;
    const MultiFirmCore core = multifirm_core(mm, *w1);
    ordered_json wages = ordered_json::array();
    for (double w : core.wages) wages.push_back(j12(w));
    print_json({{"manifest", manifest_of("multifirm", s)},
                {"n", n},
                {"w1", j12(*w1)},
                {"wages", std::move(wages)},
                {"p", j12(core.p)},
                {"w1_star", j12(core.w1_star)}});
    return 0;
  } catch (const NotACoreError& e) {
    print_json({{"manifest", manifest_of("multifirm", s)},
                {"n", n},
                {"w1", w1 ? ordered_json(j12(*w1)) : ordered_json(nullptr)},
                {"error", e.what()},
                {"entry_profit", j12(e.entry_profit)},
                {"core_profit", j12(e.core_profit)}});
    return 2;
  }
}

int cmd_remark7(const Scenario& s, double eps) {
  const AnythingGoesReport rep = anything_goes_scenarios(eps);
  print_json({{"manifest", manifest_of("remark7", s)},
              {"eps", j12(rep.eps)},
              {"beta", j12(rep.beta)},
              {"benchmark_gap", j12(rep.benchmark_gap)},
              {"raised", core_fields(rep.raised)},
              {"lowered", core_fields(rep.lowered)}});
  return 0;
}

int cmd_bias_interval(const Scenario& s, const std::optional<double>& lambda) {
  const double lam = require_lambda(lambda, s);
  const BiasGapInterval iv = bias_gap_interval(s.market, make_bias(lam));
  print_json({{"manifest", manifest_of("bias-interval", s)},
              {"lambda", j12(lam)},
              {"lo", j12(iv.lo)},
              {"hi", j12(iv.hi)}});
  return 0;
}

int cmd_bias_family(const Scenario& s, const std::optional<double>& lambda,
                    double vbar1, const std::string& out) {
  const double lam = require_lambda(lambda, s);
  const BiasFamilyMember mem = bias_group_family(s.market, make_bias(lam), vbar1);
  print_json({{"manifest", manifest_of("bias-family", s)},
              {"lambda", j12(lam)},
              {"vbar1", j12(mem.vbar1)},
              {"vbar2", j12(mem.vbar2)},
              {"gap", j12(mem.gap)}});
  if (!out.empty()) write_file(out, outcome_json(mem.outcome));
  return 0;
}

int cmd_hetero_verify(const Scenario& s, const std::string& outcome_path) {
  const Outcome o = parse_outcome_file(outcome_path);
  const Verdict v = hetero_verify(s.market, o);
  ordered_json violations = ordered_json::array();
  for (const auto& viol : v.violations)
    violations.push_back({{"condition", viol.condition},
                          {"lo", j12(viol.lo)},
                          {"hi", j12(viol.hi)},
                          {"magnitude", j12(viol.magnitude)}});
  print_json({{"manifest", manifest_of("hetero-verify", s)},
              {"ok", v.ok},
              {"violations", std::move(violations)}});
  return v.ok ? 0 : 2;
}

ordered_json certificate_json(const BlockCertificate& c) {
  return {{"firm", c.firm},
          {"kind", to_string(c.kind)},
          {"wage", j12(c.wage)},
          {"profit_gain", j12(c.profit_gain)}};
}

int cmd_oracle_outcome(const Scenario& s, const std::string& outcome_path,
                       Regime regime, int bins,
                       const std::optional<double>& bias) {
  const Outcome o = parse_outcome_file(outcome_path);
  const OracleVerdict v = oracle_is_core(s.market, o, regime, bins, bias);
  ordered_json doc{{"manifest", manifest_of("oracle", s)},
                   {"regime", to_string(regime)},
                   {"bins", bins},
                   {"core_at_resolution", v.core_at_resolution}};
  doc["certificate"] = v.certificate ? certificate_json(*v.certificate)
                                     : ordered_json(nullptr);
  doc["continuum_gain"] = j12(v.continuum_gain);
  print_json(doc);
  return v.core_at_resolution ? 0 : 2;
}

// Randomized agreement run between the analytic verifiers and the oracle.
// Four instance families in rotation; disagreements are split into the
// expected near-boundary band (analytic slack at most 10/bins) and genuine
// out-of-band failures.
int cmd_oracle_suite(const Scenario& s, int instances, int bins) {
  const Market uni2 = make_market(2.0, make_uniform(), make_uniform());
  const double band = 10.0 / bins;
  std::mt19937 rng(20250825);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  int agreed = 0, in_band = 0, out_band = 0;
  ordered_json reported = ordered_json::array();
  auto tally = [&](bool agree, double slack, const std::string& kind,
                   double param) {
    if (agree) {
      ++agreed;
      return;
    }
    const bool inside = std::abs(slack) <= band;
    (inside ? in_band : out_band) += 1;
    reported.push_back({{"kind", kind},
                        {"param", j12(param)},
                        {"analytic_slack", j12(slack)},
                        {"in_band", inside}});
  };

  for (int i = 0; i < instances; ++i) {
    switch (i % 4) {
      case 0: {  // valid equal-profit member: oracle must stay silent
        const double d = 0.60 + 0.37 * u01(rng);
        const DeltaFamilyMember mem = delta_family(uni2, d);
        const OracleVerdict v =
            oracle_is_core(uni2, mem.outcome, Regime::group_epsw, bins);
        tally(v.core_at_resolution, 0.0, "member", d);
        break;
      }
      case 1: {  // cap below the bar: a desegregating raid exists
        const double d = 0.30 + 0.27 * u01(rng);
        const DeltaFamilyMember mem = delta_family(uni2, d);
        const GroupCoreReport rep = verify_group_core(
            uni2, wage_cap(mem.delta), wage_threshold(mem.delta_prime));
        const OracleVerdict v =
            oracle_is_core(uni2, mem.outcome, Regime::group_epsw, bins);
        tally(!v.core_at_resolution, std::min(0.0, rep.ndc_worst.slack),
              "violator", d);
        break;
      }
      case 2: {  // uniform-wage pair on a random pooled market
        const double beta = 1.0 + 3.0 * u01(rng);
        const Market m = make_market(beta, make_uniform(), make_uniform());
        const double w1 = 0.55 * u01(rng);
        bool valid = true;
        double slack = 0.0;
        try {
          nongroup_core(m, w1);
        } catch (const NotACoreError& e) {
          valid = false;
          slack = e.core_profit - e.entry_profit;
        }
        const Outcome o = uniform_pair(w1, w2_of_w1(m, w1));
        const OracleVerdict v =
            oracle_is_core(m, o, Regime::nongroup_epsw, bins);
        tally(valid == v.core_at_resolution, slack, "uniform_pair", w1);
        break;
      }
      default: {  // unequal profits: the cheap book gets taken over
        const double d = 0.60 + 0.35 * u01(rng);
        const double scale = 0.55 + 0.35 * u01(rng);
        const DeltaFamilyMember mem = delta_family(uni2, d);
        const Outcome o = segregated_outcome(
            wage_cap(mem.delta), wage_threshold(mem.delta_prime * scale));
        const double residual = profit(uni2, o, 1) - profit(uni2, o, 2);
        const OracleVerdict v =
            oracle_is_core(uni2, o, Regime::group_epsw, bins);
        tally(!v.core_at_resolution, residual, "unequal_profit", d);
        break;
      }
    }
  }

  print_json({{"manifest", manifest_of("oracle", s)},
              {"suite", instances},
              {"bins", bins},
              {"agreed", agreed},
              {"in_band_reported", in_band},
              {"out_of_band_disagreements", out_band},
              {"reported", std::move(reported)}});
  return out_band == 0 ? 0 : 2;
}

}  // namespace

int dispatch(int argc, const char* const* argv) {
  CLI::App app{"Core outcomes of a two-firm labor market under equal-pay laws"};
  app.require_subcommand(1);

  std::string scenario_src = "uniform2";
  std::string out, outcome_path, w1_token = "completed", w2_token,
              regime_token;
  std::optional<double> split, delta, w1_opt, lambda, bias_flag;
  double w1 = 0.0, beta_hi = 8.0, vbar1 = 0.95, lo = 0.60, hi = 0.95,
         eps = -1.0;
  int grid = 0, points = 20, n = 2, bins = 0, suite = 0;

  auto add_scenario = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", scenario_src,
                    "Preset (fig2, uniform2, remark7, bias-uniform) or JSON file");
  };

  CLI::App* c_bertrand = app.add_subcommand(
      "bertrand", "Competitive outcome and its no-law core verdict");
  add_scenario(c_bertrand);
  c_bertrand->add_option("--split", split, "Split both groups at this point");
  c_bertrand->add_option("--out", out, "Write the outcome as JSON");

  CLI::App* c_phi = app.add_subcommand(
      "phi-curve", "Poaching frontier, cheapest deterring schedule, profits");
  add_scenario(c_phi);
  c_phi->add_option("--grid", grid, "Frontier grid size (odd)");
  c_phi->add_option("--out", out, "Write the sampled curve as CSV");

  CLI::App* c_exists =
      app.add_subcommand("group-exists", "Does a segregated core support w2?");
  add_scenario(c_exists);

  CLI::App* c_verify = app.add_subcommand(
      "group-verify", "Check a segregated pair against the core conditions");
  add_scenario(c_verify);
  c_verify->add_option("--w1", w1_token, "Wage token or 'completed'");
  c_verify->add_option("--w2", w2_token, "Wage token (default: scenario w2)");
  c_verify->add_option("--out", out, "Write the pair as an outcome JSON");

  CLI::App* c_delta = app.add_subcommand(
      "delta-family", "Equal-profit cap/threshold pairs indexed by the cap");
  add_scenario(c_delta);
  c_delta->add_option("--delta", delta, "Single cap level");
  c_delta->add_option("--points", points, "Sweep size");
  c_delta->add_option("--lo", lo, "Sweep start");
  c_delta->add_option("--hi", hi, "Sweep end");
  c_delta->add_option("--out", out, "Write the sweep as CSV");

  CLI::App* c_bstar = app.add_subcommand(
      "beta-star", "Smallest group-size ratio supporting a core with w2");
  add_scenario(c_bstar);
  c_bstar->add_option("--w2", w2_token, "Wage token (default: scenario w2)");
  c_bstar->add_option("--beta-hi", beta_hi, "Search ceiling");

  CLI::App* c_ng = app.add_subcommand(
      "nongroup", "Uniform-wage core at a given low wage");
  add_scenario(c_ng);
  c_ng->add_option("--w1", w1, "Low wage")->required();

  CLI::App* c_ngs = app.add_subcommand(
      "nongroup-sweep", "Uniform-wage cores from w1 = 0 up to w1*");
  add_scenario(c_ngs);
  c_ngs->add_option("--points", points, "Sweep size");
  c_ngs->add_option("--out", out, "Write the sweep as CSV");

  CLI::App* c_multi = app.add_subcommand(
      "multifirm", "Wage ladder for n firms (anchored when --w1 is given)");
  add_scenario(c_multi);
  c_multi->add_option("--n", n, "Number of firms");
  c_multi->add_option("--w1", w1_opt, "Anchor the lowest wage");

  CLI::App* c_r7 = app.add_subcommand(
      "remark7", "Step-market pair where the law widens or narrows the gap");
  add_scenario(c_r7);
  c_r7->add_option("--eps", eps, "Step parameter in (0, 1/10)");

  CLI::App* c_bi = app.add_subcommand(
      "bias-interval", "Attainable no-law wage gaps under hiring bias");
  add_scenario(c_bi);
  c_bi->add_option("--lambda", lambda, "Bias against group B");

  CLI::App* c_bf = app.add_subcommand(
      "bias-family", "Group-law core widening the gap under bias");
  add_scenario(c_bf);
  c_bf->add_option("--lambda", lambda, "Bias against group B");
  c_bf->add_option("--vbar1", vbar1, "Flattening point of the A schedule");
  c_bf->add_option("--out", out, "Write the outcome as JSON");

  CLI::App* c_hv = app.add_subcommand(
      "hetero-verify", "Check an outcome against the heterogeneous-firm core");
  add_scenario(c_hv);
  c_hv->add_option("--outcome", outcome_path, "Outcome JSON file")->required();

  CLI::App* c_oracle = app.add_subcommand(
      "oracle", "Discretized blocking search against a candidate outcome");
  add_scenario(c_oracle);
  c_oracle->add_option("--outcome", outcome_path, "Outcome JSON file");
  c_oracle->add_option("--regime", regime_token, "none | group | nongroup");
  c_oracle->add_option("--bins", bins, "Grid cells in [8, 256]");
  c_oracle->add_option("--bias", bias_flag, "Bias against group B for firm 1");
  c_oracle->add_option("--suite", suite,
                       "Run the randomized agreement suite of this size");

  const auto t0 = std::chrono::steady_clock::now();
  int code = 0;
  try {
    app.parse(argc, argv);
    const Scenario s = parse_scenario(scenario_src);
    if (*c_bertrand) code = cmd_bertrand(s, split, out);
    else if (*c_phi) code = cmd_phi_curve(s, grid > 0 ? grid : s.grid, out);
    else if (*c_exists) code = cmd_group_exists(s);
    else if (*c_verify) code = cmd_group_verify(s, w1_token, w2_token, out);
    else if (*c_delta) code = cmd_delta_family(s, delta, points, lo, hi, out);
    else if (*c_bstar) code = cmd_beta_star(s, w2_token, beta_hi);
    else if (*c_ng) code = cmd_nongroup(s, w1);
    else if (*c_ngs) code = cmd_nongroup_sweep(s, points, out);
    else if (*c_multi) code = cmd_multifirm(s, n, w1_opt);
    else if (*c_r7) code = cmd_remark7(s, eps > 0.0 ? eps : s.eps);
    else if (*c_bi) code = cmd_bias_interval(s, lambda);
    else if (*c_bf) code = cmd_bias_family(s, lambda, vbar1, out);
    else if (*c_hv) code = cmd_hetero_verify(s, outcome_path);
    else if (*c_oracle) {
      const Regime regime =
          regime_token.empty()
              ? (s.regime == "group" || s.regime == "nongroup"
                     ? parse_regime(s.regime)
                     : Regime::none)
              : parse_regime(regime_token);
      const int b = bins > 0 ? bins : s.bins;
      if (suite > 0) {
        code = cmd_oracle_suite(s, suite, b);
      } else {
        if (outcome_path.empty())
          throw std::invalid_argument("oracle needs --outcome or --suite");
        code = cmd_oracle_outcome(s, outcome_path, regime, b,
                                  resolve_bias(bias_flag, s));
      }
    }
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const ScenarioError& e) {
    for (const auto& d : e.diagnostics) std::fprintf(stderr, "error: %s\n", d.c_str());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  const auto t1 = std::chrono::steady_clock::now();
  const double ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();
  std::fprintf(stderr, "# wall_ms %.3f\n", ms);
  return code;
}

}  // namespace epsw
