#include "epsw/scenario.hpp"

#include <fstream>
#include <sstream>

#include "epsw/emit.hpp"
#include "json.hpp"

namespace epsw {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

struct Diags {
  std::string where;
  std::vector<std::string> list;
  void add(const std::string& key, const std::string& msg) {
    list.push_back(where + ": " + key + ": " + msg);
  }
};

// uniform | power:K | step:b1,b2|l1,l2
ProductivityDist dist_from_token(const std::string& token) {
  if (token == "uniform") return make_uniform();
  const auto colon = token.find(':');
  const std::string kind = token.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : token.substr(colon + 1);
  if (kind == "power") return make_power(std::stoi(arg));
  if (kind == "step") {
    const auto bar = arg.find('|');
    if (bar == std::string::npos)
      throw std::invalid_argument("step needs breaks|levels");
    auto nums = [](const std::string& part) {
      std::vector<double> out;
      std::stringstream ss(part);
      std::string item;
      while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stod(item));
      return out;
    };
    return make_step(nums(arg.substr(0, bar)), nums(arg.substr(bar + 1)));
  }
  throw std::invalid_argument("unknown distribution kind '" + kind + "'");
}

std::string dist_token_of(const json& spec) {
  if (spec.is_string()) return spec.get<std::string>();
  if (spec.is_object()) {
    const std::string kind = spec.value("kind", "");
    if (kind == "uniform") return "uniform";
    if (kind == "power") return "power:" + std::to_string(spec.value("k", 0));
    if (kind == "step") {
      std::string token = "step:";
      bool first = true;
      for (double b : spec.value("breaks", std::vector<double>{})) {
        if (!first) token += ",";
        token += fmt12(b);
        first = false;
      }
      token += "|";
      first = true;
      for (double l : spec.value("levels", std::vector<double>{})) {
        if (!first) token += ",";
        token += fmt12(l);
        first = false;
      }
      return token;
    }
    throw std::invalid_argument("unknown distribution kind '" + kind + "'");
  }
  throw std::invalid_argument("distribution must be a token or an object");
}

ProductivityDist parse_dist(const json& spec, const std::string& key, Diags& diags,
                            std::string& token_out) {
  try {
    token_out = dist_token_of(spec);
    return dist_from_token(token_out);
  } catch (const std::exception& e) {
    diags.add(key, e.what());
    return make_uniform();
  }
}

WageFunction wage_from_json(const json& spec) {
  if (spec.is_string()) return parse_wage_token(spec.get<std::string>());
  if (spec.is_object() && spec.value("kind", "") == "knots") {
    std::vector<WageKnot> knots;
    for (const auto& pair : spec.at("knots"))
      knots.push_back({pair.at(0).get<double>(), pair.at(1).get<double>()});
    return WageFunction(std::move(knots));
  }
  throw std::invalid_argument("wage must be a token or a knots object");
}

}  // namespace

WageFunction parse_wage_token(const std::string& token) {
  const auto colon = token.find(':');
  const std::string kind = token.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : token.substr(colon + 1);
  if (kind == "identity") return wage_identity();
  if (kind == "zero") return wage_zero();
  if (kind == "linear") return wage_linear(std::stod(arg));
  if (kind == "cap") return wage_cap(std::stod(arg));
  if (kind == "threshold") return wage_threshold(std::stod(arg));
  if (kind == "const") {
    const double c = std::stod(arg);
    return WageFunction({{0.0, c}, {1.0, c}});
  }
  throw std::invalid_argument("unknown wage token '" + token + "'");
}

bool is_preset(const std::string& name) {
  return name == "fig2" || name == "uniform2" || name == "remark7" ||
         name == "bias-uniform";
}

Scenario preset_scenario(const std::string& name) {
  Scenario s;
  s.name = name;
  if (name == "fig2") {
    s.market = make_market(4.0, make_uniform(), make_power(5));
    s.dist_a_token = "uniform";
    s.dist_b_token = "power:5";
    s.regime = "group";
    s.w2 = wage_linear(0.5);
    s.w2_token = "linear:0.5";
  } else if (name == "uniform2") {
    s.market = make_market(2.0, make_uniform(), make_uniform());
    s.regime = "group";
  } else if (name == "remark7") {
    // The anything-goes step market at eps = 0.05 (beta lands on 6).
    s.market = make_market(6.0, make_step({0.5}, {0.1, 1.9}),
                           make_step({0.5}, {1.9, 0.1}));
    s.dist_a_token = "step:0.5|0.1,1.9";
    s.dist_b_token = "step:0.5|1.9,0.1";
    s.regime = "nongroup";
    s.eps = 0.05;
  } else if (name == "bias-uniform") {
    s.market = make_market(2.0, make_uniform(), make_uniform());
    s.regime = "bias";
    s.bias = 0.5;
  } else {
    throw ScenarioError("unknown preset '" + name + "'",
                        {name + ": not a preset and not a readable file"});
  }
  return s;
}

Scenario parse_scenario(const std::string& src) {
  if (is_preset(src)) return preset_scenario(src);

  std::ifstream in(src);
  if (!in)
    throw ScenarioError("cannot open scenario '" + src + "'",
                        {src + ": not a preset and not a readable file"});
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ScenarioError("malformed scenario '" + src + "'",
                        {src + ": " + e.what()});
  }

  Diags diags{src, {}};
  Scenario s;
  s.name = src;

  if (j.contains("market")) {
    const json& m = j["market"];
    double beta = 1.0;
    if (!m.contains("beta") || !m["beta"].is_number()) {
      diags.add("market.beta", "required number");
    } else {
      beta = m["beta"].get<double>();
      if (!(beta >= 1.0))
        diags.add("market.beta",
                  "beta must be at least 1 (got " + fmt12(beta) + ")");
    }
    ProductivityDist da =
        m.contains("dist_A")
            ? parse_dist(m["dist_A"], "market.dist_A", diags, s.dist_a_token)
            : make_uniform();
    ProductivityDist db =
        m.contains("dist_B")
            ? parse_dist(m["dist_B"], "market.dist_B", diags, s.dist_b_token)
            : make_uniform();
    if (diags.list.empty()) s.market = make_market(beta, da, db);
  } else if (!j.contains("mmarket")) {
    diags.add("market", "required (or provide mmarket)");
  }

  if (j.contains("mmarket")) {
    try {
      const json& mm = j["mmarket"];
      std::vector<MultiGroup> groups;
      for (const auto& g : mm.at("groups")) {
        std::string token;
        groups.push_back(
            {g.at("size").get<double>(), parse_dist(g.at("dist"), "mmarket.groups",
                                                    diags, token)});
      }
      s.mmarket = make_multi_market(mm.at("n").get<int>(), std::move(groups));
    } catch (const std::exception& e) {
      diags.add("mmarket", e.what());
    }
  }

  if (j.contains("regime")) {
    s.regime = j["regime"].get<std::string>();
    if (s.regime != "none" && s.regime != "group" && s.regime != "nongroup" &&
        s.regime != "hetero" && s.regime != "bias")
      diags.add("regime", "unknown regime '" + s.regime + "'");
  }

  if (j.contains("bias")) {
    const double lam = j["bias"].get<double>();
    if (!(lam > 0.0 && lam < 1.0))
      diags.add("bias", "lambda outside (0,1)");
    else
      s.bias = lam;
  }

  if (j.contains("w2")) {
    try {
      s.w2 = wage_from_json(j["w2"]);
      s.w2_token = j["w2"].is_string() ? j["w2"].get<std::string>() : "knots";
    } catch (const std::exception& e) {
      diags.add("w2", e.what());
    }
  }

  if (j.contains("eps")) {
    s.eps = j["eps"].get<double>();
    if (!(s.eps > 0.0 && s.eps < 1.0)) diags.add("eps", "eps outside (0,1)");
  }
  if (j.contains("grid")) {
    s.grid = j["grid"].get<int>();
    if (s.grid < 33) diags.add("grid", "too coarse (minimum 33)");
  }
  if (j.contains("bins")) {
    s.bins = j["bins"].get<int>();
    if (s.bins < 8 || s.bins > 256) diags.add("bins", "bins outside [8, 256]");
  }

  if (!diags.list.empty()) {
    std::string what = "invalid scenario '" + src + "'";
    for (const auto& d : diags.list) what += "\n  " + d;
    throw ScenarioError(what, diags.list);
  }
  return s;
}

std::string canonical_scenario(const Scenario& s) {
  std::string out = "beta=" + fmt12(s.market.beta) + ";distA=" + s.dist_a_token +
                    ";distB=" + s.dist_b_token + ";regime=" + s.regime +
                    ";bias=" + (s.bias ? fmt12(*s.bias) : "none") +
                    ";w2=" + s.w2_token + ";eps=" + fmt12(s.eps) +
                    ";grid=" + std::to_string(s.grid) +
                    ";bins=" + std::to_string(s.bins);
  if (s.mmarket) {
    out += ";mmarket=" + std::to_string(s.mmarket->n_firms);
    for (const auto& g : s.mmarket->groups) out += "," + fmt12(g.size);
  }
  return out;
}

Outcome parse_outcome_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open outcome '" + path + "'");
  json j;
  in >> j;
  Outcome o;
  const json plans = j.value("plans", json::object());
  for (int f = 1; f <= 2; ++f)
    for (int g = 0; g < 2; ++g) {
      const std::string key = std::to_string(f) + (g == 0 ? "A" : "B");
      if (!plans.contains(key)) continue;
      const json& p = plans[key];
      FirmGroupPlan plan;
      for (const auto& iv : p.value("intervals", json::array()))
        plan.intervals.push_back({iv.at(0).get<double>(), iv.at(1).get<double>(),
                                  iv.at(2).get<double>()});
      if (p.contains("wage")) plan.wage = wage_from_json(p["wage"]);
      o.plan(f, static_cast<Group>(g)) = std::move(plan);
    }
  return o;
}

std::string outcome_json(const Outcome& outcome) {
  ordered_json plans = ordered_json::object();
  for (int f = 1; f <= 2; ++f)
    for (int g = 0; g < 2; ++g) {
      const FirmGroupPlan& plan = outcome.plan(f, static_cast<Group>(g));
      if (plan.intervals.empty()) continue;
      ordered_json ivs = ordered_json::array();
      for (const auto& iv : plan.intervals)
        ivs.push_back({j12(iv.lo), j12(iv.hi), j12(iv.share)});
      ordered_json knots = ordered_json::array();
      for (const auto& k : plan.wage.knots())
        knots.push_back({j12(k.v), j12(k.w)});
      const std::string key = std::to_string(f) + (g == 0 ? "A" : "B");
      plans[key] = {{"intervals", std::move(ivs)},
                    {"wage", {{"kind", "knots"}, {"knots", std::move(knots)}}}};
    }
  ordered_json root{{"plans", std::move(plans)}};
  return root.dump(2) + "\n";
}

}  // namespace epsw
