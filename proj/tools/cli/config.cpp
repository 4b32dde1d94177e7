#include "config.hpp"

#include <fstream>
#include <set>

#include "stockloan/error.hpp"

namespace stockloan::cli {

using nlohmann::json;

Product parse_product(const std::string& name) {
  if (name == "nonrecourse") return Product::nonrecourse;
  if (name == "margincall") return Product::margincall;
  throw ValidationError("unknown product '" + name + "' (expected nonrecourse or margincall)");
}

std::string to_string(Product product) {
  return product == Product::nonrecourse ? "nonrecourse" : "margincall";
}

RebateRule parse_rebate_rule(const std::string& name) {
  if (name == "graded") return RebateRule::graded;
  if (name == "gauss_laguerre") return RebateRule::gauss_laguerre;
  throw ValidationError("unknown rebate rule '" + name + "' (expected graded or gauss_laguerre)");
}

std::string to_string(RebateRule rule) {
  return rule == RebateRule::graded ? "graded" : "gauss_laguerre";
}

void RunConfig::validate() const {
  stockloan::validate(market, spec);
  grid.validate();
  if (tree && tree->steps < 1) {
    throw ValidationError("tree steps must be positive");
  }
  for (double d : deltas) {
    if (!(d >= 0.0 && d < 1.0)) {
      throw ValidationError("margin fractions must lie in [0, 1)");
    }
  }
  for (double e : principals) {
    if (!(e > 0.0)) {
      throw ValidationError("principals must be positive");
    }
  }
  for (double t : taus) {
    if (!(t >= 0.0 && t <= spec.maturity)) {
      throw ValidationError("taus must lie in [0, T]");
    }
  }
  for (double t : maturities) {
    if (!(t > 0.0)) {
      throw ValidationError("maturities must be positive");
    }
  }
  for (double s : spots) {
    if (!(s > 0.0)) {
      throw ValidationError("spots must be positive");
    }
  }
  if (!(tol > 0.0)) {
    throw ValidationError("tolerance must be positive");
  }
  if (precision < 1 || precision > 17) {
    throw ValidationError("precision must lie in [1, 17]");
  }
}

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) {
    throw ValidationError(where + " must be an object");
  }
  for (const auto& [key, _] : j.items()) {
    if (!allowed.contains(key)) {
      throw ValidationError("unknown key '" + key + "' in " + where);
    }
  }
}

template <class T>
void read(const json& j, const char* key, T& into) {
  if (j.contains(key)) {
    into = j.at(key).get<T>();
  }
}

}  // namespace

RunConfig config_from_json(const json& j) {
  RunConfig c;
  try {
    check_keys(j,
               {"market", "loan", "grid", "tree", "product", "spots", "taus", "deltas",
                "principals", "maturities", "S0", "tol", "precision", "out"},
               "config");
    if (j.contains("market")) {
      const json& m = j.at("market");
      check_keys(m, {"r", "delta", "sigma"}, "market");
      read(m, "r", c.market.risk_free);
      read(m, "delta", c.market.dividend);
      read(m, "sigma", c.market.volatility);
    }
    if (j.contains("loan")) {
      const json& l = j.at("loan");
      check_keys(l, {"E", "eta", "T", "Delta"}, "loan");
      read(l, "E", c.spec.principal);
      read(l, "eta", c.spec.loan_rate);
      read(l, "T", c.spec.maturity);
      read(l, "Delta", c.spec.margin_fraction);
    }
    if (j.contains("grid")) {
      const json& g = j.at("grid");
      check_keys(g,
                 {"n", "m", "rebate_rule", "newton_tol", "newton_max_iter", "startup_substeps"},
                 "grid");
      read(g, "n", c.grid.time_steps);
      read(g, "m", c.grid.quadrature_order);
      read(g, "newton_tol", c.grid.newton_tol);
      read(g, "newton_max_iter", c.grid.newton_max_iter);
      read(g, "startup_substeps", c.grid.startup_substeps);
      if (g.contains("rebate_rule")) {
        c.grid.rebate_rule = parse_rebate_rule(g.at("rebate_rule").get<std::string>());
      }
    }
    if (j.contains("tree")) {
      const json& t = j.at("tree");
      check_keys(t, {"N"}, "tree");
      TreeSpec tree;
      read(t, "N", tree.steps);
      c.tree = tree;
    }
    if (j.contains("product")) {
      c.product = parse_product(j.at("product").get<std::string>());
    }
    read(j, "spots", c.spots);
    read(j, "taus", c.taus);
    read(j, "deltas", c.deltas);
    read(j, "principals", c.principals);
    read(j, "maturities", c.maturities);
    if (j.contains("S0")) {
      c.spot0 = j.at("S0").get<double>();
    }
    read(j, "tol", c.tol);
    read(j, "precision", c.precision);
    read(j, "out", c.out);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad config value: ") + e.what());
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open config file '" + path + "'");
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

json to_json(const RunConfig& c) {
  json j;
  j["market"] = {{"r", c.market.risk_free}, {"delta", c.market.dividend},
                 {"sigma", c.market.volatility}};
  j["loan"] = {{"E", c.spec.principal},
               {"eta", c.spec.loan_rate},
               {"T", c.spec.maturity},
               {"Delta", c.spec.margin_fraction}};
  j["grid"] = {{"n", c.grid.time_steps},
               {"m", c.grid.quadrature_order},
               {"rebate_rule", to_string(c.grid.rebate_rule)},
               {"newton_tol", c.grid.newton_tol},
               {"newton_max_iter", c.grid.newton_max_iter},
               {"startup_substeps", c.grid.startup_substeps}};
  if (c.tree) {
    j["tree"] = {{"N", c.tree->steps}};
  }
  j["product"] = to_string(c.product);
  j["spots"] = c.spots;
  j["taus"] = c.taus;
  j["deltas"] = c.deltas;
  j["principals"] = c.principals;
  j["maturities"] = c.maturities;
  if (c.spot0) {
    j["S0"] = *c.spot0;
  }
  j["tol"] = c.tol;
  j["precision"] = c.precision;
  j["out"] = c.out;
  return j;
}

}  // namespace stockloan::cli
