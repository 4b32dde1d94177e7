// Command-line front end: solve, price and validate stock loans.
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "stockloan/error.hpp"

namespace {

using stockloan::cli::RunConfig;

struct Overrides {
  std::string config_path;
  std::optional<std::string> product, rebate_rule;
  std::optional<double> r, dividend, sigma;
  std::optional<double> principal, eta, maturity, delta_frac;
  std::optional<int> steps, order, tree_steps, precision;
  std::optional<double> tol, spot0;
  std::vector<double> spots, taus, deltas, principals, maturities;
  std::optional<std::string> out;
};

template <class T>
void apply(const std::optional<T>& flag, T& into) {
  if (flag) into = *flag;
}

RunConfig resolve(const Overrides& o) {
  RunConfig c = o.config_path.empty() ? RunConfig{} : stockloan::cli::load_config(o.config_path);
  if (o.product) c.product = stockloan::cli::parse_product(*o.product);
  apply(o.r, c.market.risk_free);
  apply(o.dividend, c.market.dividend);
  apply(o.sigma, c.market.volatility);
  apply(o.principal, c.spec.principal);
  apply(o.eta, c.spec.loan_rate);
  apply(o.maturity, c.spec.maturity);
  apply(o.delta_frac, c.spec.margin_fraction);
  apply(o.steps, c.grid.time_steps);
  apply(o.order, c.grid.quadrature_order);
  if (o.rebate_rule) c.grid.rebate_rule = stockloan::cli::parse_rebate_rule(*o.rebate_rule);
  if (o.tree_steps) c.tree = stockloan::TreeSpec{*o.tree_steps};
  apply(o.precision, c.precision);
  apply(o.tol, c.tol);
  if (o.spot0) c.spot0 = o.spot0;
  if (!o.spots.empty()) c.spots = o.spots;
  if (!o.taus.empty()) c.taus = o.taus;
  if (!o.deltas.empty()) c.deltas = o.deltas;
  if (!o.principals.empty()) c.principals = o.principals;
  if (!o.maturities.empty()) c.maturities = o.maturities;
  apply(o.out, c.out);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = stockloan::cli;
  CLI::App app{"Stock loan pricing with an optional single margin call"};
  app.require_subcommand(1);
  Overrides o;

  app.add_option("--config", o.config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--product", o.product, "nonrecourse or margincall");
  app.add_option("--r", o.r, "risk-free rate");
  app.add_option("--dividend", o.dividend, "dividend yield");
  app.add_option("--sigma", o.sigma, "volatility");
  app.add_option("--principal,-E", o.principal, "loan principal E");
  app.add_option("--eta", o.eta, "loan rate");
  app.add_option("--maturity,-T", o.maturity, "maturity in years");
  app.add_option("--delta-frac", o.delta_frac, "margin fraction Delta");
  app.add_option("--steps", o.steps, "time steps n of the boundary grid");
  app.add_option("--rebate-rule", o.rebate_rule, "rebate integral rule: graded or gauss_laguerre");
  app.add_option("--order", o.order, "Gauss-Laguerre order (rebate rule gauss_laguerre)");
  app.add_option("--tree-steps", o.tree_steps, "binomial steps N");
  app.add_option("--precision", o.precision, "significant digits");
  app.add_option("--tol", o.tol, "validate tolerance");
  app.add_option("--S0", o.spot0, "spot at inception (fee)");
  app.add_option("--spots", o.spots, "spot list")->delimiter(',');
  app.add_option("--taus", o.taus, "time-to-maturity list")->delimiter(',');
  app.add_option("--deltas", o.deltas, "margin fraction sweep")->delimiter(',');
  app.add_option("--principals", o.principals, "principal sweep")->delimiter(',');
  app.add_option("--maturities", o.maturities, "maturity sweep (validate)")->delimiter(',');
  app.add_option("--out,-o", o.out, "output file (default stdout)");

  for (const char* name : {"boundary", "price", "fee", "rebate", "validate", "tables"}) {
    app.add_subcommand(name)->fallthrough();
  }
  app.get_subcommand("boundary")->description("exit boundary rows tau,S_f,a_tau,residual");
  app.get_subcommand("price")->description("values S,tau,value,state");
  app.get_subcommand("fee")->description("service fee rows E,Delta,S0,V0,fee");
  app.get_subcommand("rebate")->description("margin-call rebate rows tau,R");
  app.get_subcommand("validate")->description("integral equation against the binomial tree");
  app.get_subcommand("tables")->description("reference tables in one run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kOk : cli::kUsageError;
  }

  try {
    const RunConfig config = resolve(o);
    const std::string command = app.get_subcommands().front()->get_name();
    if (config.out.empty()) {
      return cli::run_command(command, config, std::cout);
    }
    std::ofstream file(config.out);
    if (!file) {
      std::cerr << "error: cannot write '" << config.out << "'\n";
      return cli::kUsageError;
    }
    return cli::run_command(command, config, file);
  } catch (const stockloan::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kUsageError;
  } catch (const stockloan::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kUsageError;
  } catch (const stockloan::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return cli::kSolverFailure;
  }
}
