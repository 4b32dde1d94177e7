#ifndef STOCKLOAN_CLI_CONFIG_HPP
#define STOCKLOAN_CLI_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "stockloan/binomial.hpp"
#include "stockloan/model.hpp"

namespace stockloan::cli {

enum class Product { nonrecourse, margincall };

Product parse_product(const std::string& name);
std::string to_string(Product product);

/// "graded" or "gauss_laguerre".
RebateRule parse_rebate_rule(const std::string& name);
std::string to_string(RebateRule rule);

/// Everything one command needs. Sweeps left empty fall back to the single
/// value in `spec` (or to tau = T / S0 = first spot where noted).
struct RunConfig {
  MarketParams market;
  LoanSpec spec;
  GridSpec grid;
  std::optional<TreeSpec> tree;
  Product product = Product::margincall;

  std::vector<double> spots;       ///< price, validate
  std::vector<double> taus;        ///< price; empty means {T}
  std::vector<double> deltas;      ///< fee sweep; empty means {Delta}
  std::vector<double> principals;  ///< fee / validate sweep; empty means {E}
  std::vector<double> maturities;  ///< validate in boundary mode; empty means {T}
  std::optional<double> spot0;     ///< fee; defaults to the first spot

  double tol = 0.01;  ///< validate: allowed |ie - bt|
  int precision = 6;  ///< significant digits in CSV output
  std::string out;    ///< empty means standard output

  /// Throws ValidationError on any inconsistency.
  void validate() const;
};

/// Reads a config tree. Unknown keys are rejected so typos do not pass
/// silently. Missing keys keep their defaults.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

nlohmann::json to_json(const RunConfig& config);

}  // namespace stockloan::cli

#endif  // STOCKLOAN_CLI_CONFIG_HPP
