#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "stockloan/error.hpp"

namespace sl = stockloan;
namespace cli = stockloan::cli;

namespace {

cli::RunConfig wide_config(cli::Product product, double maturity) {
  cli::RunConfig c;
  c.product = product;
  c.market = {0.06, 0.03, 0.4};
  c.spec = {0.7, 0.1, maturity, product == cli::Product::margincall ? 0.1 : 0.0};
  return c;
}

cli::RunConfig spot_loan_config() {
  cli::RunConfig c;
  c.market = {0.1, 0.05, 0.2};
  c.spec = {80.0, 0.05, 1.0, 0.1};
  return c;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

// Data rows: lines that are neither comments nor the column header.
std::vector<std::vector<std::string>> rows(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  bool header_seen = false;
  for (const auto& l : lines(text)) {
    if (l.empty() || l[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(l);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!l.empty() && l.back() == ',') cells.emplace_back();
    out.push_back(cells);
  }
  return out;
}

std::string run(const std::string& cmd, const cli::RunConfig& c, int* code = nullptr) {
  std::ostringstream out;
  const int rc = cli::run_command(cmd, c, out);
  if (code) *code = rc;
  return out.str();
}

}  // namespace

TEST(Config, ParsesEveryField) {
  const auto j = nlohmann::json::parse(R"({
    "product": "nonrecourse",
    "market": {"r": 0.06, "delta": 0.03, "sigma": 0.4},
    "loan": {"E": 0.7, "eta": 0.1, "T": 5.0, "Delta": 0.2},
    "grid": {"n": 40, "m": 16, "rebate_rule": "gauss_laguerre", "newton_tol": 1e-9, "newton_max_iter": 30, "startup_substeps": 4},
    "tree": {"N": 500},
    "spots": [1.0, 1.1], "taus": [0.0, 2.5], "deltas": [0.1], "principals": [0.6],
    "maturities": [1.0], "S0": 1.05, "tol": 0.2, "precision": 8, "out": "x.csv"
  })");
  const auto c = cli::config_from_json(j);
  EXPECT_EQ(c.product, cli::Product::nonrecourse);
  EXPECT_EQ(c.market.volatility, 0.4);
  EXPECT_EQ(c.spec.maturity, 5.0);
  EXPECT_EQ(c.spec.margin_fraction, 0.2);
  EXPECT_EQ(c.grid.time_steps, 40);
  EXPECT_EQ(c.grid.quadrature_order, 16);
  EXPECT_EQ(c.grid.rebate_rule, sl::RebateRule::gauss_laguerre);
  EXPECT_EQ(c.grid.newton_tol, 1e-9);
  EXPECT_EQ(c.grid.newton_max_iter, 30);
  EXPECT_EQ(c.grid.startup_substeps, 4);
  ASSERT_TRUE(c.tree.has_value());
  EXPECT_EQ(c.tree->steps, 500);
  EXPECT_EQ(c.spots.size(), 2u);
  EXPECT_EQ(c.taus.back(), 2.5);
  EXPECT_EQ(*c.spot0, 1.05);
  EXPECT_EQ(c.tol, 0.2);
  EXPECT_EQ(c.precision, 8);
  EXPECT_EQ(c.out, "x.csv");

  // round trip through the echo format
  const auto again = cli::config_from_json(cli::to_json(c));
  EXPECT_EQ(cli::to_json(again), cli::to_json(c));
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(cli::config_from_json(nlohmann::json::parse(R"({"sigma": 0.2})")),
               sl::ValidationError);
  EXPECT_THROW(cli::config_from_json(nlohmann::json::parse(R"({"loan": {"principal": 1}})")),
               sl::ValidationError);
  EXPECT_THROW(cli::config_from_json(nlohmann::json::parse(R"({"product": "american"})")),
               sl::ValidationError);
  EXPECT_THROW(cli::config_from_json(nlohmann::json::parse(R"({"loan": {"T": "soon"}})")),
               sl::ValidationError);
  EXPECT_THROW(cli::config_from_json(nlohmann::json::parse(R"({"grid": {"rebate_rule": "simpson"}})")),
               sl::ValidationError);
  auto c = wide_config(cli::Product::margincall, 1.0);
  c.taus = {2.0};
  EXPECT_THROW(c.validate(), sl::ValidationError);
  c = wide_config(cli::Product::margincall, 1.0);
  c.deltas = {1.0};
  EXPECT_THROW(c.validate(), sl::ValidationError);
  EXPECT_THROW(cli::load_config("/nonexistent/config.json"), sl::ValidationError);
}

TEST(Config, LoadsFromFile) {
  const std::string path = ::testing::TempDir() + "stockloan_cfg.json";
  {
    std::ofstream f(path);
    f << R"({"loan": {"E": 85.0}, "spots": [100]})";
  }
  const auto c = cli::load_config(path);
  EXPECT_EQ(c.spec.principal, 85.0);
  EXPECT_EQ(c.spots.front(), 100.0);
  std::remove(path.c_str());
}

TEST(Commands, BoundaryRowsAndHeader) {
  auto c = wide_config(cli::Product::nonrecourse, 1.0);
  c.grid.time_steps = 2;
  int code = -1;
  const std::string out = run("boundary", c, &code);
  EXPECT_EQ(code, cli::kOk);
  const auto ls = lines(out);
  ASSERT_GE(ls.size(), 2u);
  EXPECT_EQ(ls[0].rfind("# stockloan boundary {", 0), 0u);
  EXPECT_EQ(nlohmann::json::parse(ls[0].substr(std::string("# stockloan boundary ").size())),
            cli::to_json(c));
  EXPECT_EQ(ls[1], "tau,S_f,a_tau,residual");
  const auto r = rows(out);
  ASSERT_EQ(r.size(), 3u);
  for (const auto& row : r) {
    ASSERT_EQ(row.size(), 4u);
    EXPECT_LE(std::abs(std::stod(row[3])), 1e-8 * 0.7);
  }
}

TEST(Commands, BoundaryReachesReferenceInceptionValues) {
  {
    const auto r = rows(run("boundary", wide_config(cli::Product::nonrecourse, 1.0)));
    EXPECT_NEAR(std::stod(r.back()[1]), 1.168, 0.005);
  }
  {
    const auto r = rows(run("boundary", wide_config(cli::Product::margincall, 5.0)));
    EXPECT_NEAR(std::stod(r.back()[1]), 1.358, 0.01);
  }
}

TEST(Commands, PriceGridAndRowErrors) {
  auto c = spot_loan_config();
  c.spots = {95.0, 100.0, 105.0, 110.0};
  c.taus = {1.0, 0.0};
  c.precision = 15;
  int code = -1;
  const auto r = rows(run("price", c, &code));
  EXPECT_EQ(code, cli::kOk);
  ASSERT_EQ(r.size(), 8u);
  EXPECT_NEAR(std::stod(r[1][2]), 20.062, 0.01);
  EXPECT_EQ(r[2][3], "exit_optimal");
  EXPECT_EQ(std::stod(r[2][2]), 25.0);

  // tau = 0 rows: S - a(0) with a(0) = 80 e^{0.05}
  const double a0 = 80.0 * std::exp(0.05);
  EXPECT_NEAR(std::stod(r[4][2]), std::max(95.0 - a0, 0.0), 1e-9);

  c.spots = {50.0, 100.0};
  c.taus = {1.0};
  const auto mixed = rows(run("price", c, &code));
  EXPECT_EQ(code, cli::kOk);
  EXPECT_EQ(mixed[0][3], "error");
  EXPECT_FALSE(mixed[0][4].empty());
  EXPECT_TRUE(mixed[1][4].empty());

  c.spots = {50.0, 60.0};
  (void)run("price", c, &code);
  EXPECT_EQ(code, cli::kUsageError);
}

TEST(Commands, PriceAtTheDebtAtExpiryIsZero) {
  auto c = wide_config(cli::Product::nonrecourse, 1.0);
  c.spots = {0.7 * std::exp(0.1)};
  c.taus = {0.0};
  const auto r = rows(run("price", c));
  EXPECT_EQ(std::stod(r[0][2]), 0.0);
}

TEST(Commands, FeeSweepOrderings) {
  auto c = wide_config(cli::Product::margincall, 5.0);
  c.spot0 = 1.0;
  c.principals = {0.5, 0.7, 0.9};
  c.deltas = {0.05, 0.1, 0.3};
  const auto r = rows(run("fee", c));
  ASSERT_EQ(r.size(), 9u);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 1; j < 3; ++j) {
      EXPECT_LE(std::stod(r[3 * i + j][4]), std::stod(r[3 * i + j - 1][4]) + 1e-6);
    }
  }
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t i = 1; i < 3; ++i) {
      EXPECT_GE(std::stod(r[3 * i + j][4]), std::stod(r[3 * (i - 1) + j][4]) - 1e-6);
    }
  }

  auto s = spot_loan_config();
  s.spot0 = 100.0;
  const auto one = rows(run("fee", s));
  ASSERT_EQ(one.size(), 1u);
  EXPECT_NEAR(std::stod(one[0][4]), 0.062, 0.01);
}

TEST(Commands, RebateStartsAtZero) {
  const auto r = rows(run("rebate", wide_config(cli::Product::margincall, 5.0)));
  ASSERT_EQ(r.size(), 51u);
  EXPECT_LE(std::abs(std::stod(r[0][1])), 1e-10);
  for (const auto& row : r) EXPECT_GE(std::stod(row[1]), -1e-12);
}

TEST(Commands, ValidateNeedsTreeAndReportsFailures) {
  auto c = spot_loan_config();
  c.spots = {100.0};
  EXPECT_THROW(run("validate", c), sl::ValidationError);

  c.tree = sl::TreeSpec{500};
  c.tol = 0.2;
  int code = -1;
  const std::string out = run("validate", c, &code);
  EXPECT_EQ(code, cli::kOk);
  EXPECT_NE(out.find("# summary: 1 passed, 0 failed"), std::string::npos);

  c.tol = 1e-12;
  (void)run("validate", c, &code);
  EXPECT_EQ(code, cli::kValidationFailed);
}

TEST(Commands, ValidateBoundaryMode) {
  auto c = wide_config(cli::Product::nonrecourse, 1.0);
  c.tree = sl::TreeSpec{2000};
  c.tol = 0.02;
  int code = -1;
  const auto r = rows(run("validate", c, &code));
  EXPECT_EQ(code, cli::kOk);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].size(), 6u);
  EXPECT_EQ(r[0][5], "pass");
}

TEST(Commands, OutputIsDeterministic) {
  auto c = spot_loan_config();
  c.spots = {95.0, 100.0};
  EXPECT_EQ(run("price", c), run("price", c));
  EXPECT_EQ(run("boundary", c), run("boundary", c));
}

TEST(Commands, UnknownCommand) {
  EXPECT_THROW(run("plot", spot_loan_config()), sl::ValidationError);
}
