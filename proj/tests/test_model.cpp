#include <gtest/gtest.h>

#include <cmath>

#include "stockloan/error.hpp"
#include "stockloan/model.hpp"
#include "support.hpp"

namespace sl = stockloan;
using sl::testing::wide_loan;
using sl::testing::wide_market;

TEST(LoanSpec, RejectsInvalidTerms) {
  EXPECT_THROW((sl::LoanSpec{0.0, 0.1, 1.0, 0.0}.validate()), sl::ValidationError);
  EXPECT_THROW((sl::LoanSpec{1.0, 0.1, 0.0, 0.0}.validate()), sl::ValidationError);
  EXPECT_THROW((sl::LoanSpec{1.0, 0.1, 1.0, 1.0}.validate()), sl::ValidationError);
  EXPECT_THROW((sl::LoanSpec{1.0, 0.1, 1.0, -0.1}.validate()), sl::ValidationError);
  EXPECT_NO_THROW((sl::LoanSpec{1.0, 0.1, 1.0, 0.0}.validate()));
}

TEST(MarketParams, RejectsInvalidMarket) {
  EXPECT_THROW((sl::MarketParams{0.05, 0.0, 0.0}.validate()), sl::ValidationError);
  EXPECT_THROW((sl::MarketParams{-0.01, 0.0, 0.2}.validate()), sl::ValidationError);
  EXPECT_THROW((sl::MarketParams{0.05, -0.01, 0.2}.validate()), sl::ValidationError);
}

TEST(MarketParams, UnboundedBoundaryIsRejected) {
  const sl::MarketParams m{0.08, 0.0, 0.3};
  const sl::LoanSpec s{1.0, 0.05, 1.0, 0.0};
  EXPECT_THROW(sl::validate(m, s), sl::UnboundedBoundaryError);
  EXPECT_THROW(sl::terminal_exit_price(s, m), sl::UnboundedBoundaryError);
  // r <= eta with no dividend is fine
  EXPECT_NO_THROW(sl::validate(sl::MarketParams{0.05, 0.0, 0.3}, s));
}

TEST(GridSpec, Invariants) {
  sl::GridSpec g;
  EXPECT_NO_THROW(g.validate());
  g.time_steps = 1;
  EXPECT_THROW(g.validate(), sl::ValidationError);
  g = {};
  g.quadrature_order = 3;
  EXPECT_THROW(g.validate(), sl::ValidationError);
  g = {};
  g.newton_tol = 0.0;
  EXPECT_THROW(g.validate(), sl::ValidationError);
  g = {};
  g.startup_substeps = 0;
  EXPECT_THROW(g.validate(), sl::ValidationError);
}

TEST(AccruedDebt, ReferenceValues) {
  EXPECT_DOUBLE_EQ(sl::accrued_debt(wide_loan(5.0), 5.0), 0.7);
  EXPECT_NEAR(sl::accrued_debt(wide_loan(5.0), 0.0), 1.154, 5e-4);
  EXPECT_NEAR(sl::accrued_debt(wide_loan(1.0), 0.0), 0.774, 5e-4);
  // the reference value 1.902 is the truncation of 1.90280
  EXPECT_NEAR(sl::accrued_debt(wide_loan(10.0), 0.0), 1.902, 1e-3);
  EXPECT_NEAR(sl::accrued_debt(wide_loan(10.0), 0.0) / (0.7 * std::exp(1.0)), 1.0, 1e-12);
}

TEST(AccruedDebt, DomainErrors) {
  EXPECT_THROW(sl::accrued_debt(wide_loan(1.0), -1e-3), sl::DomainError);
  EXPECT_THROW(sl::accrued_debt(wide_loan(1.0), 1.001), sl::DomainError);
}

TEST(AccruedDebt, MonotoneInTau) {
  const auto growing = wide_loan(5.0);
  sl::LoanSpec flat = growing;
  flat.loan_rate = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t0 = 5.0 * i / 100.0;
    const double t1 = 5.0 * (i + 1) / 100.0;
    EXPECT_GT(sl::accrued_debt(growing, t0), sl::accrued_debt(growing, t1));
    EXPECT_EQ(sl::accrued_debt(flat, t0), sl::accrued_debt(flat, t1));
  }
}

TEST(DimensionlessConstants, ScalarValues) {
  const auto c = sl::dimensionless_constants(wide_market(), wide_loan(1.0));
  EXPECT_NEAR(c.gamma, 0.75, 1e-15);
  EXPECT_NEAR(c.q, 0.375, 1e-15);
  EXPECT_NEAR(c.k, -1.875, 1e-14);
  EXPECT_NEAR(c.alpha, 0.9375, 1e-14);
}

TEST(DimensionlessConstants, Identities) {
  for (double sigma : {0.1, 0.25, 0.4, 0.8}) {
    for (double eta : {0.0, 0.05, 0.2}) {
      const auto c = sl::dimensionless_constants({0.05, 0.02, sigma}, {1.0, eta, 1.0, 0.0});
      EXPECT_NEAR(c.beta + c.alpha * c.alpha + c.gamma, 0.0,
                  1e-15 * (std::abs(c.beta) + c.alpha * c.alpha + c.gamma));
      EXPECT_EQ(c.lambda, 2.0 * c.alpha);
    }
  }
}

TEST(TerminalExitPrice, Branches) {
  // r < eta: the debt branch
  EXPECT_NEAR(sl::terminal_exit_price(wide_loan(5.0), wide_market()), 0.7 * std::exp(0.5),
              1e-15);
  // r - eta > delta: the carry branch
  EXPECT_NEAR(sl::terminal_exit_price({1.0, 0.05, 1.0, 0.0}, {0.20, 0.05, 0.3}),
              3.0 * std::exp(0.05), 1e-12);
  // tie
  EXPECT_NEAR(sl::terminal_exit_price({80.0, 0.05, 1.0, 0.0}, {0.10, 0.05, 0.2}),
              80.0 * std::exp(0.05), 1e-12);
}

TEST(TerminalExitPrice, NeverBelowExpiryDebt) {
  for (double r : {0.0, 0.03, 0.1, 0.2}) {
    for (double delta : {0.01, 0.05, 0.1}) {
      for (double eta : {0.0, 0.05, 0.15}) {
        const sl::LoanSpec s{1.0, eta, 2.0, 0.0};
        const sl::MarketParams m{r, delta, 0.3};
        EXPECT_GE(sl::terminal_exit_price(s, m), sl::accrued_debt(s, 0.0));
      }
    }
  }
}
