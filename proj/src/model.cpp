#include "stockloan/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stockloan/error.hpp"

namespace stockloan {

namespace {

bool finite(double x) { return std::isfinite(x); }

}  // namespace

void LoanSpec::validate() const {
  if (!finite(principal) || principal <= 0.0) {
    throw ValidationError("principal must be positive");
  }
  if (!finite(loan_rate)) {
    throw ValidationError("loan rate must be finite");
  }
  if (!finite(maturity) || maturity <= 0.0) {
    throw ValidationError("maturity must be positive");
  }
  if (!finite(margin_fraction) || margin_fraction < 0.0 || margin_fraction >= 1.0) {
    throw ValidationError("margin fraction must lie in [0, 1)");
  }
}

void MarketParams::validate() const {
  if (!finite(risk_free) || risk_free < 0.0) {
    throw ValidationError("risk-free rate must be non-negative");
  }
  if (!finite(dividend) || dividend < 0.0) {
    throw ValidationError("dividend yield must be non-negative");
  }
  if (!finite(volatility) || volatility <= 0.0) {
    throw ValidationError("volatility must be positive");
  }
}

void validate(const MarketParams& market, const LoanSpec& spec) {
  market.validate();
  spec.validate();
  if (market.dividend == 0.0 && market.risk_free > spec.loan_rate) {
    throw UnboundedBoundaryError(
        "r > eta with zero dividend yield: the exit boundary is unbounded near expiry");
  }
}

void GridSpec::validate() const {
  if (time_steps < 2) {
    throw ValidationError("time grid needs at least 2 steps");
  }
  if (quadrature_order < 4 || quadrature_order > 128) {
    throw ValidationError("quadrature order must lie in [4, 128]");
  }
  if (!(newton_tol > 0.0)) {
    throw ValidationError("newton tolerance must be positive");
  }
  if (newton_max_iter < 1) {
    throw ValidationError("newton iteration cap must be positive");
  }
  if (startup_substeps < 1 || startup_substeps > 64) {
    throw ValidationError("startup substeps must lie in [1, 64]");
  }
}

double accrued_debt(const LoanSpec& spec, double tau) {
  if (!(tau >= 0.0 && tau <= spec.maturity)) {
    throw DomainError("time to maturity " + std::to_string(tau) + " outside [0, T]");
  }
  return spec.principal * std::exp(spec.loan_rate * (spec.maturity - tau));
}

DimensionlessConstants dimensionless_constants(const MarketParams& market,
                                               const LoanSpec& spec) {
  const double var = market.volatility * market.volatility;
  DimensionlessConstants c{};
  c.gamma = 2.0 * market.risk_free / var;
  c.q = 2.0 * market.dividend / var;
  c.k = c.gamma - c.q - 2.0 * spec.loan_rate / var - 1.0;
  c.alpha = -0.5 * c.k;
  c.beta = -c.alpha * c.alpha - c.gamma;
  c.lambda = 2.0 * c.alpha;
  return c;
}

double terminal_exit_price(const LoanSpec& spec, const MarketParams& market) {
  const double debt = accrued_debt(spec, 0.0);
  const double excess = market.risk_free - spec.loan_rate;
  if (excess <= 0.0) {
    return debt;
  }
  if (market.dividend == 0.0) {
    throw UnboundedBoundaryError("S_f(0+) is unbounded when r > eta and delta = 0");
  }
  return std::max(debt, excess / market.dividend * debt);
}

}  // namespace stockloan
