// Parameter sets and small helpers shared by the test suites.
#ifndef STOCKLOAN_TESTS_SUPPORT_HPP
#define STOCKLOAN_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>

#include "stockloan/model.hpp"

namespace stockloan::testing {

// High-volatility market used for the boundary reference values.
inline MarketParams wide_market() { return {0.06, 0.03, 0.4}; }
inline LoanSpec wide_loan(double maturity, double delta = 0.0) {
  return {0.7, 0.1, maturity, delta};
}

// Low-volatility market used for the margin-call value reference grid.
inline MarketParams narrow_market() { return {0.1, 0.05, 0.2}; }
inline LoanSpec narrow_loan(double principal, double delta = 0.1) {
  return {principal, 0.05, 1.0, delta};
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace stockloan::testing

#endif  // STOCKLOAN_TESTS_SUPPORT_HPP
