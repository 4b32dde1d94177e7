#include <gtest/gtest.h>

#include <cmath>

#include "stockloan/error.hpp"
#include "stockloan/quadrature.hpp"

namespace sl = stockloan;

namespace {

// j! computed directly; exact in double up to 22!.
double factorial(int j) {
  double f = 1.0;
  for (int i = 2; i <= j; ++i) f *= i;
  return f;
}

double moment(const sl::QuadratureRule& rule, int j) {
  double s = 0.0;
  for (int i = 0; i < rule.order; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], j);
  return s;
}

}  // namespace

TEST(GaussLaguerre, OrderRange) {
  EXPECT_THROW(sl::gauss_laguerre(3), sl::ValidationError);
  EXPECT_THROW(sl::gauss_laguerre(129), sl::ValidationError);
  for (int m : {4, 8, 16, 32, 64, 100, 128}) {
    const auto rule = sl::gauss_laguerre(m);
    EXPECT_EQ(rule.order, m);
    EXPECT_EQ(rule.nodes.size(), static_cast<std::size_t>(m));
  }
}

TEST(GaussLaguerre, NodesAndWeightsWellFormed) {
  for (int m : {4, 16, 32, 128}) {
    const auto rule = sl::gauss_laguerre(m);
    for (int i = 0; i < m; ++i) {
      EXPECT_GT(rule.nodes[i], 0.0);
      EXPECT_GT(rule.weights[i], 0.0);
      if (i > 0) EXPECT_GT(rule.nodes[i], rule.nodes[i - 1]);
    }
    EXPECT_NEAR(moment(rule, 0), 1.0, 1e-12);
    EXPECT_NEAR(moment(rule, 1), 1.0, 1e-10);
  }
}

TEST(GaussLaguerre, ThirdMoment) {
  for (int m : {4, 5, 8, 32}) {
    EXPECT_NEAR(moment(sl::gauss_laguerre(m), 3), 6.0, 1e-10) << "m = " << m;
  }
}

TEST(GaussLaguerre, FactorialMomentsUpToDegree2mMinus1) {
  const int m = 8;
  const auto rule = sl::gauss_laguerre(m);
  for (int j = 0; j <= 2 * m - 1; ++j) {
    EXPECT_NEAR(moment(rule, j) / factorial(j), 1.0, 1e-8) << "j = " << j;
  }
}

TEST(GaussLaguerre, KnownSmallRule) {
  // order 4 nodes are the roots of x^4 - 16x^3 + 72x^2 - 96x + 24
  const auto rule = sl::gauss_laguerre(4);
  for (double x : rule.nodes) {
    const double p = (((x - 16.0) * x + 72.0) * x - 96.0) * x + 24.0;
    EXPECT_NEAR(p, 0.0, 1e-10);
  }
  EXPECT_NEAR(rule.nodes[0], 0.322547689619392, 1e-12);
  EXPECT_NEAR(rule.weights[0], 0.603154104341634, 1e-12);
}

TEST(GaussLegendre, ExactForPolynomialsOnUnitInterval) {
  for (int n : {1, 4, 16}) {
    const auto rule = sl::gauss_legendre_unit(n);
    for (int j = 0; j <= 2 * n - 1; ++j) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], j);
      EXPECT_NEAR(s, 1.0 / (j + 1.0), 1e-14) << "n = " << n << " j = " << j;
    }
  }
  EXPECT_THROW(sl::gauss_legendre_unit(0), sl::ValidationError);
}
