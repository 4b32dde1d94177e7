#include "stockloan/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <string>

#include "stockloan/error.hpp"

namespace stockloan {

namespace {

// Three-term recurrence for Laguerre polynomials; returns {L_n(x), L_{n-1}(x)}.
std::pair<double, double> laguerre_pair(int n, double x) {
  double prev = 1.0;
  double cur = 1.0 - x;
  if (n == 0) {
    return {1.0, 0.0};
  }
  for (int j = 1; j < n; ++j) {
    const double next = ((2.0 * j + 1.0 - x) * cur - j * prev) / (j + 1.0);
    prev = cur;
    cur = next;
  }
  return {cur, prev};
}

}  // namespace

QuadratureRule gauss_laguerre(int order) {
  if (order < 4 || order > 128) {
    throw ValidationError("Gauss-Laguerre order " + std::to_string(order) +
                          " outside [4, 128]");
  }
  const int m = order;

  Eigen::VectorXd diag(m);
  Eigen::VectorXd sub(m - 1);
  for (int i = 0; i < m; ++i) {
    diag(i) = 2.0 * i + 1.0;
  }
  for (int i = 1; i < m; ++i) {
    sub(i - 1) = static_cast<double>(i);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);

  QuadratureRule rule;
  rule.order = m;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    double x = eig.eigenvalues()(i);
    // L_m'(x) = m (L_m(x) - L_{m-1}(x)) / x
    for (int it = 0; it < 4; ++it) {
      const auto [lm, lm1] = laguerre_pair(m, x);
      const double dl = m * (lm - lm1) / x;
      const double dx = lm / dl;
      x -= dx;
      if (std::abs(dx) <= 1e-16 * x) {
        break;
      }
    }
    const double lnext = laguerre_pair(m + 1, x).first;
    rule.nodes[i] = x;
    rule.weights[i] = x / ((m + 1.0) * (m + 1.0) * lnext * lnext);
    // the eigenvector weight is accurate to ~1e-16 absolute, which beats the
    // polynomial formula for the leading weights at high order
    const double v0 = eig.eigenvectors()(0, i);
    if (v0 * v0 > 1e-3) {
      rule.weights[i] = v0 * v0;
    }
  }

  double m0 = 0.0;
  double m1 = 0.0;
  for (int i = 0; i < m; ++i) {
    m0 += rule.weights[i];
    m1 += rule.weights[i] * rule.nodes[i];
  }
  if (std::abs(m0 - 1.0) > 1e-12 || std::abs(m1 - 1.0) > 1e-10) {
    throw SolverError("Gauss-Laguerre rule of order " + std::to_string(m) +
                      " failed its moment check");
  }
  return rule;
}

QuadratureRule gauss_legendre_unit(int order) {
  if (order < 1) {
    throw ValidationError("Gauss-Legendre order must be positive");
  }
  const int n = order;
  QuadratureRule rule;
  rule.order = n;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p0 = 1.0;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        break;
      }
    }
    // map [-1, 1] -> [0, 1], ascending
    rule.nodes[n - 1 - i] = 0.5 * (x + 1.0);
    rule.weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace stockloan
