#ifndef STOCKLOAN_QUADRATURE_HPP
#define STOCKLOAN_QUADRATURE_HPP

#include <vector>

namespace stockloan {

/// Nodes and weights of an interpolatory rule. For Gauss-Laguerre the weight
/// function e^{-v} is implied and not included in `weights` sums of f(v).
struct QuadratureRule {
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Order-m Gauss-Laguerre rule for int_0^inf e^{-v} f(v) dv, 4 <= m <= 128.
///
/// Nodes come from the Golub-Welsch eigenproblem of the Laguerre Jacobi
/// matrix and polished by Newton on L_m. Weights above 1e-3 come from the
/// eigenvectors, the rest from w_i = v_i / ((m + 1) L_{m+1}(v_i))^2, which
/// keeps the far tail accurate in relative terms. The zeroth and first
/// moments are checked before returning (SolverError otherwise).
QuadratureRule gauss_laguerre(int order);

/// Order-m Gauss-Legendre rule on [0, 1].
QuadratureRule gauss_legendre_unit(int order);

}  // namespace stockloan

#endif  // STOCKLOAN_QUADRATURE_HPP
