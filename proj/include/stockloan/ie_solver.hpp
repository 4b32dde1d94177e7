#ifndef STOCKLOAN_IE_SOLVER_HPP
#define STOCKLOAN_IE_SOLVER_HPP

#include <functional>
#include <limits>

#include "stockloan/boundary.hpp"
#include "stockloan/model.hpp"

namespace stockloan {

struct NewtonOptions {
  double tol = 1e-10;  ///< relative on the step, scaled on the residual
  int max_iter = 50;
  double scale = 1.0;  ///< residual scale: converged when |f| <= tol * scale
  /// Iterates are kept strictly above this (steps across it are halved back).
  double lower_bound = -std::numeric_limits<double>::infinity();
};

struct NewtonResult {
  double root;
  double residual;
  int iterations;
};

/// Newton-Raphson with a central finite-difference slope,
/// step max(1e-6 |x|, 1e-9).
///
/// Stops at the first iterate x with |f(x)| <= tol * scale whose Newton step
/// satisfies |dx| <= tol * |x|. Throws IterationFailure after max_iter updates
/// and SingularDerivativeError when |f'| < 1e-14.
NewtonResult newton_solve(const std::function<double(double)>& f, double x0,
                          const NewtonOptions& opts = {});

/// The boundary equation as seen by the time march.
struct ResidualProblem {
  double maturity = 1.0;
  /// S_f(0+), fixed analytically.
  double initial_value = 1.0;
  /// S_f(0), the debt at expiry.
  double expiry_price = 1.0;
  /// Residual scale used by Newton (the principal).
  double scale = 1.0;
  /// Smallest admissible boundary value at tau (the accrued debt).
  std::function<double(double)> floor;
  /// F(path): residual of the equation at tau = path.tip_tau when the unknown
  /// S_f(tau) equals path.tip_value. Earlier nodes are fixed.
  std::function<double(const BoundaryPath&)> residual;
};

/// Marches over the startup times and then j = 1..n on the uniform grid,
/// solving F = 0 at each node with the previous node as initial guess. A failed Newton solve falls back to one
/// bisection pass on [floor(tau_j)(1 + 1e-8), 5 S_f(tau_{j-1})]. Without a
/// sign change the lower end is accepted when its residual is within
/// tolerance (the boundary touches the floor); otherwise a BoundaryStepError
/// names the step.
BoundaryCurve solve_boundary(const ResidualProblem& problem, const GridSpec& grid);

/// One boundary point as the march solves it: Newton from `guess` kept above
/// `floor`, then the bisection fallback on [floor (1 + 1e-8), upper]. A
/// fallback root reports grid.newton_max_iter iterations. Rethrows the Newton
/// failure when neither finds a root.
NewtonResult solve_boundary_point(const std::function<double(double)>& f, double guess,
                                  double floor, double upper, double scale,
                                  const GridSpec& grid);

/// path_to(tau), except that off the grid nodes the tip is the root of the
/// boundary equation at tau instead of the interpolated value. Interpolation
/// misses the corner where the boundary leaves the debt floor, which leaves
/// spots just below the interpolant priced under their intrinsic value. When
/// the solve fails the interpolated path is returned.
BoundaryPath resolve_tip(const BoundaryCurve& curve, double tau,
                         const std::function<double(const BoundaryPath&)>& residual,
                         double floor, double scale, const GridSpec& grid);

}  // namespace stockloan

#endif  // STOCKLOAN_IE_SOLVER_HPP
