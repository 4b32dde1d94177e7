#ifndef STOCKLOAN_BOUNDARY_HPP
#define STOCKLOAN_BOUNDARY_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "stockloan/quadrature.hpp"

namespace stockloan {

/// A boundary known on nodes 0 = taus[0] < taus[1] < ... plus one extra point
/// (tip_tau, tip_value) with tip_tau > taus.back(). During the march the tip
/// is the unknown S_f(tau_j); when pricing it is S_f at the evaluation time.
///
/// Between points log S_f is interpolated linearly in sqrt(u).
struct BoundaryPath {
  std::span<const double> taus;
  std::span<const double> nodes;
  /// Width of the final panel [tip_tau - panel, tip_tau]; a non-positive
  /// value means "from the last node".
  double panel = 0.0;
  double tip_tau = 0.0;
  double tip_value = 0.0;

  double at(double u) const;
  /// Start of the final panel, clamped to [0, tip_tau]. Snapped onto a node
  /// when it lies within rounding of one.
  double final_panel_begin() const;
  /// Largest node index p with taus[p] <= final_panel_begin() (0 if none).
  std::size_t final_panel_start() const;
};

/// Gauss-Legendre points used on the panel that ends at the evaluation time.
inline constexpr int kFinalPanelOrder = 16;

const QuadratureRule& final_panel_rule();

/// Approximates int_0^{tip_tau} f(u, S_f(u)) du.
///
/// Composite trapezoid over the nodes up to final_panel_start() and on to
/// final_panel_begin(), then the last stretch up to tip_tau is integrated with u = tip_tau - t^2 and
/// Gauss-Legendre in t. The integrands of the value representation behave
/// like sqrt(tip_tau - u) there, and for spots off the boundary they switch
/// within a vanishing window near u = tip_tau; the substitution keeps the rule
/// smooth in the spot.
template <class F>
double integrate_along(const BoundaryPath& path, F&& f) {
  const double tau = path.tip_tau;
  if (tau <= 0.0) {
    return 0.0;
  }
  const std::size_t p = path.final_panel_start();
  const double start = path.final_panel_begin();

  double total = 0.0;
  if (!path.taus.empty()) {
    double prev = f(path.taus[0], path.nodes[0]);
    for (std::size_t i = 1; i <= p; ++i) {
      const double cur = f(path.taus[i], path.nodes[i]);
      total += 0.5 * (path.taus[i] - path.taus[i - 1]) * (prev + cur);
      prev = cur;
    }
    if (start > path.taus[p]) {
      total += 0.5 * (start - path.taus[p]) * (prev + f(start, path.at(start)));
    }
  }

  const double width = std::sqrt(tau - start);
  const QuadratureRule& gl = final_panel_rule();
  double panel = 0.0;
  for (int i = 0; i < gl.order; ++i) {
    const double t = width * gl.nodes[i];
    const double u = tau - t * t;
    panel += gl.weights[i] * 2.0 * t * f(u, path.at(u));
  }
  return total + width * panel;
}

/// Extra nodes solved inside the first grid interval (0, h).
struct StartupNodes {
  std::vector<double> taus;
  std::vector<double> values;
};

/// Discretized optimal exit boundary on 0 = tau_0 < ... < tau_n = T.
///
/// values()[0] holds S_f(0+), the starting point of the march. When it lies
/// above the debt at expiry the boundary jumps at tau = 0 and
/// terminal_jump() reports it.
class BoundaryCurve {
 public:
  BoundaryCurve(double maturity, std::vector<double> values, double expiry_price,
                std::vector<double> residuals = {}, std::vector<int> iterations = {},
                StartupNodes startup = {});

  std::size_t size() const { return values_.size(); }
  std::size_t steps() const { return values_.size() - 1; }
  double maturity() const { return maturity_; }
  double step() const { return step_; }
  double tau(std::size_t i) const { return i == steps() ? maturity_ : i * step_; }
  double value(std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }

  /// S_f at inception (tau = T).
  double inception() const { return values_.back(); }
  /// S_f(0), which is the accrued debt at expiry.
  double expiry_price() const { return expiry_price_; }
  std::optional<double> terminal_jump() const;

  /// Residual of the defining equation at each node (0 at the analytic node).
  std::span<const double> residuals() const { return residuals_; }
  /// Newton iterations spent at each node (0 at the analytic node).
  std::span<const int> iterations() const { return iterations_; }

  /// Startup nodes followed by the grid, as used for integration.
  std::span<const double> fine_taus() const { return fine_taus_; }
  /// True when t is one of the fine nodes (startup or grid).
  bool is_node(double t) const;
  std::span<const double> fine_values() const { return fine_values_; }

  /// Interpolation consistent with BoundaryPath; at(0) is S_f(0+).
  double at(double tau) const;

  /// The path used to integrate over [0, tau].
  BoundaryPath path_to(double tau) const;

 private:
  double maturity_;
  double step_;
  std::vector<double> values_;
  double expiry_price_;
  std::vector<double> residuals_;
  std::vector<int> iterations_;
  std::vector<double> fine_taus_;
  std::vector<double> fine_values_;
};

}  // namespace stockloan

#endif  // STOCKLOAN_BOUNDARY_HPP
