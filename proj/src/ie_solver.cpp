#include "stockloan/ie_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "stockloan/error.hpp"

namespace stockloan {

namespace {

double slope(const std::function<double(double)>& f, double x, double fx, double lower) {
  const double h = std::max(1e-6 * std::abs(x), 1e-9);
  // divide by the representable spacing, not the nominal one
  const double up = x + h;
  if (x - h <= lower) {
    return (f(up) - fx) / (up - x);
  }
  const double down = x - h;
  return (f(up) - f(down)) / (up - down);
}

std::string fmt_step(std::size_t j, double tau, const std::string& why) {
  std::ostringstream os;
  os << "boundary step " << j << " (tau = " << tau << "): " << why;
  return os.str();
}

// Plain bisection; returns nullopt-like NaN when no sign change.
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (!std::isfinite(flo) || !std::isfinite(fhi) || (flo > 0.0) == (fhi > 0.0)) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  for (int it = 0; it < 200 && hi - lo > tol * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

NewtonResult newton_solve(const std::function<double(double)>& f, double x0,
                          const NewtonOptions& opts) {
  double x = x0;
  double fx = f(x);
  for (int iter = 0;; ++iter) {
    if (!std::isfinite(fx)) {
      throw IterationFailure("non-finite residual in Newton iteration", x, fx);
    }
    const double d = slope(f, x, fx, opts.lower_bound);
    if (!(std::abs(d) >= 1e-14)) {
      throw SingularDerivativeError("vanishing derivative in Newton iteration", x);
    }
    const double dx = -fx / d;
    if (std::abs(fx) <= opts.tol * opts.scale && std::abs(dx) <= opts.tol * std::abs(x)) {
      return {x, fx, iter};
    }
    if (iter >= opts.max_iter) {
      throw IterationFailure("Newton iteration did not converge", x, fx);
    }
    double next = x + dx;
    if (next <= opts.lower_bound) {
      next = 0.5 * (x + opts.lower_bound);
    }
    x = next;
    fx = f(x);
  }
}

BoundaryCurve solve_boundary(const ResidualProblem& problem, const GridSpec& grid) {
  grid.validate();
  const auto n = static_cast<std::size_t>(grid.time_steps);
  const auto sub = static_cast<std::size_t>(grid.startup_substeps);
  const double h = problem.maturity / static_cast<double>(n);

  // graded startup times followed by the uniform grid
  std::vector<double> taus{0.0};
  for (std::size_t k = 1; k < sub; ++k) {
    const double frac = static_cast<double>(k) / static_cast<double>(sub);
    taus.push_back(h * frac * frac);
  }
  for (std::size_t j = 1; j <= n; ++j) {
    taus.push_back(j == n ? problem.maturity : static_cast<double>(j) * h);
  }
  const std::size_t total = taus.size();

  std::vector<double> values(total, 0.0);
  std::vector<double> residuals(total, 0.0);
  std::vector<int> iterations(total, 0);
  values[0] = problem.initial_value;

  for (std::size_t j = 1; j < total; ++j) {
    const double tau = taus[j];
    BoundaryPath path;
    path.taus = std::span<const double>(taus).first(j);
    path.nodes = std::span<const double>(values).first(j);
    path.panel = tau - taus[j - 1];
    path.tip_tau = tau;

    auto f = [&](double s) {
      BoundaryPath p = path;
      p.tip_value = s;
      return problem.residual(p);
    };

    const double floor = problem.floor ? problem.floor(tau) : 0.0;
    const double guess = std::max(values[j - 1], floor * (1.0 + 1e-6));
    try {
      const NewtonResult r =
          solve_boundary_point(f, guess, floor, 5.0 * values[j - 1], problem.scale, grid);
      values[j] = r.root;
      residuals[j] = r.residual;
      iterations[j] = r.iterations;
    } catch (const SolverError& e) {
      throw BoundaryStepError(fmt_step(j, tau, e.what()), j, tau);
    }
  }

  StartupNodes startup;
  startup.taus.assign(taus.begin() + 1, taus.begin() + static_cast<long>(sub));
  startup.values.assign(values.begin() + 1, values.begin() + static_cast<long>(sub));
  const auto grid_begin = static_cast<long>(sub);
  std::vector<double> grid_values{values[0]};
  std::vector<double> grid_residuals{0.0};
  std::vector<int> grid_iterations{0};
  grid_values.insert(grid_values.end(), values.begin() + grid_begin, values.end());
  grid_residuals.insert(grid_residuals.end(), residuals.begin() + grid_begin, residuals.end());
  grid_iterations.insert(grid_iterations.end(), iterations.begin() + grid_begin,
                         iterations.end());
  return BoundaryCurve(problem.maturity, std::move(grid_values), problem.expiry_price,
                       std::move(grid_residuals), std::move(grid_iterations),
                       std::move(startup));
}

NewtonResult solve_boundary_point(const std::function<double(double)>& f, double guess,
                                  double floor, double upper, double scale,
                                  const GridSpec& grid) {
  NewtonOptions opts;
  opts.tol = grid.newton_tol;
  opts.max_iter = grid.newton_max_iter;
  opts.scale = scale;
  opts.lower_bound = floor;
  try {
    return newton_solve(f, guess, opts);
  } catch (const SolverError&) {
    const double lo = floor * (1.0 + 1e-8);
    double root = std::numeric_limits<double>::quiet_NaN();
    try {
      root = bisect(f, lo, upper, grid.newton_tol);
      // no sign change: the boundary may sit on the debt floor itself
      if (!std::isfinite(root) && std::abs(f(lo)) <= grid.newton_tol * scale) {
        root = lo;
      }
    } catch (const std::exception&) {
    }
    if (!std::isfinite(root)) {
      throw;
    }
    return {root, f(root), grid.newton_max_iter};
  }
}

BoundaryPath resolve_tip(const BoundaryCurve& curve, double tau,
                         const std::function<double(const BoundaryPath&)>& residual,
                         double floor, double scale, const GridSpec& grid) {
  BoundaryPath path = curve.path_to(tau);
  if (curve.is_node(tau) || path.taus.empty()) {
    return path;
  }
  const BoundaryPath base = path;
  auto f = [&](double s) {
    BoundaryPath p = base;
    p.tip_value = s;
    return residual(p);
  };
  const double guess = std::max(base.tip_value, floor * (1.0 + 1e-6));
  const double upper = 5.0 * std::max(base.tip_value, base.nodes.back());
  try {
    path.tip_value = solve_boundary_point(f, guess, floor, upper, scale, grid).root;
  } catch (const SolverError&) {
  }
  return path;
}

}  // namespace stockloan
