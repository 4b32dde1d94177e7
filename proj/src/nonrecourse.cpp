#include "stockloan/nonrecourse.hpp"

#include <algorithm>
#include <utility>

#include "stockloan/error.hpp"
#include "stockloan/ie_solver.hpp"

namespace stockloan {

NonRecoursePricer::NonRecoursePricer(const MarketParams& market, const LoanSpec& spec,
                                     BoundaryCurve boundary, const GridSpec& grid)
    : ctx_(market, spec), boundary_(std::move(boundary)), grid_(grid) {}

double NonRecoursePricer::residual(const KernelContext& ctx, const BoundaryPath& path) {
  const double s = path.tip_value;
  const double tau = path.tip_tau;
  const double premium =
      integrate_along(path, [&](double u, double w) { return q1(s, tau, u, w, ctx); });
  return s - ctx.debt(tau) - m1(s, tau, ctx.debt(0.0), ctx) - premium;
}

BoundaryPath NonRecoursePricer::path_to(double tau, OffNodeBoundary lookup) const {
  if (lookup == OffNodeBoundary::interpolate) {
    return boundary_.path_to(tau);
  }
  return resolve_tip(
      boundary_, tau, [this](const BoundaryPath& p) { return residual(ctx_, p); },
      ctx_.debt(tau), ctx_.spec().principal, grid_);
}

double NonRecoursePricer::value(double spot, double tau, OffNodeBoundary lookup) const {
  if (!(spot > 0.0)) {
    throw DomainError("spot must be positive");
  }
  const double debt = ctx_.debt(tau);
  if (tau <= 0.0) {
    return std::max(spot - debt, 0.0);
  }
  const BoundaryPath path = path_to(tau, lookup);
  if (spot >= path.tip_value) {
    return spot - debt;
  }
  const double premium =
      integrate_along(path, [&](double u, double w) { return q1(spot, tau, u, w, ctx_); });
  return m1(spot, tau, ctx_.debt(0.0), ctx_) + premium;
}

NonRecoursePricer nr_solve(const MarketParams& market, const LoanSpec& spec,
                           const GridSpec& grid) {
  validate(market, spec);
  grid.validate();
  const KernelContext ctx(market, spec);

  ResidualProblem problem;
  problem.maturity = spec.maturity;
  problem.initial_value = terminal_exit_price(spec, market);
  problem.expiry_price = accrued_debt(spec, 0.0);
  problem.scale = spec.principal;
  problem.floor = [&ctx](double tau) { return ctx.debt(tau); };
  problem.residual = [&ctx](const BoundaryPath& path) { return NonRecoursePricer::residual(ctx, path); };

  return NonRecoursePricer(market, spec, solve_boundary(problem, grid), grid);
}

Rebate::Rebate(const MarketParams& market, const LoanSpec& spec, const GridSpec& grid)
    : spec_(spec), delta_(spec.margin_fraction) {
  spec.validate();
  LoanSpec embedded = spec;
  embedded.principal = (1.0 - delta_) * spec.principal;
  embedded.margin_fraction = 0.0;
  embedded_ = std::make_shared<const NonRecoursePricer>(nr_solve(market, embedded, grid));
}

double Rebate::operator()(double tau) const {
  const double a = accrued_debt(spec_, tau);
  return embedded_->value(a, tau, OffNodeBoundary::interpolate) - delta_ * a;
}

}  // namespace stockloan
