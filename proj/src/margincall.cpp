#include "stockloan/margincall.hpp"

#include <algorithm>
#include <utility>

#include "stockloan/error.hpp"
#include "stockloan/ie_solver.hpp"

namespace stockloan {

std::string_view to_string(ExerciseState state) {
  switch (state) {
    case ExerciseState::holding:
      return "holding";
    case ExerciseState::exit_optimal:
      return "exit_optimal";
    case ExerciseState::margin_call_boundary:
      return "margin_call_boundary";
  }
  return "unknown";
}

MarginCallPricer::MarginCallPricer(const MarketParams& market, const LoanSpec& spec,
                                   Rebate rebate, BoundaryCurve boundary, RebateQuadrature quad,
                                   const GridSpec& grid)
    : rebate_(std::move(rebate)),
      ctx_(market, spec, rebate_),
      boundary_(std::move(boundary)),
      quad_(std::move(quad)),
      grid_(grid) {}

double MarginCallPricer::residual(const KernelContext& ctx, const RebateQuadrature& quad,
                                  const BoundaryPath& path) {
  const double s = path.tip_value;
  const double tau = path.tip_tau;
  return s - ctx.debt(tau) - m_reflected(s, tau, ctx.debt(0.0), ctx) -
         q_total_integral(s, tau, path, ctx, quad);
}

BoundaryPath MarginCallPricer::path_to(double tau, OffNodeBoundary lookup) const {
  if (lookup == OffNodeBoundary::interpolate) {
    return boundary_.path_to(tau);
  }
  return resolve_tip(
      boundary_, tau, [this](const BoundaryPath& p) { return residual(ctx_, quad_, p); },
      ctx_.debt(tau), ctx_.spec().principal, grid_);
}

PriceQuote MarginCallPricer::value(double spot, double tau, OffNodeBoundary lookup) const {
  const double debt = ctx_.debt(tau);
  if (spot < debt) {
    throw MarginCalledStateError("spot below the accrued debt: the margin call has fired");
  }
  if (spot == debt) {
    return {rebate_(tau), ExerciseState::margin_call_boundary, tau, spot};
  }
  if (tau <= 0.0 && spot >= boundary_.expiry_price()) {
    return {spot - debt, ExerciseState::exit_optimal, tau, spot};
  }
  const BoundaryPath path = path_to(tau, lookup);
  if (spot >= path.tip_value) {
    return {spot - debt, ExerciseState::exit_optimal, tau, spot};
  }
  const double v = m_reflected(spot, tau, ctx_.debt(0.0), ctx_) +
                   q_total_integral(spot, tau, path, ctx_, quad_);
  return {v, ExerciseState::holding, tau, spot};
}

double MarginCallPricer::service_fee(double spot0) const {
  const double maturity = ctx_.spec().maturity;
  return value(spot0, maturity).value - spot0 + ctx_.spec().principal;
}

MarginCallPricer mc_solve(const MarketParams& market, const LoanSpec& spec,
                          const GridSpec& grid) {
  validate(market, spec);
  grid.validate();
  Rebate rebate(market, spec, grid);
  RebateQuadrature quad = make_rebate_quadrature(grid);
  const KernelContext ctx(market, spec, rebate);

  ResidualProblem problem;
  problem.maturity = spec.maturity;
  problem.initial_value = terminal_exit_price(spec, market);
  problem.expiry_price = accrued_debt(spec, 0.0);
  problem.scale = spec.principal;
  problem.floor = [&ctx](double tau) { return ctx.debt(tau); };
  problem.residual = [&ctx, &quad](const BoundaryPath& path) {
    return MarginCallPricer::residual(ctx, quad, path);
  };

  BoundaryCurve boundary = solve_boundary(problem, grid);
  return MarginCallPricer(market, spec, std::move(rebate), std::move(boundary), std::move(quad),
                          grid);
}

double service_fee(const MarketParams& market, const LoanSpec& spec, const GridSpec& grid,
                   double spot0) {
  return mc_solve(market, spec, grid).service_fee(spot0);
}

}  // namespace stockloan
