#ifndef STOCKLOAN_MARGINCALL_HPP
#define STOCKLOAN_MARGINCALL_HPP

#include <string_view>

#include "stockloan/boundary.hpp"
#include "stockloan/kernels.hpp"
#include "stockloan/model.hpp"
#include "stockloan/nonrecourse.hpp"
#include "stockloan/quadrature.hpp"

namespace stockloan {

enum class ExerciseState { holding, exit_optimal, margin_call_boundary };

std::string_view to_string(ExerciseState state);

struct PriceQuote {
  double value;
  ExerciseState state;
  double tau;
  double spot;
};

/// Stock loan with a single margin call at the accrued-debt curve.
///
/// On [a(tau), S_f(tau)) the value is
///   M(S, tau, a(0)) + int_0^tau Q(S, tau, u, S_f(u)) du,
/// where M and the smooth part of Q are reflected through the debt curve and
/// the remaining part of Q carries the rebate R.
class MarginCallPricer {
 public:
  MarginCallPricer(const MarketParams& market, const LoanSpec& spec, Rebate rebate,
                   BoundaryCurve boundary, RebateQuadrature quad, const GridSpec& grid = {});

  const MarketParams& market() const { return ctx_.market(); }
  const LoanSpec& spec() const { return ctx_.spec(); }
  const BoundaryCurve& boundary() const { return boundary_; }
  const Rebate& rebate() const { return rebate_; }
  const KernelContext& context() const { return ctx_; }
  const RebateQuadrature& rebate_quadrature() const { return quad_; }

  /// Throws MarginCalledStateError for spot < a(tau).
  PriceQuote value(double spot, double tau,
                   OffNodeBoundary lookup = OffNodeBoundary::resolve) const;

  /// Boundary path to tau with the tip chosen by `lookup`.
  BoundaryPath path_to(double tau, OffNodeBoundary lookup = OffNodeBoundary::resolve) const;

  /// V0 - S0 + E at inception.
  double service_fee(double spot0) const;

  static double residual(const KernelContext& ctx, const RebateQuadrature& quad,
                         const BoundaryPath& path);

 private:
  Rebate rebate_;
  KernelContext ctx_;
  BoundaryCurve boundary_;
  RebateQuadrature quad_;
  GridSpec grid_;
};

MarginCallPricer mc_solve(const MarketParams& market, const LoanSpec& spec,
                          const GridSpec& grid);

inline PriceQuote mc_value(const MarginCallPricer& pricer, double spot, double tau) {
  return pricer.value(spot, tau);
}

/// Solves the contract and returns its fair upfront fee for spot S0.
double service_fee(const MarketParams& market, const LoanSpec& spec, const GridSpec& grid,
                   double spot0);

}  // namespace stockloan

#endif  // STOCKLOAN_MARGINCALL_HPP
