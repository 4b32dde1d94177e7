#ifndef STOCKLOAN_NONRECOURSE_HPP
#define STOCKLOAN_NONRECOURSE_HPP

#include <memory>

#include "stockloan/boundary.hpp"
#include "stockloan/kernels.hpp"
#include "stockloan/model.hpp"

namespace stockloan {

/// Where an off-node price takes S_f(tau) from: a fresh root of the boundary
/// equation at tau, or the interpolated curve (cheaper, used inside the
/// rebate).
enum class OffNodeBoundary { resolve, interpolate };

/// Non-recourse stock loan, i.e. an American call struck at the accruing
/// debt a(tau). The margin fraction of the spec is ignored.
class NonRecoursePricer {
 public:
  NonRecoursePricer(const MarketParams& market, const LoanSpec& spec, BoundaryCurve boundary,
                    const GridSpec& grid = {});

  const MarketParams& market() const { return ctx_.market(); }
  const LoanSpec& spec() const { return ctx_.spec(); }
  const BoundaryCurve& boundary() const { return boundary_; }
  const KernelContext& context() const { return ctx_; }

  /// V(S, tau): exit payoff at or above S_f(tau), otherwise
  /// M1(S, tau, a(0)) + int_0^tau Q1(S, tau, u, S_f(u)) du.
  double value(double spot, double tau,
               OffNodeBoundary lookup = OffNodeBoundary::resolve) const;

  /// Boundary path to tau with the tip chosen by `lookup`.
  BoundaryPath path_to(double tau, OffNodeBoundary lookup = OffNodeBoundary::resolve) const;

  /// Residual of the value-matching equation at a candidate boundary point.
  static double residual(const KernelContext& ctx, const BoundaryPath& path);

 private:
  KernelContext ctx_;
  BoundaryCurve boundary_;
  GridSpec grid_;
};

/// Solves the non-recourse exit boundary on `grid`.
NonRecoursePricer nr_solve(const MarketParams& market, const LoanSpec& spec,
                           const GridSpec& grid);

inline double nr_value(const NonRecoursePricer& pricer, double spot, double tau) {
  return pricer.value(spot, tau);
}

/// R(tau) = V_st(a(tau), tau; (1 - Delta) a(tau)) - Delta a(tau).
///
/// One embedded non-recourse loan with principal (1 - Delta) E and the same
/// rate and maturity has accrued debt (1 - Delta) a(tau) at every tau, so a
/// single boundary solve serves every margin-call time. Copies share the
/// embedded pricer; calls are const and thread-safe.
class Rebate {
 public:
  Rebate(const MarketParams& market, const LoanSpec& spec, const GridSpec& grid);

  double operator()(double tau) const;

  const NonRecoursePricer& embedded() const { return *embedded_; }
  double margin_fraction() const { return delta_; }

 private:
  LoanSpec spec_;
  double delta_;
  std::shared_ptr<const NonRecoursePricer> embedded_;
};

inline Rebate rebate(const MarketParams& market, const LoanSpec& spec, const GridSpec& grid) {
  return Rebate(market, spec, grid);
}

}  // namespace stockloan

#endif  // STOCKLOAN_NONRECOURSE_HPP
