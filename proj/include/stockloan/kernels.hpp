#ifndef STOCKLOAN_KERNELS_HPP
#define STOCKLOAN_KERNELS_HPP

#include <functional>

#include "stockloan/boundary.hpp"
#include "stockloan/model.hpp"
#include "stockloan/quadrature.hpp"

namespace stockloan {

/// Standard normal CDF.
double norm_cdf(double x);

struct D12 {
  double d1;
  double d2;
};

/// Black-Scholes d1/d2 for spot x, horizon y, strike z. Throws DomainError
/// for y <= 0 or non-positive x, z.
D12 d12(double x, double y, double z, const MarketParams& market);

/// Everything the closed-form kernels need: market, contract, transform
/// constants and the margin-call rebate R(tau).
class KernelContext {
 public:
  using Rebate = std::function<double(double)>;

  KernelContext(const MarketParams& market, const LoanSpec& spec, Rebate rebate = {});

  const MarketParams& market() const { return market_; }
  const LoanSpec& spec() const { return spec_; }
  const DimensionlessConstants& constants() const { return constants_; }

  /// a(y), the accrued debt.
  double debt(double y) const;
  /// R(y); zero when no rebate was supplied.
  double rebate(double y) const { return rebate_ ? rebate_(y) : 0.0; }
  bool has_rebate() const { return static_cast<bool>(rebate_); }

 private:
  MarketParams market_;
  LoanSpec spec_;
  DimensionlessConstants constants_;
  Rebate rebate_;
};

/// European call on a dividend payer: x e^{-delta y} N(d1) - z e^{-r y} N(d2).
/// At y = 0 returns max(x - z, 0).
double m1(double x, double y, double z, const KernelContext& ctx);

/// Call knocked out at the debt curve, built by reflection through x = a(y):
/// M1(x) - (x / a)^lambda M1(a^2 / x). Requires x >= a(y).
double m_reflected(double x, double y, double z, const KernelContext& ctx);

/// Early-exit premium density at elapsed time y - z for a boundary point w.
/// At z = y the N factors collapse to H(ln(x / w)) with H(0) = 1/2.
double q1(double x, double y, double z, double w, const KernelContext& ctx);

/// Q1 minus its reflection through the debt curve. Requires x >= a(y).
double q_smooth(double x, double y, double z, double w, const KernelContext& ctx);

/// Rebate part of the value, int_0^y (x/a)^{lambda/2} K(x, y, z) dz.
///
/// With t = K2 sqrt(y / (y - z)), K2 = ln(x/a) / (sigma sqrt(2y)), the
/// integral becomes (2 / sqrt(pi)) (x/a)^alpha int_{K2}^inf
/// exp(beta ln(x/a)^2 / (4 t^2) - t^2) R(y - y K2^2 / t^2) dt. Requires
/// x >= a(y); at x = a(y) the result is R(y).
struct RebateQuadrature {
  RebateRule kind = RebateRule::graded;
  QuadratureRule laguerre;  ///< used for RebateRule::gauss_laguerre
};

RebateQuadrature make_rebate_quadrature(const GridSpec& grid);

double k_integral(double x, double y, const KernelContext& ctx,
                  const RebateQuadrature& quad = {});

/// t - K2 = s^2 with 6-point Gauss-Legendre panels in s whose lengths in t
/// double from min(K2, 1/2) / 4 out to t - K2 = 6.5. R(z(t)) moves on the
/// scale K2 near the lower end and behaves like sqrt(t - K2) there.
double k_integral_graded(double x, double y, const KernelContext& ctx);

/// v = t - K2 and the Gauss-Laguerre rule in v. Converges slowly (the
/// integrand is not smooth in v at 0); kept for comparison.
double k_integral_laguerre(double x, double y, const KernelContext& ctx,
                           const QuadratureRule& rule);

/// int_0^y Q(x, y, u, S_f(u)) du over a boundary path whose tip is at y:
/// the boundary rule applied to q_smooth plus k_integral.
double q_total_integral(double x, double y, const BoundaryPath& path,
                        const KernelContext& ctx, const RebateQuadrature& quad = {});

/// Convenience overload for a solved curve; throws DomainError if the curve
/// does not cover [0, y].
double q_total_integral(double x, double y, const BoundaryCurve& boundary,
                        const KernelContext& ctx, const RebateQuadrature& quad = {});

}  // namespace stockloan

#endif  // STOCKLOAN_KERNELS_HPP
