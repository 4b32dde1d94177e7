#include "stockloan/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "stockloan/error.hpp"

namespace stockloan {

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

D12 d12(double x, double y, double z, const MarketParams& market) {
  if (!(y > 0.0)) {
    throw DomainError("d1/d2 need a positive horizon");
  }
  if (!(x > 0.0 && z > 0.0)) {
    throw DomainError("d1/d2 need positive spot and strike");
  }
  const double sig = market.volatility;
  const double vol = sig * std::sqrt(y);
  const double d1 =
      (std::log(x / z) + (market.risk_free - market.dividend + 0.5 * sig * sig) * y) / vol;
  return {d1, d1 - vol};
}

KernelContext::KernelContext(const MarketParams& market, const LoanSpec& spec, Rebate rebate)
    : market_(market),
      spec_(spec),
      constants_(dimensionless_constants(market, spec)),
      rebate_(std::move(rebate)) {}

double KernelContext::debt(double y) const { return accrued_debt(spec_, y); }

namespace {

double heaviside_log_ratio(double x, double w) {
  if (x > w) return 1.0;
  if (x < w) return 0.0;
  return 0.5;
}

// (x / a)^p computed through logs so that p = 0 gives exactly 1.
double ratio_pow(double x, double a, double p) { return std::exp(p * std::log(x / a)); }

}  // namespace

double m1(double x, double y, double z, const KernelContext& ctx) {
  if (y <= 0.0) {
    return x > z ? x - z : 0.0;
  }
  const auto& mk = ctx.market();
  const auto [d1, d2] = d12(x, y, z, mk);
  return x * std::exp(-mk.dividend * y) * norm_cdf(d1) -
         z * std::exp(-mk.risk_free * y) * norm_cdf(d2);
}

double m_reflected(double x, double y, double z, const KernelContext& ctx) {
  const double a = ctx.debt(y);
  if (x < a) {
    throw DomainError("reflected call evaluated below the debt curve");
  }
  const double lambda = ctx.constants().lambda;
  return m1(x, y, z, ctx) - ratio_pow(x, a, lambda) * m1(a * a / x, y, z, ctx);
}

double q1(double x, double y, double z, double w, const KernelContext& ctx) {
  const auto& mk = ctx.market();
  const double carry = mk.risk_free - ctx.spec().loan_rate;
  const double a = ctx.debt(y);
  const double s = y - z;
  if (s <= 0.0) {
    const double h = heaviside_log_ratio(x, w);
    return (x * mk.dividend - a * carry) * h;
  }
  const auto [d1, d2] = d12(x, s, w, mk);
  return x * mk.dividend * std::exp(-mk.dividend * s) * norm_cdf(d1) -
         a * carry * std::exp(-carry * s) * norm_cdf(d2);
}

double q_smooth(double x, double y, double z, double w, const KernelContext& ctx) {
  const double a = ctx.debt(y);
  if (x < a) {
    throw DomainError("reflected premium density evaluated below the debt curve");
  }
  const double lambda = ctx.constants().lambda;
  return q1(x, y, z, w, ctx) - ratio_pow(x, a, lambda) * q1(a * a / x, y, z, w, ctx);
}

namespace {

struct RebateSetup {
  double log_ratio;
  double k2;
  double quarter_beta_l2;
  double prefactor;
};

// Returns false when the integral vanishes identically.
bool rebate_setup(double x, double y, const KernelContext& ctx, RebateSetup& out) {
  if (y <= 0.0 || !ctx.has_rebate()) {
    return false;
  }
  const double a = ctx.debt(y);
  if (x < a) {
    throw DomainError("rebate integral evaluated below the debt curve");
  }
  const auto& c = ctx.constants();
  out.log_ratio = std::log(x / a);
  out.k2 = out.log_ratio / (ctx.market().volatility * std::sqrt(2.0 * y));
  out.quarter_beta_l2 = 0.25 * c.beta * out.log_ratio * out.log_ratio;
  out.prefactor = 2.0 / std::sqrt(std::numbers::pi) * std::exp(c.alpha * out.log_ratio);
  return true;
}

}  // namespace

RebateQuadrature make_rebate_quadrature(const GridSpec& grid) {
  RebateQuadrature q;
  q.kind = grid.rebate_rule;
  if (q.kind == RebateRule::gauss_laguerre) {
    q.laguerre = gauss_laguerre(grid.quadrature_order);
  }
  return q;
}

double k_integral(double x, double y, const KernelContext& ctx, const RebateQuadrature& quad) {
  if (quad.kind == RebateRule::gauss_laguerre) {
    return k_integral_laguerre(x, y, ctx, quad.laguerre);
  }
  return k_integral_graded(x, y, ctx);
}

double k_integral_graded(double x, double y, const KernelContext& ctx) {
  RebateSetup r{};
  if (!rebate_setup(x, y, ctx, r)) {
    return 0.0;
  }
  if (r.log_ratio == 0.0) {
    return ctx.rebate(y);
  }
  constexpr double kSpan = 6.5;  // e^{-t^2} < 1e-18 beyond
  if (r.k2 > kSpan) {
    return 0.0;
  }
  static const QuadratureRule gl = gauss_legendre_unit(6);

  double sum = 0.0;
  double s0 = 0.0;
  double s1 = std::min(r.k2, 0.5) / 4.0;
  while (s0 < kSpan) {
    const double q0 = std::sqrt(s0);
    const double q1 = std::sqrt(s1);
    double panel = 0.0;
    for (int i = 0; i < gl.order; ++i) {
      const double q = q0 + (q1 - q0) * gl.nodes[i];
      const double t = r.k2 + q * q;
      const double frac = r.k2 / t;
      const double z = y - y * frac * frac;
      panel += gl.weights[i] * 2.0 * q * std::exp(r.quarter_beta_l2 / (t * t) - t * t) *
               ctx.rebate(z);
    }
    sum += (q1 - q0) * panel;
    s0 = s1;
    s1 = std::min(2.0 * s1, kSpan);
  }
  return r.prefactor * sum;
}

double k_integral_laguerre(double x, double y, const KernelContext& ctx,
                           const QuadratureRule& rule) {
  RebateSetup r{};
  if (!rebate_setup(x, y, ctx, r)) {
    return 0.0;
  }
  double sum = 0.0;
  for (int i = 0; i < rule.order; ++i) {
    const double v = rule.nodes[i];
    const double t = v + r.k2;
    const double frac = r.k2 / t;
    const double z = y - y * frac * frac;
    const double expo = r.quarter_beta_l2 / (t * t) - t * t + v;
    // e^{-60} relative to an O(1) sum: skip the rebate evaluation
    if (expo + std::log(rule.weights[i]) < -60.0) {
      continue;
    }
    sum += rule.weights[i] * ctx.rebate(z) * std::exp(expo);
  }
  return r.prefactor * sum;
}

double q_total_integral(double x, double y, const BoundaryPath& path,
                        const KernelContext& ctx, const RebateQuadrature& quad) {
  const double smooth = integrate_along(
      path, [&](double u, double w) { return q_smooth(x, y, u, w, ctx); });
  return smooth + k_integral(x, y, ctx, quad);
}

double q_total_integral(double x, double y, const BoundaryCurve& boundary,
                        const KernelContext& ctx, const RebateQuadrature& quad) {
  if (y < 0.0 || y > boundary.maturity() * (1.0 + 1e-9)) {
    throw DomainError("boundary does not cover the integration range");
  }
  return q_total_integral(x, y, boundary.path_to(y), ctx, quad);
}

}  // namespace stockloan
