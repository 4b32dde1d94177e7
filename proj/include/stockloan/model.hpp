#ifndef STOCKLOAN_MODEL_HPP
#define STOCKLOAN_MODEL_HPP

namespace stockloan {

/// Contract terms of a stock loan. Time is always time-to-maturity tau.
struct LoanSpec {
  double principal = 1.0;        ///< E, amount lent at inception
  double loan_rate = 0.0;        ///< eta, continuously compounded
  double maturity = 1.0;         ///< T in years
  double margin_fraction = 0.0;  ///< Delta, share of the debt due at a margin call

  /// Throws ValidationError unless E > 0, T > 0 and 0 <= Delta < 1.
  void validate() const;
};

/// Risk-neutral Black-Scholes-Merton market.
struct MarketParams {
  double risk_free = 0.0;   ///< r
  double dividend = 0.0;    ///< delta, continuous yield
  double volatility = 0.2;  ///< sigma

  void validate() const;
};

/// Joint check: both halves valid, and r > eta only together with a positive
/// dividend yield (UnboundedBoundaryError otherwise).
void validate(const MarketParams& market, const LoanSpec& spec);

/// Constants of the log-debt heat-equation transform.
struct DimensionlessConstants {
  double gamma;   // 2r / sigma^2
  double q;       // 2 delta / sigma^2
  double k;       // gamma - q - 2 eta / sigma^2 - 1
  double alpha;   // -k / 2
  double beta;    // -alpha^2 - gamma
  double lambda;  // 2 alpha, exponent of the reflection factor
};

/// Rule for the rebate integral of the margin-call kernels.
enum class RebateRule {
  graded,          ///< composite Gauss-Legendre, graded toward the debt curve
  gauss_laguerre,  ///< one Gauss-Laguerre rule of order quadrature_order
};

struct GridSpec {
  int time_steps = 50;
  /// Gauss-Laguerre order; only read when rebate_rule is gauss_laguerre.
  int quadrature_order = 32;
  RebateRule rebate_rule = RebateRule::graded;
  double newton_tol = 1e-10;
  int newton_max_iter = 50;
  /// The first interval (0, h) is split at h (k / K)^2, k = 1..K-1, with
  /// K = startup_substeps; 1 disables the split.
  int startup_substeps = 8;

  void validate() const;
};

/// a(tau) = E exp(eta (T - tau)). Throws DomainError for tau outside [0, T].
double accrued_debt(const LoanSpec& spec, double tau);

DimensionlessConstants dimensionless_constants(const MarketParams& market,
                                               const LoanSpec& spec);

/// Limit of the exit boundary as tau -> 0+:
/// max(E e^{eta T}, (r - eta) / delta * E e^{eta T}).
double terminal_exit_price(const LoanSpec& spec, const MarketParams& market);

}  // namespace stockloan

#endif  // STOCKLOAN_MODEL_HPP
