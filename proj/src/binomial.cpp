#include "stockloan/binomial.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "stockloan/error.hpp"

namespace stockloan {

Lattice make_lattice(const MarketParams& market, double maturity, const TreeSpec& tree) {
  if (tree.steps < 1) {
    throw ValidationError("tree needs at least one step");
  }
  market.validate();
  Lattice l{};
  l.dt = maturity / tree.steps;
  l.up = std::exp(market.volatility * std::sqrt(l.dt));
  l.down = 1.0 / l.up;
  l.prob = (std::exp((market.risk_free - market.dividend) * l.dt) - l.down) / (l.up - l.down);
  l.discount = std::exp(-market.risk_free * l.dt);
  if (!(l.prob > 0.0 && l.prob < 1.0)) {
    throw ValidationError("risk-neutral probability outside (0, 1); increase the step count");
  }
  return l;
}

namespace {

// Shared backward induction on the recombining tree rooted at spot0.
// `node_value(level, spot, continuation)` decides the value at interior nodes;
// the terminal level uses `node_value(N, spot, 0)` as well.
template <class NodeValue>
double induct(double spot0, const Lattice& l, int steps, NodeValue&& node_value) {
  const auto n = static_cast<std::size_t>(steps);
  const double up2 = l.up * l.up;
  std::vector<double> v(n + 1);
  double s = spot0 * std::pow(l.down, steps);
  for (std::size_t i = 0; i <= n; ++i) {
    v[i] = node_value(steps, s, std::nan(""));
    s *= up2;
  }
  const double pu = l.discount * l.prob;
  const double pd = l.discount * (1.0 - l.prob);
  for (int k = steps - 1; k >= 0; --k) {
    s = spot0 * std::pow(l.down, k);
    for (int i = 0; i <= k; ++i) {
      const double cont = pu * v[i + 1] + pd * v[i];
      v[i] = node_value(k, s, cont);
      s *= up2;
    }
  }
  return v[0];
}

}  // namespace

double nr_tree_value(double spot0, const MarketParams& market, const LoanSpec& spec,
                     const TreeSpec& tree, ExerciseStyle style) {
  validate(market, spec);
  const Lattice l = make_lattice(market, spec.maturity, tree);
  std::vector<double> debt(tree.steps + 1);
  for (int k = 0; k <= tree.steps; ++k) {
    debt[k] = accrued_debt(spec, std::max(0.0, spec.maturity - k * l.dt));
  }
  const bool american = style == ExerciseStyle::american;
  return induct(spot0, l, tree.steps, [&](int k, double s, double cont) {
    const double payoff = s - debt[k];
    if (k == tree.steps) {
      return std::max(payoff, 0.0);
    }
    return american ? std::max(payoff, cont) : cont;
  });
}

SpotBracket nr_tree_boundary_bracket(const MarketParams& market, const LoanSpec& spec,
                                     const TreeSpec& tree, double max_multiple) {
  validate(market, spec);
  const Lattice l = make_lattice(market, spec.maturity, tree);
  const int n = tree.steps;
  const double log_step = std::log(l.up);
  const int top = static_cast<int>(std::ceil(std::log(max_multiple) / log_step));

  // index idx <-> lattice exponent j = idx - n; the level-k window is
  // j in [-k, top + k].
  const std::size_t width = static_cast<std::size_t>(top + 2 * n + 1);
  std::vector<double> spot(width);
  for (std::size_t idx = 0; idx < width; ++idx) {
    spot[idx] = spec.principal * std::exp((static_cast<double>(idx) - n) * log_step);
  }
  std::vector<double> v(width);
  std::vector<double> next(width);
  const double debt0 = accrued_debt(spec, 0.0);
  for (std::size_t idx = 0; idx < width; ++idx) {
    v[idx] = std::max(spot[idx] - debt0, 0.0);
  }

  const double pu = l.discount * l.prob;
  const double pd = l.discount * (1.0 - l.prob);
  std::vector<char> exercise(width, 0);
  for (int k = n - 1; k >= 0; --k) {
    const double debt = accrued_debt(spec, std::max(0.0, spec.maturity - k * l.dt));
    const int lo = n - k;
    const int hi = n + top + k;
    for (int idx = lo; idx <= hi; ++idx) {
      const double cont = pu * v[idx + 1] + pd * v[idx - 1];
      const double payoff = spot[idx] - debt;
      next[idx] = std::max(payoff, cont);
      if (k == 0) {
        exercise[idx] = payoff >= cont;
      }
    }
    std::swap(v, next);
  }

  // lowest j such that every spot from j up to the top exercises
  int first = -1;
  for (int j = top; j >= 0; --j) {
    if (!exercise[n + j]) break;
    first = j;
  }
  if (first <= 0) {
    throw BracketNotFoundError("no exercise switch inside the inception lattice window");
  }
  return {spot[n + first - 1], spot[n + first]};
}

double mc_tree_value(double spot0, const MarketParams& market, const LoanSpec& spec,
                     const TreeSpec& tree, const std::function<double(double)>& rebate) {
  validate(market, spec);
  const double debt_now = accrued_debt(spec, spec.maturity);
  if (!(spot0 > debt_now)) {
    throw DomainError("margin-call tree needs a spot above the initial debt");
  }
  const Lattice l = make_lattice(market, spec.maturity, tree);
  const int n = tree.steps;
  const double log_step = std::log(l.up);
  // The lattice lives in X = S / a(tau), which drifts at r - delta - eta, so
  // the trigger S <= a(tau) is the fixed node line j = 0.
  const double prob =
      (std::exp((market.risk_free - market.dividend - spec.loan_rate) * l.dt) - l.down) /
      (l.up - l.down);
  if (!(prob > 0.0 && prob < 1.0)) {
    throw ValidationError("risk-neutral probability outside (0, 1); increase the step count");
  }
  const double x0 = std::log(spot0 / debt_now) / log_step;
  const int top = static_cast<int>(std::floor(x0)) + 3;

  const auto width = static_cast<std::size_t>(top + n + 1);
  std::vector<double> ratio(width);
  for (std::size_t j = 0; j < width; ++j) {
    ratio[j] = std::exp(static_cast<double>(j) * log_step);
  }
  std::vector<double> v(width);
  std::vector<double> next(width);

  const double debt0 = accrued_debt(spec, 0.0);
  v[0] = rebate(0.0);
  for (std::size_t j = 1; j < width; ++j) {
    v[j] = std::max(debt0 * ratio[j] - debt0, 0.0);
  }
  const double pu = l.discount * prob;
  const double pd = l.discount * (1.0 - prob);
  for (int k = n - 1; k >= 0; --k) {
    const double tau = std::max(0.0, spec.maturity - k * l.dt);
    const double debt = accrued_debt(spec, tau);
    next[0] = rebate(tau);
    const int hi = top + k;
    for (int j = 1; j <= hi; ++j) {
      const double cont = pu * v[j + 1] + pd * v[j - 1];
      next[j] = std::max(debt * (ratio[j] - 1.0), cont);
    }
    std::swap(v, next);
  }

  // cubic Lagrange through the inception nodes around X0 (both parities)
  const int j0 = std::max(0, static_cast<int>(std::floor(x0)) - 1);
  const double t = x0 - j0;
  const double y0 = v[j0];
  const double y1 = v[j0 + 1];
  const double y2 = v[j0 + 2];
  const double y3 = v[j0 + 3];
  return -y0 * (t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0 + y1 * t * (t - 2.0) * (t - 3.0) / 2.0 -
         y2 * t * (t - 1.0) * (t - 3.0) / 2.0 + y3 * t * (t - 1.0) * (t - 2.0) / 6.0;
}

}  // namespace stockloan
