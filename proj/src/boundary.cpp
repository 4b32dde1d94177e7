#include "stockloan/boundary.hpp"

#include <algorithm>
#include <utility>

#include "stockloan/error.hpp"

namespace stockloan {

namespace {

// Log interpolation in sqrt(u). The boundary leaves S_f(0+) like sqrt(u);
// far from expiry this is close to log-linear in u.
double sqrt_log_lerp(double u0, double v0, double u1, double v1, double u) {
  if (u1 <= u0) {
    return v1;
  }
  const double r0 = std::sqrt(u0);
  const double w = (std::sqrt(std::max(u, u0)) - r0) / (std::sqrt(u1) - r0);
  return v0 * std::exp(w * std::log(v1 / v0));
}

// Tolerance for snapping an evaluation time onto a grid node.
constexpr double kNodeSnap = 1e-9;

}  // namespace

double BoundaryPath::at(double u) const {
  const std::size_t count = nodes.size();
  if (count == 0) {
    return tip_value;
  }
  if (u <= 0.0) {
    return nodes[0];
  }
  const auto it = std::upper_bound(taus.begin(), taus.end(), u);
  const auto i = static_cast<std::size_t>(it - taus.begin()) - 1;
  const double u1 = i + 1 < count ? taus[i + 1] : tip_tau;
  const double v1 = i + 1 < count ? nodes[i + 1] : tip_value;
  return sqrt_log_lerp(taus[i], nodes[i], u1, v1, std::min(u, u1));
}

double BoundaryPath::final_panel_begin() const {
  if (taus.empty()) {
    return 0.0;
  }
  if (panel <= 0.0) {
    return taus.back();
  }
  const double begin = std::clamp(tip_tau - panel, 0.0, tip_tau);
  const auto it = std::upper_bound(taus.begin(), taus.end(), begin);
  if (it != taus.end() && *it - begin <= kNodeSnap * panel) {
    return *it;
  }
  if (it != taus.begin() && begin - *(it - 1) <= kNodeSnap * panel) {
    return *(it - 1);
  }
  return begin;
}

std::size_t BoundaryPath::final_panel_start() const {
  if (taus.empty()) {
    return 0;
  }
  const auto it = std::upper_bound(taus.begin(), taus.end(), final_panel_begin());
  return it == taus.begin() ? 0 : static_cast<std::size_t>(it - taus.begin()) - 1;
}

const QuadratureRule& final_panel_rule() {
  static const QuadratureRule rule = gauss_legendre_unit(kFinalPanelOrder);
  return rule;
}

BoundaryCurve::BoundaryCurve(double maturity, std::vector<double> values,
                             double expiry_price, std::vector<double> residuals,
                             std::vector<int> iterations, StartupNodes startup)
    : maturity_(maturity),
      step_(0.0),
      values_(std::move(values)),
      expiry_price_(expiry_price),
      residuals_(std::move(residuals)),
      iterations_(std::move(iterations)) {
  if (values_.size() < 2) {
    throw ValidationError("boundary curve needs at least two nodes");
  }
  if (!(maturity_ > 0.0)) {
    throw ValidationError("boundary curve maturity must be positive");
  }
  step_ = maturity_ / static_cast<double>(values_.size() - 1);
  residuals_.resize(values_.size(), 0.0);
  iterations_.resize(values_.size(), 0);
  if (startup.taus.size() != startup.values.size()) {
    throw ValidationError("startup nodes need one value per time");
  }
  fine_taus_.push_back(0.0);
  fine_values_.push_back(values_[0]);
  for (std::size_t k = 0; k < startup.taus.size(); ++k) {
    const double t = startup.taus[k];
    if (!(t > fine_taus_.back() && t < step_)) {
      throw ValidationError("startup nodes must increase inside the first interval");
    }
    fine_taus_.push_back(t);
    fine_values_.push_back(startup.values[k]);
  }
  for (std::size_t i = 1; i < values_.size(); ++i) {
    fine_taus_.push_back(tau(i));
    fine_values_.push_back(values_[i]);
  }
}

std::optional<double> BoundaryCurve::terminal_jump() const {
  if (values_.front() > expiry_price_) {
    return values_.front();
  }
  return std::nullopt;
}

double BoundaryCurve::at(double t) const {
  if (!(t >= 0.0 && t <= maturity_ * (1.0 + kNodeSnap))) {
    throw DomainError("boundary queried outside [0, T]");
  }
  if (t >= maturity_) {
    return values_.back();
  }
  BoundaryPath all;
  all.taus = fine_taus_;
  all.nodes = fine_values_;
  all.tip_tau = maturity_;
  all.tip_value = values_.back();
  return all.at(t);
}

bool BoundaryCurve::is_node(double t) const {
  const auto it = std::lower_bound(fine_taus_.begin(), fine_taus_.end(), t - kNodeSnap * step_);
  return it != fine_taus_.end() && std::abs(*it - t) <= kNodeSnap * step_;
}

BoundaryPath BoundaryCurve::path_to(double t) const {
  if (!(t >= 0.0 && t <= maturity_ * (1.0 + kNodeSnap))) {
    throw DomainError("boundary path requested outside [0, T]");
  }
  t = std::min(t, maturity_);
  const std::span<const double> taus(fine_taus_);
  // the tip replaces the first fine node at or beyond t
  std::size_t j = 1;
  while (j < taus.size() && taus[j] < t - kNodeSnap * step_) {
    ++j;
  }
  BoundaryPath path;
  if (j >= taus.size()) {
    j = taus.size() - 1;
  }
  const bool on_node = std::abs(taus[j] - t) <= kNodeSnap * step_;
  path.taus = taus.first(j);
  path.nodes = std::span<const double>(fine_values_).first(j);
  // The final panel width slides linearly between the local spacings at
  // the two neighbouring nodes, so prices are continuous in t and agree with
  // the march at the nodes.
  const double spacing = taus[j] - taus[j - 1];
  const double before = j >= 2 ? taus[j - 1] - taus[j - 2] : 0.0;
  const double w = on_node ? 1.0 : (t - taus[j - 1]) / spacing;
  path.panel = j >= 2 ? before + w * (spacing - before) : t;
  path.tip_tau = on_node ? taus[j] : t;
  path.tip_value = on_node ? fine_values_[j] : at(t);
  return path;
}

}  // namespace stockloan
