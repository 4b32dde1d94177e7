#ifndef STOCKLOAN_BINOMIAL_HPP
#define STOCKLOAN_BINOMIAL_HPP

#include <functional>

#include "stockloan/model.hpp"

namespace stockloan {

struct TreeSpec {
  int steps = 10000;
};

/// Cox-Ross-Rubinstein step quantities for one contract.
struct Lattice {
  double dt;
  double up;
  double down;
  double prob;      ///< risk-neutral up probability
  double discount;  ///< e^{-r dt}
};

/// Throws ValidationError unless steps >= 1 and 0 < p < 1.
Lattice make_lattice(const MarketParams& market, double maturity, const TreeSpec& tree);

enum class ExerciseStyle { american, european };

/// Non-recourse loan as a call with strike a(tau) at each node's time.
double nr_tree_value(double spot0, const MarketParams& market, const LoanSpec& spec,
                     const TreeSpec& tree, ExerciseStyle style = ExerciseStyle::american);

struct SpotBracket {
  double low;
  double high;
};

/// Adjacent lattice spots at inception between which exiting becomes optimal.
///
/// Runs both parity classes of the lattice E u^j at once so the inception
/// level has spot spacing u. Searches j in [0, ln(max_multiple) / (sigma
/// sqrt(dt))]; throws BracketNotFoundError when no switch is found.
SpotBracket nr_tree_boundary_bracket(const MarketParams& market, const LoanSpec& spec,
                                     const TreeSpec& tree, double max_multiple = 10.0);

/// Margin-call loan: nodes with S <= a(tau) are worth rebate(tau); elsewhere
/// max(S - a(tau), continuation). Requires spot0 > a(T).
///
/// The lattice is laid out in X = S / a(tau) with the usual up/down factors and
/// the up probability taken from the X drift r - delta - eta, so the trigger
/// sits exactly on a node line. Inception values on X = u^j (both parities)
/// are interpolated cubically at S0 / a(T).
double mc_tree_value(double spot0, const MarketParams& market, const LoanSpec& spec,
                     const TreeSpec& tree, const std::function<double(double)>& rebate);

}  // namespace stockloan

#endif  // STOCKLOAN_BINOMIAL_HPP
