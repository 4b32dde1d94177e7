#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <vector>

#include "stockloan/binomial.hpp"
#include "stockloan/error.hpp"
#include "stockloan/margincall.hpp"
#include "stockloan/nonrecourse.hpp"

namespace stockloan::cli {

namespace {

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, int precision) : out_(out), precision_(precision) {}

  void comment(const std::string& text) { out_ << "# " << text << '\n'; }
  void header(std::initializer_list<const char*> names) {
    bool first = true;
    for (const char* n : names) {
      out_ << (first ? "" : ",") << n;
      first = false;
    }
    out_ << '\n';
  }

  CsvWriter& num(double v) {
    std::ostringstream os;
    os << std::setprecision(precision_) << v;
    return field(os.str());
  }
  CsvWriter& text(const std::string& v) { return field(v); }
  CsvWriter& blank() { return field(""); }
  void end() {
    out_ << '\n';
    fresh_ = true;
  }

 private:
  CsvWriter& field(const std::string& v) {
    if (!fresh_) out_ << ',';
    out_ << v;
    fresh_ = false;
    return *this;
  }

  std::ostream& out_;
  int precision_;
  bool fresh_ = true;
};

void echo_config(CsvWriter& csv, const std::string& command, const RunConfig& config) {
  csv.comment("stockloan " + command + " " + to_json(config).dump());
}

std::vector<double> or_single(const std::vector<double>& values, double fallback) {
  return values.empty() ? std::vector<double>{fallback} : values;
}

const BoundaryCurve& solve_curve(const RunConfig& c, std::optional<NonRecoursePricer>& nr,
                                 std::optional<MarginCallPricer>& mc) {
  if (c.product == Product::nonrecourse) {
    nr.emplace(nr_solve(c.market, c.spec, c.grid));
    return nr->boundary();
  }
  mc.emplace(mc_solve(c.market, c.spec, c.grid));
  return mc->boundary();
}

TreeSpec require_tree(const RunConfig& c) {
  if (!c.tree) {
    throw ValidationError("validate needs a tree spec (tree.N or --tree-steps)");
  }
  return *c.tree;
}

// Distance from x to [lo, hi]; 0 inside.
double outside(double x, double lo, double hi) {
  return x < lo ? lo - x : (x > hi ? x - hi : 0.0);
}

}  // namespace

int cmd_boundary(const RunConfig& c, std::ostream& out) {
  c.validate();
  CsvWriter csv(out, c.precision);
  echo_config(csv, "boundary", c);
  std::optional<NonRecoursePricer> nr;
  std::optional<MarginCallPricer> mc;
  const BoundaryCurve& b = solve_curve(c, nr, mc);
  if (const auto jump = b.terminal_jump()) {
    csv.comment("S_f jumps at expiry: S_f(0) = " + std::to_string(b.expiry_price()) +
                ", S_f(0+) = " + std::to_string(*jump));
  }
  csv.header({"tau", "S_f", "a_tau", "residual"});
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double tau = b.tau(i);
    csv.num(tau).num(b.value(i)).num(accrued_debt(c.spec, tau)).num(b.residuals()[i]).end();
  }
  return kOk;
}

int cmd_price(const RunConfig& c, std::ostream& out) {
  c.validate();
  if (c.spots.empty()) {
    throw ValidationError("price needs at least one spot");
  }
  CsvWriter csv(out, c.precision);
  echo_config(csv, "price", c);
  std::optional<NonRecoursePricer> nr;
  std::optional<MarginCallPricer> mc;
  solve_curve(c, nr, mc);

  csv.header({"S", "tau", "value", "state", "error"});
  std::size_t failed = 0;
  std::size_t rows = 0;
  for (double tau : or_single(c.taus, c.spec.maturity)) {
    for (double s : c.spots) {
      ++rows;
      csv.num(s).num(tau);
      try {
        if (mc) {
          const PriceQuote q = mc->value(s, tau);
          csv.num(q.value).text(std::string(to_string(q.state))).blank().end();
        } else {
          const double v = nr->value(s, tau);
          const double sf = tau <= 0.0 ? accrued_debt(c.spec, 0.0) : nr->path_to(tau).tip_value;
          const bool exits = s >= sf;
          csv.num(v).text(exits ? "exit_optimal" : "holding").blank().end();
        }
      } catch (const DomainError& e) {
        ++failed;
        csv.blank().text("error").text(e.what()).end();
      }
    }
  }
  return failed == rows ? kUsageError : kOk;
}

int cmd_fee(const RunConfig& c, std::ostream& out) {
  c.validate();
  if (!c.spot0 && c.spots.empty()) {
    throw ValidationError("fee needs S0 or a spot");
  }
  const double s0 = c.spot0 ? *c.spot0 : c.spots.front();
  CsvWriter csv(out, c.precision);
  echo_config(csv, "fee", c);
  csv.header({"E", "Delta", "S0", "V0", "fee", "error"});
  std::size_t failed = 0;
  std::size_t rows = 0;
  for (double e : or_single(c.principals, c.spec.principal)) {
    for (double d : or_single(c.deltas, c.spec.margin_fraction)) {
      ++rows;
      LoanSpec spec = c.spec;
      spec.principal = e;
      spec.margin_fraction = d;
      csv.num(e).num(d).num(s0);
      try {
        const MarginCallPricer p = mc_solve(c.market, spec, c.grid);
        const double v0 = p.value(s0, spec.maturity).value;
        csv.num(v0).num(v0 - s0 + e).blank().end();
      } catch (const DomainError& err) {
        ++failed;
        csv.blank().blank().text(err.what()).end();
      }
    }
  }
  return failed == rows ? kUsageError : kOk;
}

int cmd_rebate(const RunConfig& c, std::ostream& out) {
  c.validate();
  CsvWriter csv(out, c.precision);
  echo_config(csv, "rebate", c);
  const Rebate r(c.market, c.spec, c.grid);
  csv.header({"tau", "R"});
  const BoundaryCurve& grid = r.embedded().boundary();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv.num(grid.tau(i)).num(r(grid.tau(i))).end();
  }
  return kOk;
}

int cmd_validate(const RunConfig& c, std::ostream& out) {
  c.validate();
  const TreeSpec tree = require_tree(c);
  CsvWriter csv(out, c.precision);
  echo_config(csv, "validate", c);
  std::size_t passed = 0;
  std::size_t failed = 0;
  auto verdict = [&](double diff) {
    const bool ok = diff <= c.tol;
    ++(ok ? passed : failed);
    return ok ? "pass" : "fail";
  };

  if (c.product == Product::nonrecourse && c.spots.empty()) {
    // inception boundary against the lattice exercise bracket
    csv.header({"T", "ie", "bt_low", "bt_high", "abs_diff", "status"});
    for (double t : or_single(c.maturities, c.spec.maturity)) {
      LoanSpec spec = c.spec;
      spec.maturity = t;
      const double ie = nr_solve(c.market, spec, c.grid).boundary().inception();
      const SpotBracket br = nr_tree_boundary_bracket(c.market, spec, tree);
      const double diff = outside(ie, br.low, br.high);
      csv.num(t).num(ie).num(br.low).num(br.high).num(diff).text(verdict(diff)).end();
    }
  } else {
    if (c.spots.empty()) {
      throw ValidationError("validate needs spots for value comparisons");
    }
    csv.header({"E", "S", "ie", "bt", "abs_diff", "status"});
    for (double e : or_single(c.principals, c.spec.principal)) {
      LoanSpec spec = c.spec;
      spec.principal = e;
      if (c.product == Product::nonrecourse) {
        const NonRecoursePricer p = nr_solve(c.market, spec, c.grid);
        for (double s : c.spots) {
          const double ie = p.value(s, spec.maturity);
          const double bt = nr_tree_value(s, c.market, spec, tree);
          const double diff = std::abs(ie - bt);
          csv.num(e).num(s).num(ie).num(bt).num(diff).text(verdict(diff)).end();
        }
      } else {
        const MarginCallPricer p = mc_solve(c.market, spec, c.grid);
        for (double s : c.spots) {
          const double ie = p.value(s, spec.maturity).value;
          const double bt = mc_tree_value(s, c.market, spec, tree, p.rebate());
          const double diff = std::abs(ie - bt);
          csv.num(e).num(s).num(ie).num(bt).num(diff).text(verdict(diff)).end();
        }
      }
    }
  }
  std::ostringstream summary;
  summary << "summary: " << passed << " passed, " << failed << " failed (tol " << c.tol << ")";
  csv.comment(summary.str());
  return failed == 0 ? kOk : kValidationFailed;
}

int cmd_tables(const RunConfig& c, std::ostream& out) {
  c.grid.validate();
  const TreeSpec tree = c.tree.value_or(TreeSpec{});
  CsvWriter csv(out, c.precision);
  echo_config(csv, "tables", c);

  const MarketParams wide{0.06, 0.03, 0.4};
  csv.comment("section: nonrecourse inception boundary (E=0.7 eta=0.1 r=0.06 delta=0.03 "
              "sigma=0.4)");
  csv.header({"T", "ie", "bt_low", "bt_high"});
  for (double t : {1.0, 5.0, 20.0}) {
    const LoanSpec spec{0.7, 0.1, t, 0.0};
    const double ie = nr_solve(wide, spec, c.grid).boundary().inception();
    const SpotBracket br = nr_tree_boundary_bracket(wide, spec, tree);
    csv.num(t).num(ie).num(br.low).num(br.high).end();
  }

  const MarketParams narrow{0.1, 0.05, 0.2};
  csv.comment("section: margincall values at inception (eta=0.05 r=0.1 delta=0.05 sigma=0.2 "
              "Delta=0.1 T=1)");
  csv.header({"E", "S", "ie", "bt"});
  for (double e : {80.0, 85.0, 90.0}) {
    const LoanSpec spec{e, 0.05, 1.0, 0.1};
    const MarginCallPricer p = mc_solve(narrow, spec, c.grid);
    for (double s : {95.0, 100.0, 105.0, 110.0}) {
      csv.num(e).num(s).num(p.value(s, 1.0).value)
          .num(mc_tree_value(s, narrow, spec, tree, p.rebate()))
          .end();
    }
  }

  csv.comment("section: margincall boundary endpoints (E=0.7 eta=0.1 r=0.06 delta=0.03 "
              "sigma=0.4 Delta=0.1)");
  csv.header({"T", "S_f_inception", "S_f_expiry"});
  for (double t : {1.0, 5.0, 10.0}) {
    const LoanSpec spec{0.7, 0.1, t, 0.1};
    const MarginCallPricer p = mc_solve(wide, spec, c.grid);
    csv.num(t).num(p.boundary().inception()).num(p.boundary().expiry_price()).end();
  }
  return kOk;
}

int run_command(const std::string& name, const RunConfig& config, std::ostream& out) {
  if (name == "boundary") return cmd_boundary(config, out);
  if (name == "price") return cmd_price(config, out);
  if (name == "fee") return cmd_fee(config, out);
  if (name == "rebate") return cmd_rebate(config, out);
  if (name == "validate") return cmd_validate(config, out);
  if (name == "tables") return cmd_tables(config, out);
  throw ValidationError("unknown command '" + name + "'");
}

}  // namespace stockloan::cli
