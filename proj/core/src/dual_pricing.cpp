#include "pricechain/dual_pricing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pricechain {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTieTol = 1e-12;
}  // namespace

double QuasiDualUtility::price_term(double p) const {
  switch (price_form) {
    case PriceForm::Linear:
      return -phi * p;
    case PriceForm::Quadratic:
      return -phi * p * p;
    case PriceForm::Log:
      return -phi * std::log1p(p);
  }
  return 0.0;
}

void QuasiDualUtility::validate() const {
  if (!(phi > 0.0)) throw ConfigError("quasi-dual utility: phi must be > 0");
  if (!std::isfinite(pbar_lin) || !std::isfinite(pbar_quad) || !std::isfinite(offset))
    throw ConfigError("quasi-dual utility: coefficients must be finite");
}

void QDScenario::validate() const {
  if (costs.empty()) throw ConfigError("quasi-dual scenario: no models");
  if (family.size() != n())
    throw ConfigError("quasi-dual scenario: utility count does not match model count");
  for (int i = 1; i < n(); ++i)
    if (!(costs[static_cast<std::size_t>(i)] > costs[static_cast<std::size_t>(i - 1)]))
      throw ConfigError("quasi-dual scenario: costs must be strictly increasing");
  for (const auto& f : family.members) f.validate();
  if (!(price_cap >= 0.0)) throw ConfigError("quasi-dual scenario: price cap must be >= 0");
}

CompatibilityReport check_second_type_compatibility(const QuasiDualFamily& fam, int grid_n) {
  if (grid_n < 3)
    throw std::domain_error("check_second_type_compatibility: grid_n must be >= 3");
  CompatibilityReport report;
  const int n = fam.size();
  const int price_n = std::clamp(grid_n / 5, 9, 41);
  const double dp = fam.price_cap / (price_n - 1);
  const double db = (fam.pbar_hi - fam.pbar_lo) / (grid_n - 1);
  constexpr double kSignTol = 1e-12;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto& bi = fam.members[static_cast<std::size_t>(i)];
      const auto& bj = fam.members[static_cast<std::size_t>(j)];
      for (int kp = 0; kp < price_n; ++kp) {
        double p = kp * dp;
        for (int kq = 0; kq < price_n; ++kq) {
          double p2 = kq * dp;
          int last_sign = 0;
          int transitions = 0;
          bool bad_direction = false;
          double bad_pb = 0.0;
          for (int kb = 0; kb < grid_n; ++kb) {
            double pb = fam.pbar_lo + kb * db;
            if (pb < p || pb < p2) continue;  // availability p <= p_bar
            double vi = bi.value(p, pb);
            double vj = bj.value(p2, pb);
            if (vi < 0.0 || vj < 0.0) continue;
            double diff = vi - vj;
            int sign = (diff > kSignTol) ? 1 : (diff < -kSignTol ? -1 : 0);
            if (sign == 0) continue;
            if (last_sign != 0 && sign != last_sign) {
              ++transitions;
              if (sign > 0) {
                bad_direction = true;
                bad_pb = pb;
              }
            }
            last_sign = sign;
          }
          if (transitions > 1 || bad_direction) {
            report.violations.push_back(
                {i, j, p, p2, bad_pb,
                 transitions > 1 ? "B_ij has more than one sign change over p_bar"
                                 : "B_ij sign change goes - to + over p_bar"});
            kp = price_n;
            break;
          }
        }
      }
    }
  }
  report.pass = report.violations.empty();
  return report;
}

namespace {

void append_roots_1d(const std::function<double(double)>& g, double lo, double hi,
                     std::vector<double>& out) {
  if (!(hi > lo)) return;
  constexpr int kScan = 256;
  double prev_x = lo;
  double prev_v = g(lo);
  for (int k = 1; k <= kScan; ++k) {
    double x = lo + (hi - lo) * k / kScan;
    double v = g(x);
    if (prev_v == 0.0) {
      out.push_back(prev_x);
    } else if ((prev_v < 0.0) != (v < 0.0)) {
      out.push_back(detail::bisect(g, prev_x, x, kRootValueTol, kRootArgTol));
    }
    prev_x = x;
    prev_v = v;
  }
  if (prev_v == 0.0) out.push_back(prev_x);
}

// Partition over a subset of models (mask) -- used to exclude models that
// are not offered.
std::vector<WinnerCell> qd_partition_masked(const std::vector<double>& prices,
                                            const QuasiDualFamily& fam,
                                            const std::vector<bool>& offered) {
  const int n = fam.size();
  const double lo = fam.pbar_lo;
  const double hi = fam.pbar_hi;
  std::vector<double> pts{lo, hi};
  for (int i = 0; i < n; ++i) {
    if (!offered[static_cast<std::size_t>(i)]) continue;
    double pi = prices[static_cast<std::size_t>(i)];
    if (pi > lo && pi < hi) pts.push_back(pi);
    const auto& f = fam.members[static_cast<std::size_t>(i)];
    append_roots_1d([&](double pb) { return f.value(pi, pb); }, lo, hi, pts);
    for (int j = i + 1; j < n; ++j) {
      if (!offered[static_cast<std::size_t>(j)]) continue;
      const auto& fj = fam.members[static_cast<std::size_t>(j)];
      double pj = prices[static_cast<std::size_t>(j)];
      append_roots_1d([&](double pb) { return f.value(pi, pb) - fj.value(pj, pb); }, lo, hi, pts);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double a, double b) { return std::abs(a - b) < 1e-13; }),
            pts.end());
  std::vector<WinnerCell> cells;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    double clo = pts[k], chi = pts[k + 1];
    if (chi - clo <= 1e-13) continue;
    double mid = 0.5 * (clo + chi);
    int best = -1;
    double best_v = 0.0;
    for (int i = 0; i < n; ++i) {
      if (!offered[static_cast<std::size_t>(i)]) continue;
      double pi = prices[static_cast<std::size_t>(i)];
      if (pi > mid) continue;  // availability: p <= p_bar
      double v = fam.members[static_cast<std::size_t>(i)].value(pi, mid);
      if (v < 0.0) continue;
      if (best < 0 || v >= best_v) {
        best = i;
        best_v = v;
      }
    }
    if (!cells.empty() && cells.back().winner == best) {
      cells.back().hi = chi;
    } else {
      cells.push_back({clo, chi, best});
    }
  }
  return cells;
}

double qd_total_revenue(const std::vector<WinnerCell>& cells, const std::vector<double>& prices,
                        const BuyerDistribution& mu) {
  double total = 0.0;
  for (const auto& c : cells) {
    if (c.winner < 0) continue;
    total += prices[static_cast<std::size_t>(c.winner)] * mu.mass(c.lo, c.hi);
  }
  return total;
}

struct Max1D {
  double x = 0.0;
  double v = -kInf;
};

Max1D maximize_tie_up(const std::function<double(double)>& g, double lo, double hi, int grid_n,
                      double tol, const std::vector<double>& extra) {
  Max1D best;
  const int n = std::max(grid_n, 2);
  for (int k = 0; k <= n; ++k) {
    double x = lo + (hi - lo) * k / n;
    double v = g(x);
    if (v > best.v + kTieTol || (v >= best.v - kTieTol && x > best.x)) best = {x, v};
  }
  double dx = (hi - lo) / n;
  if (dx > 0.0) {
    auto [xr, vr] = detail::golden_max(g, std::max(lo, best.x - dx), std::min(hi, best.x + dx),
                                       tol);
    if (vr > best.v + kTieTol) best = {xr, vr};
  }
  for (double c : extra) {
    if (c < lo || c > hi) continue;
    double v = g(c);
    if (v > best.v + kTieTol || (v >= best.v - kTieTol && c > best.x)) best = {c, v};
  }
  return best;
}

}  // namespace

std::vector<WinnerCell> qd_winner_partition(const std::vector<double>& prices,
                                            const QuasiDualFamily& fam) {
  std::vector<bool> offered(static_cast<std::size_t>(fam.size()), true);
  return qd_partition_masked(prices, fam, offered);
}

std::vector<double> qd_oracle_revenues(const std::vector<double>& prices,
                                       const QuasiDualFamily& fam, const BuyerDistribution& mu,
                                       int grid_n) {
  if (grid_n < 100) throw std::domain_error("qd_oracle_revenues: grid_n must be >= 100");
  const int n = fam.size();
  std::vector<double> rev(static_cast<std::size_t>(n), 0.0);
  const double lo = mu.lo();
  const double hi = mu.hi();
  const double dx = (hi - lo) / grid_n;
  for (int k = 0; k < grid_n; ++k) {
    double pb = lo + (k + 0.5) * dx;
    double cell_mass = mu.mass(lo + k * dx, lo + (k + 1) * dx);
    int best = -1;
    double best_v = 0.0;
    for (int i = 0; i < n; ++i) {
      double pi = prices[static_cast<std::size_t>(i)];
      if (pi > pb) continue;
      double v = fam.members[static_cast<std::size_t>(i)].value(pi, pb);
      if (v < 0.0) continue;
      if (best < 0 || v >= best_v) {
        best = i;
        best_v = v;
      }
    }
    if (best >= 0) rev[static_cast<std::size_t>(best)] += prices[static_cast<std::size_t>(best)] * cell_mass;
  }
  return rev;
}

QDSingleResult qd_price_single(const QDScenario& scn) {
  scn.validate();
  const auto& fn = scn.family.members.front();
  const BuyerDistribution& mu = scn.mu;
  const double cap = std::min(scn.price_cap, scn.family.pbar_hi);
  QuasiDualFamily one;
  one.members = {fn};
  one.pbar_lo = scn.family.pbar_lo;
  one.pbar_hi = scn.family.pbar_hi;
  one.price_cap = scn.price_cap;
  std::vector<bool> offered{true};
  auto rev = [&](double p) {
    std::vector<double> pr{p};
    return qd_total_revenue(qd_partition_masked(pr, one, offered), pr, mu);
  };
  Max1D best = maximize_tie_up(rev, 0.0, std::max(cap, 0.0), scn.solver.case_grid,
                               scn.solver.price_tol, {0.0, cap});
  QDSingleResult out;
  out.price = best.x;
  std::vector<double> pr{best.x};
  auto cells = qd_partition_masked(pr, one, offered);
  for (const auto& c : cells) {
    if (c.winner != 0) continue;
    if (out.interval.empty) {
      out.interval = {false, c.lo, c.hi};
    } else {
      out.interval.hi = c.hi;
    }
  }
  out.rev = best.x <= 0.0 ? 0.0 : qd_total_revenue(cells, pr, mu);
  if (out.rev <= 0.0) out.interval = {};
  return out;
}

QDSolution solve_chain_qd(const QDScenario& scn) {
  scn.validate();
  const int n = scn.n();
  QDSolution sol;
  sol.prices.assign(static_cast<std::size_t>(n), 0.0);
  sol.intervals.assign(static_cast<std::size_t>(n), {});
  sol.revenues.assign(static_cast<std::size_t>(n), 0.0);
  sol.profits.assign(static_cast<std::size_t>(n), 0.0);
  std::vector<bool> offered(static_cast<std::size_t>(n), false);

  QDSingleResult first = qd_price_single(scn);
  sol.prices[0] = first.price;
  offered[0] = !first.interval.empty;
  if (!offered[0]) sol.notes.push_back("model 1: empty market at every price");

  for (int i = 1; i < n; ++i) {
    std::vector<bool> with = offered;
    with[static_cast<std::size_t>(i)] = true;
    auto rev_total = [&](double p) {
      std::vector<double> pr = sol.prices;
      pr[static_cast<std::size_t>(i)] = p;
      return qd_total_revenue(qd_partition_masked(pr, scn.family, with), pr, scn.mu);
    };
    double upstream =
        qd_total_revenue(qd_partition_masked(sol.prices, scn.family, offered), sol.prices, scn.mu);
    std::vector<double> extra{0.0, scn.price_cap};
    for (int j = 0; j < i; ++j) extra.push_back(sol.prices[static_cast<std::size_t>(j)]);
    Max1D best = maximize_tie_up(rev_total, 0.0, scn.price_cap, scn.solver.case_grid,
                                 scn.solver.price_tol, extra);
    if (best.v <= upstream + kTieTol) {
      sol.prices[static_cast<std::size_t>(i)] = scn.price_cap;
      sol.notes.push_back("model " + std::to_string(i + 1) + ": dominated, not offered");
    } else {
      sol.prices[static_cast<std::size_t>(i)] = best.x;
      offered[static_cast<std::size_t>(i)] = true;
    }
  }

  auto cells = qd_partition_masked(sol.prices, scn.family, offered);
  for (const auto& c : cells) {
    if (c.winner < 0) continue;
    auto& iv = sol.intervals[static_cast<std::size_t>(c.winner)];
    if (iv.empty) {
      iv = {false, c.lo, c.hi};
    } else if (std::abs(iv.hi - c.lo) < 1e-12) {
      iv.hi = c.hi;
    } else {
      iv.hi = c.hi;
      sol.disconnected = true;
    }
    sol.revenues[static_cast<std::size_t>(c.winner)] +=
        sol.prices[static_cast<std::size_t>(c.winner)] * scn.mu.mass(c.lo, c.hi);
  }
  sol.objective = 0.0;
  for (int i = 0; i < n; ++i) {
    sol.profits[static_cast<std::size_t>(i)] = std::max(
        0.0, sol.revenues[static_cast<std::size_t>(i)] - scn.costs[static_cast<std::size_t>(i)]);
    sol.objective += sol.profits[static_cast<std::size_t>(i)];
  }
  return sol;
}

ChainSolution solve_chain_dual(const DualScenario& scn) {
  Scenario primal;
  primal.costs = scn.costs;
  primal.family = scn.family;
  primal.dist = scn.mu;
  primal.price_cap = scn.choice_cap;
  primal.solver = scn.solver;
  primal.accuracy_override = scn.menu;
  return solve_chain(primal);
}

}  // namespace pricechain
