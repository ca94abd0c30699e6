#include "pricechain/dynamic_pricing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pricechain {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTieTol = 1e-12;

// Opponent field: piecewise "best opponent" over accuracy, fixed while one
// model varies its own price. Computed once per best response.
using OpponentField = std::vector<WinnerCell>;  // winner = opponent index or -1

OpponentField opponent_field(int i, const std::vector<double>& prices, const Scenario& scn) {
  const int n = scn.n();
  UtilityFamily sub;
  sub.a_lo = scn.family.a_lo;
  sub.a_hi = scn.family.a_hi;
  sub.price_cap = scn.family.price_cap;
  std::vector<double> sub_prices, sub_acc;
  std::vector<int> back;  // sub index -> original index
  const auto accs = scn.accuracies();
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    sub.members.push_back(scn.family.members[static_cast<std::size_t>(j)]);
    sub_prices.push_back(prices[static_cast<std::size_t>(j)]);
    sub_acc.push_back(accs[static_cast<std::size_t>(j)]);
    back.push_back(j);
  }
  if (sub.members.empty()) return {{scn.family.a_lo, scn.family.a_hi, -1}};
  OpponentField field =
      winner_partition(sub_prices, sub, sub_acc, scn.family.a_lo, scn.family.a_hi);
  for (auto& cell : field)
    if (cell.winner >= 0) cell.winner = back[static_cast<std::size_t>(cell.winner)];
  return field;
}

// Winning sub-intervals of model i inside the field at price p. Each cell
// contributes at most one sub-interval (single crossing per opponent pair).
struct WinSpan {
  double lo, hi;
  int left_neighbor;   // opponent owning the buyer just below, -1 if none
  bool left_crossing;  // lower edge is an indifference point
};

std::vector<WinSpan> win_spans(int i, double p, const OpponentField& field, const Scenario& scn,
                               double A_i, const std::vector<double>& prices) {
  const auto& fn = scn.family.members[static_cast<std::size_t>(i)];
  SeparableParts parts{fn};
  const double ap = fn.accuracy_term_inverse(-parts.f(p));  // -inf when always affordable
  std::vector<WinSpan> spans;
  for (const auto& cell : field) {
    double lo = cell.lo;
    double hi = std::min(cell.hi, A_i);
    if (hi <= lo) continue;
    bool lo_is_zero = false;
    if (std::isfinite(ap)) {
      if (ap >= hi) continue;
      if (ap > lo) {
        lo = ap;
        lo_is_zero = true;
      }
    }
    if (cell.winner < 0) {
      spans.push_back({lo, hi, -1, false});
      continue;
    }
    const int j = cell.winner;
    const auto& ofn = scn.family.members[static_cast<std::size_t>(j)];
    const double pj = prices[static_cast<std::size_t>(j)];
    auto g = [&](double a) { return fn.value(p, a) - ofn.value(pj, a); };
    // ties go to the higher model index
    auto wins = [&](double v) { return i > j ? v >= 0.0 : v > 0.0; };
    double glo = g(lo);
    double ghi = g(hi);
    if (wins(glo) && wins(ghi)) {
      spans.push_back({lo, hi, lo_is_zero ? -1 : -2, false});  // -2: continues from cell edge
    } else if (!wins(glo) && !wins(ghi)) {
      // loses the whole cell (single crossing: no interior win pocket)
    } else if ((glo < 0.0) != (ghi < 0.0)) {
      double r = detail::bisect(g, lo, hi, kRootValueTol, kRootArgTol);
      if (wins(ghi)) {
        spans.push_back({r, hi, j, true});
      } else {
        spans.push_back({lo, r, lo_is_zero ? -1 : -2, false});
      }
    } else if (wins(ghi)) {
      spans.push_back({lo, hi, lo_is_zero ? -1 : -2, false});
    }
  }
  // merge touching spans
  std::vector<WinSpan> merged;
  for (const auto& s : spans) {
    if (!merged.empty() && s.lo <= merged.back().hi + kBoundaryPad) {
      merged.back().hi = s.hi;
    } else {
      merged.push_back(s);
    }
  }
  return merged;
}

}  // namespace

double own_revenue(int i, double p, const std::vector<double>& prices, const Scenario& scn) {
  const double A_i = scn.accuracies()[static_cast<std::size_t>(i)];
  auto field = opponent_field(i, prices, scn);
  double mass = 0.0;
  for (const auto& s : win_spans(i, p, field, scn, A_i, prices)) mass += scn.dist.mass(s.lo, s.hi);
  return p * mass;
}

BestResponseResult best_response(int i, const std::vector<double>& prices, const Scenario& scn,
                                 bool sample_curve) {
  const auto accs = scn.accuracies();
  const double A_i = accs[static_cast<std::size_t>(i)];
  const double P = scn.price_cap;
  const auto field = opponent_field(i, prices, scn);
  const auto& fn = scn.family.members[static_cast<std::size_t>(i)];
  SeparableParts parts{fn};

  auto rev = [&](double p) {
    double mass = 0.0;
    for (const auto& s : win_spans(i, p, field, scn, A_i, prices))
      mass += scn.dist.mass(s.lo, s.hi);
    return p * mass;
  };

  // warm-start candidates: stationary points and boundary-matching prices
  std::vector<double> extra{0.0, P, prices[static_cast<std::size_t>(i)]};
  if (scn.solver.separable_candidates) {
    for (const auto& c : stationary_single(parts, A_i, scn.dist, P)) extra.push_back(c.price);
    for (int j : {i - 1, i + 1}) {
      if (j < 0 || j >= scn.n()) continue;
      SeparableParts pj{scn.family.members[static_cast<std::size_t>(j)]};
      try {
        for (const auto& c : stationary_competition(parts, pj, prices[static_cast<std::size_t>(j)],
                                                    A_i, scn.dist, P))
          extra.push_back(c.price);
      } catch (const ConfigError&) {
      }
    }
  }
  for (int j = 0; j < scn.n(); ++j) {
    if (j == i) continue;
    // price making model i indifferent with model j at each accuracy anchor
    for (double a : {accs[static_cast<std::size_t>(j)], A_i}) {
      if (a > scn.family.a_hi || a < scn.family.a_lo) continue;
      double target = scn.family.members[static_cast<std::size_t>(j)].value(
                          prices[static_cast<std::size_t>(j)], a) -
                      fn.accuracy_term(a) - fn.offset;
      if (target <= 0.0) extra.push_back(fn.price_term_inverse(target));
    }
  }

  // grid + refine, ties broken toward the larger price
  BestResponseResult out;
  double best_v = -kInf, best_x = 0.0;
  const int grid_n = std::max(scn.solver.case_grid, 2);
  for (int k = 0; k <= grid_n; ++k) {
    double x = P * k / grid_n;
    double v = rev(x);
    if (sample_curve) out.curve.emplace_back(x, v);
    if (v > best_v + kTieTol || (v >= best_v - kTieTol && x > best_x)) {
      best_v = v;
      best_x = x;
    }
  }
  const double dx = P / grid_n;
  auto [xr, vr] = detail::golden_max(rev, std::max(0.0, best_x - dx), std::min(P, best_x + dx),
                                     scn.solver.price_tol);
  if (vr > best_v + kTieTol) {
    best_v = vr;
    best_x = xr;
  }
  for (double c : extra) {
    if (c < 0.0 || c > P) continue;
    double v = rev(c);
    if (v > best_v + kTieTol || (v >= best_v - kTieTol && c > best_x)) {
      best_v = v;
      best_x = c;
    }
  }
  out.price = best_x;
  out.rev = rev(best_x);

  // classify the branch and neighbor binding at the optimum
  for (const auto& s : win_spans(i, best_x, field, scn, A_i, prices)) {
    if (s.left_crossing && s.left_neighbor >= 0) {
      if (s.left_neighbor == i - 1) out.compete_left = true;
      else if (s.left_neighbor == i + 1) out.compete_right = true;
      else out.nonadjacent_binding = true;
    }
  }
  return out;
}

EquilibriumResult find_equilibrium(const Scenario& scn, std::vector<double> init, int max_iter,
                                   double tol) {
  if (max_iter < 1) throw ConfigError("find_equilibrium: max_iter must be >= 1");
  if (!(tol > 0.0)) throw ConfigError("find_equilibrium: tol must be > 0");
  const int n = scn.n();
  if (static_cast<int>(init.size()) != n)
    throw ConfigError("find_equilibrium: init size does not match model count");
  EquilibriumResult out;
  std::vector<double> cur = std::move(init);
  std::vector<double> prev_prev;
  out.trace.push_back(cur);
  for (int it = 0; it < max_iter; ++it) {
    std::vector<double> next(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) next[static_cast<std::size_t>(i)] = best_response(i, cur, scn).price;
    double delta = 0.0;
    for (int i = 0; i < n; ++i)
      delta = std::max(delta, std::abs(next[static_cast<std::size_t>(i)] -
                                       cur[static_cast<std::size_t>(i)]));
    if (!prev_prev.empty() && delta >= tol) {
      double back_delta = 0.0;
      for (int i = 0; i < n; ++i)
        back_delta = std::max(back_delta, std::abs(next[static_cast<std::size_t>(i)] -
                                                   prev_prev[static_cast<std::size_t>(i)]));
      if (back_delta < tol) {
        // period-2 oscillation: damp the update
        for (int i = 0; i < n; ++i)
          next[static_cast<std::size_t>(i)] =
              0.5 * (next[static_cast<std::size_t>(i)] + cur[static_cast<std::size_t>(i)]);
      }
    }
    prev_prev = cur;
    cur = next;
    out.trace.push_back(cur);
    out.iterations = it + 1;
    if (delta < tol) {
      VerifyResult vr = verify_equilibrium(cur, scn, std::max(tol, 1e-6));
      out.gaps = vr.gaps;
      if (vr.ok) out.prices = cur;
      return out;
    }
  }
  VerifyResult vr = verify_equilibrium(cur, scn, std::max(tol, 1e-6));
  out.gaps = vr.gaps;
  return out;
}

VerifyResult verify_equilibrium(const std::vector<double>& prices, const Scenario& scn,
                                double tol) {
  VerifyResult out;
  out.ok = true;
  for (int i = 0; i < scn.n(); ++i) {
    BestResponseResult br = best_response(i, prices, scn);
    double cur = own_revenue(i, prices[static_cast<std::size_t>(i)], prices, scn);
    double gap = std::max(0.0, br.rev - cur);
    out.gaps.push_back(gap);
    if (gap > tol) out.ok = false;
  }
  return out;
}

}  // namespace pricechain
