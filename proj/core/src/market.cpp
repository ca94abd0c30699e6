#include "pricechain/market.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pricechain {

namespace {
constexpr double kJumpTol = 1e-9;
}

void MarketAllocation::validate(const std::vector<double>& accuracies) const {
  if (intervals.size() != accuracies.size())
    throw ConfigError("allocation: interval count does not match model count");
  double prev_hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const auto& iv = intervals[i];
    if (iv.empty) continue;
    if (!(iv.lo < iv.hi)) throw ConfigError("allocation: non-empty interval with lo >= hi");
    if (iv.lo < prev_hi - kJumpTol)
      throw ConfigError("allocation: intervals overlap or are out of model order");
    if (iv.hi > accuracies[i] + kJumpTol)
      throw ConfigError("allocation: interval extends past the model's accuracy cap");
    prev_hi = iv.hi;
  }
}

double EnvelopeUtility::value(double a) const {
  for (const auto& piece : pieces) {
    if (a > piece.lo && a <= piece.hi) return piece.fn.value(piece.price, a);
  }
  return 0.0;
}

EnvelopeUtility build_envelope(const MarketAllocation& alloc, const std::vector<double>& prices,
                               const UtilityFamily& fam, const std::vector<double>& accuracies) {
  alloc.validate(accuracies);
  if (prices.size() != alloc.intervals.size())
    throw ConfigError("build_envelope: price count does not match model count");
  EnvelopeUtility env;
  for (std::size_t i = 0; i < alloc.intervals.size(); ++i) {
    const auto& iv = alloc.intervals[i];
    if (iv.empty) continue;
    env.pieces.push_back({iv.lo, iv.hi, static_cast<int>(i), prices[i],
                          fam.members[i]});
  }
  return env;
}

std::vector<Block> extract_blocks(const EnvelopeUtility& env) {
  std::vector<Block> blocks;
  for (std::size_t k = 0; k < env.pieces.size(); ++k) {
    const auto& piece = env.pieces[k];
    bool start_new = blocks.empty();
    if (!start_new) {
      const auto& prev = env.pieces[k - 1];
      if (piece.lo > prev.hi + kJumpTol) {
        start_new = true;  // gap in the support
      } else {
        double left = prev.fn.value(prev.price, prev.hi);
        double right = piece.fn.value(piece.price, piece.lo);
        if (left > right + kJumpTol) start_new = true;  // downward discontinuity
      }
    }
    if (start_new) blocks.push_back({piece.lo, piece.hi, {}});
    blocks.back().hi = piece.hi;
    blocks.back().piece_indices.push_back(static_cast<int>(k));
  }
  return blocks;
}

OracleAllocation oracle_allocate(const std::vector<double>& prices, const UtilityFamily& fam,
                                 const std::vector<double>& accuracies,
                                 const BuyerDistribution& dist, int grid_n) {
  if (grid_n < 100) throw std::domain_error("oracle_allocate: grid_n must be >= 100");
  const int n = fam.size();
  if (static_cast<int>(prices.size()) != n || static_cast<int>(accuracies.size()) != n)
    throw ConfigError("oracle_allocate: prices/accuracies size mismatch");
  OracleAllocation out;
  out.sets.assign(static_cast<std::size_t>(n), {});
  out.revenues.assign(static_cast<std::size_t>(n), 0.0);
  const double lo = dist.lo();
  const double hi = dist.hi();
  const double dx = (hi - lo) / grid_n;
  out.grid_spacing = dx;
  std::vector<int> winner(static_cast<std::size_t>(grid_n), -1);
  for (int k = 0; k < grid_n; ++k) {
    const double a = lo + (k + 0.5) * dx;  // cell midpoint
    const double cell_mass = dist.mass(lo + k * dx, lo + (k + 1) * dx);
    int best = -1;
    double best_v = 0.0;
    for (int i = 0; i < n; ++i) {
      if (accuracies[static_cast<std::size_t>(i)] < a) continue;
      double v = fam.members[static_cast<std::size_t>(i)].value(
          prices[static_cast<std::size_t>(i)], a);
      if (v < 0.0) continue;
      if (best < 0 || v >= best_v) {  // >= breaks ties toward the higher index
        best = i;
        best_v = v;
      }
    }
    winner[static_cast<std::size_t>(k)] = best;
    if (best >= 0) {
      auto& s = out.sets[static_cast<std::size_t>(best)];
      if (s.first < 0) {
        s.first = k;
        s.a_first = a;
      }
      s.last = k;
      s.a_last = a;
      out.revenues[static_cast<std::size_t>(best)] +=
          prices[static_cast<std::size_t>(best)] * cell_mass;
    }
  }
  for (int i = 0; i < n; ++i) {
    auto& s = out.sets[static_cast<std::size_t>(i)];
    if (s.first < 0) continue;
    for (int k = s.first; k <= s.last; ++k) {
      if (winner[static_cast<std::size_t>(k)] != i) ++s.gap_cells;
    }
  }
  return out;
}

std::vector<double> revenue(const MarketAllocation& alloc, const std::vector<double>& prices,
                            const BuyerDistribution& dist) {
  std::vector<double> out(alloc.intervals.size(), 0.0);
  for (std::size_t i = 0; i < alloc.intervals.size(); ++i) {
    const auto& iv = alloc.intervals[i];
    if (iv.empty) continue;
    out[i] = prices[i] * dist.mass(iv.lo, iv.hi);
  }
  return out;
}

namespace {

// Roots of g on [lo, hi] found by a dense scan plus bisection.
void append_roots(const std::function<double(double)>& g, double lo, double hi,
                  std::vector<double>& out) {
  constexpr int kScan = 256;
  double prev_a = lo;
  double prev_v = g(lo);
  for (int k = 1; k <= kScan; ++k) {
    double a = lo + (hi - lo) * k / kScan;
    double v = g(a);
    if (prev_v == 0.0) {
      out.push_back(prev_a);
    } else if ((prev_v < 0.0) != (v < 0.0)) {
      out.push_back(detail::bisect(g, prev_a, a, kRootValueTol, kRootArgTol));
    }
    prev_a = a;
    prev_v = v;
  }
  if (prev_v == 0.0) out.push_back(prev_a);
}

}  // namespace

std::vector<WinnerCell> winner_partition(const std::vector<double>& prices,
                                         const UtilityFamily& fam,
                                         const std::vector<double>& accuracies, double a_lo,
                                         double a_hi) {
  const int n = fam.size();
  std::vector<double> pts{a_lo, a_hi};
  for (int i = 0; i < n; ++i) {
    double A = accuracies[static_cast<std::size_t>(i)];
    if (A > a_lo && A < a_hi) pts.push_back(A);
    const auto& f = fam.members[static_cast<std::size_t>(i)];
    double p = prices[static_cast<std::size_t>(i)];
    append_roots([&](double a) { return f.value(p, a); }, a_lo, a_hi, pts);
    for (int j = i + 1; j < n; ++j) {
      const auto& fj = fam.members[static_cast<std::size_t>(j)];
      double pj = prices[static_cast<std::size_t>(j)];
      append_roots([&](double a) { return f.value(p, a) - fj.value(pj, a); }, a_lo, a_hi, pts);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double x, double y) { return std::abs(x - y) < 1e-13; }),
            pts.end());
  std::vector<WinnerCell> cells;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    double lo = pts[k], hi = pts[k + 1];
    if (hi - lo <= 1e-13) continue;
    double mid = 0.5 * (lo + hi);
    int best = -1;
    double best_v = 0.0;
    for (int i = 0; i < n; ++i) {
      if (accuracies[static_cast<std::size_t>(i)] < mid) continue;
      double v = fam.members[static_cast<std::size_t>(i)].value(
          prices[static_cast<std::size_t>(i)], mid);
      if (v < 0.0) continue;
      if (best < 0 || v >= best_v) {
        best = i;
        best_v = v;
      }
    }
    if (!cells.empty() && cells.back().winner == best) {
      cells.back().hi = hi;
    } else {
      cells.push_back({lo, hi, best});
    }
  }
  return cells;
}

std::vector<double> partition_revenue(const std::vector<WinnerCell>& cells,
                                      const std::vector<double>& prices,
                                      const BuyerDistribution& dist) {
  std::vector<double> out(prices.size(), 0.0);
  for (const auto& cell : cells) {
    if (cell.winner < 0) continue;
    out[static_cast<std::size_t>(cell.winner)] +=
        prices[static_cast<std::size_t>(cell.winner)] * dist.mass(cell.lo, cell.hi);
  }
  return out;
}

}  // namespace pricechain
