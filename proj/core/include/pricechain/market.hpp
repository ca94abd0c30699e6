#pragma once

#include <optional>
#include <vector>

#include "pricechain/distribution.hpp"
#include "pricechain/utility.hpp"

namespace pricechain {

/// Per-model half-open buyer interval (lo, hi]; empty when !has_value.
struct AllocationInterval {
  bool empty = true;
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return empty ? 0.0 : hi - lo; }
};

/// Market allocation (a_{i,-}, a_{i,+}] per model, ordered by model index.
struct MarketAllocation {
  std::vector<AllocationInterval> intervals;

  /// Checks disjointness, index ordering, and a_{i,+} <= A_i.
  /// Throws ConfigError on violation.
  void validate(const std::vector<double>& accuracies) const;
};

struct EnvelopePiece {
  double lo = 0.0;  // excluded
  double hi = 0.0;  // included
  int model = -1;
  double price = 0.0;
  UtilityFunction fn;
};

/// Piecewise utility of the model currently winning each buyer; 0 off-support.
struct EnvelopeUtility {
  std::vector<EnvelopePiece> pieces;  // ordered, disjoint

  double value(double a) const;  // 0 outside all pieces
  bool empty() const { return pieces.empty(); }
  double support_lo() const { return pieces.empty() ? 0.0 : pieces.front().lo; }
  double support_hi() const { return pieces.empty() ? 0.0 : pieces.back().hi; }
};

/// Maximal support interval of the envelope ending at a downward
/// discontinuity or at the support's right end.
struct Block {
  double lo = 0.0;  // excluded from the support
  double hi = 0.0;
  std::vector<int> piece_indices;
};

/// Envelope whose pieces mirror the non-empty allocation intervals.
/// Throws ConfigError if the allocation violates its invariants.
EnvelopeUtility build_envelope(const MarketAllocation& alloc, const std::vector<double>& prices,
                               const UtilityFamily& fam, const std::vector<double>& accuracies);

/// Partition of the envelope support into blocks. Boundaries appear at gaps
/// between pieces and at interior downward discontinuities.
std::vector<Block> extract_blocks(const EnvelopeUtility& env);

/// Empirical buyer sets from a brute-force grid: contiguous index ranges
/// (empty when first > last), the grid accuracies they span, any interior
/// gaps (connectivity diagnostics), and Riemann-sum revenues.
struct OracleAllocation {
  struct ModelSet {
    int first = -1;  // grid indices; first > last means empty
    int last = -2;
    double a_first = 0.0;
    double a_last = 0.0;
    int gap_cells = 0;  // grid points inside [first,last] won by someone else
  };
  std::vector<ModelSet> sets;
  std::vector<double> revenues;
  double grid_spacing = 0.0;
};

/// Buyer rule on a grid_n-point accuracy grid: each buyer picks
/// argmax_i b_i(p_i, a) among models with b_i >= 0 and A_i >= a; ties go to
/// the higher index. Cell mass is the exact CDF increment around each point.
OracleAllocation oracle_allocate(const std::vector<double>& prices, const UtilityFamily& fam,
                                 const std::vector<double>& accuracies,
                                 const BuyerDistribution& dist, int grid_n);

/// r_i = p_i * mass(dist, a_{i,-}, a_{i,+}); 0 for empty intervals.
std::vector<double> revenue(const MarketAllocation& alloc, const std::vector<double>& prices,
                            const BuyerDistribution& dist);

/// Exact buyer-choice partition of [a_lo, a_hi]: breakpoint-driven cells on
/// which the winning model (or none, -1) is constant. Used by the dynamic
/// best response and as a cross-check against the grid oracle.
struct WinnerCell {
  double lo = 0.0;
  double hi = 0.0;
  int winner = -1;  // -1: no model serves this cell
};
std::vector<WinnerCell> winner_partition(const std::vector<double>& prices,
                                         const UtilityFamily& fam,
                                         const std::vector<double>& accuracies, double a_lo,
                                         double a_hi);

/// Exact per-model revenue implied by winner_partition.
std::vector<double> partition_revenue(const std::vector<WinnerCell>& cells,
                                      const std::vector<double>& prices,
                                      const BuyerDistribution& dist);

}  // namespace pricechain
