#pragma once

#include <optional>
#include <vector>

#include "pricechain/static_pricing.hpp"

namespace pricechain {

/// Separable utility over (p: model price, p_bar: buyer's maximum
/// permissible price): b(p, p_bar) = -phi*g(p) + c1*p_bar + c2*p_bar^2 + d.
/// The p_bar coefficients are signed so the family can express both
/// orientations appearing in the quasi-dual setting.
struct QuasiDualUtility {
  PriceForm price_form = PriceForm::Linear;
  double phi = 1.0;  // > 0
  double pbar_lin = 0.0;
  double pbar_quad = 0.0;
  double offset = 0.0;

  double price_term(double p) const;
  double pbar_term(double pbar) const { return pbar_lin * pbar + pbar_quad * pbar * pbar; }
  double value(double p, double pbar) const { return price_term(p) + pbar_term(pbar) + offset; }
  void validate() const;
};

struct QuasiDualFamily {
  std::vector<QuasiDualUtility> members;  // ordered by model index
  double pbar_lo = 0.0;
  double pbar_hi = 1.0;
  double price_cap = 1.0;

  int size() const { return static_cast<int>(members.size()); }
};

/// Second-type compatibility: for i < j and sampled (p, p') pairs,
/// B_ij(p_bar) = b_i(p, p_bar) - b_j(p', p_bar) restricted to the joint
/// availability/nonnegativity domain has at most one sign change, + to -.
CompatibilityReport check_second_type_compatibility(const QuasiDualFamily& fam, int grid_n = 201);

/// Buyer-choice partition of [pbar_lo, pbar_hi]: a buyer with cap p_bar may
/// buy model i only when p_i <= p_bar and b_i(p_i, p_bar) >= 0; ties go to
/// the higher index. Intervals are [lo, hi) in p_bar-space.
std::vector<WinnerCell> qd_winner_partition(const std::vector<double>& prices,
                                            const QuasiDualFamily& fam);

/// Grid oracle over p_bar (mirror of oracle_allocate); returns per-model
/// Riemann revenues.
std::vector<double> qd_oracle_revenues(const std::vector<double>& prices,
                                       const QuasiDualFamily& fam, const BuyerDistribution& mu,
                                       int grid_n);

struct QDInterval {
  bool empty = true;
  double lo = 0.0;  // included
  double hi = 0.0;  // excluded
};

struct QDSolution {
  std::vector<double> prices;
  std::vector<QDInterval> intervals;
  std::vector<double> revenues;
  std::vector<double> profits;
  double objective = 0.0;
  bool disconnected = false;  // diagnostic: some model served a split market
  std::vector<std::string> notes;
};

struct QDScenario {
  std::vector<double> costs;  // strictly increasing; carries the accuracy order
  QuasiDualFamily family;
  BuyerDistribution mu =
      BuyerDistribution::uniform(0.0, 1.0, 1.0);  // buyers' max permissible prices
  double price_cap = 1.0;
  SolverConfig solver;

  int n() const { return static_cast<int>(costs.size()); }
  void validate() const;
};

struct QDSingleResult {
  double price = 0.0;
  QDInterval interval;
  double rev = 0.0;
};

/// Monopolist quasi-dual problem: maximize p * mu-mass of
/// { p_bar >= p : b_1(p, p_bar) >= 0 }.
QDSingleResult qd_price_single(const QDScenario& scn);

QDSolution solve_chain_qd(const QDScenario& scn);

/// Dual mode: the primal engine with (accuracy, price) roles interchanged.
/// `menu` plays the per-model cap (what A_i is in the primal), `mu` is the
/// buyer distribution over max prices, `choice_cap` bounds the optimized
/// variable.
struct DualScenario {
  std::vector<double> costs;
  std::vector<double> menu;  // strictly increasing caps, one per model
  UtilityFamily family;      // b_i(choice, buyer-position), same grammar
  BuyerDistribution mu = BuyerDistribution::uniform(0.0, 1.0, 1.0);
  double choice_cap = 1.0;
  SolverConfig solver;
};

ChainSolution solve_chain_dual(const DualScenario& scn);

}  // namespace pricechain
