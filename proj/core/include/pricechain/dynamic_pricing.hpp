#pragma once

#include <optional>
#include <vector>

#include "pricechain/static_pricing.hpp"

namespace pricechain {

/// One model's optimal reply when every other price is fixed.
struct BestResponseResult {
  double price = 0.0;
  double rev = 0.0;
  bool compete_left = false;   // shares a crossing boundary with T_{i-1}
  bool compete_right = false;  // shares a crossing boundary with T_{i+1}
  bool nonadjacent_binding = false;  // a non-neighbor model bounds the market
  std::vector<std::pair<double, double>> curve;  // sampled r_i(p) on [0, P]
};

/// Exact own revenue of model i at price p with opponents fixed.
double own_revenue(int i, double p, const std::vector<double>& prices, const Scenario& scn);

BestResponseResult best_response(int i, const std::vector<double>& prices, const Scenario& scn,
                                 bool sample_curve = false);

struct EquilibriumResult {
  std::optional<std::vector<double>> prices;
  int iterations = 0;
  std::vector<double> gaps;  // per-model best-response revenue gap at exit
  std::vector<std::vector<double>> trace;  // price vector per iteration
};

/// Synchronous iterated best response with 0.5 damping when a period-2
/// oscillation is detected; converged results are re-verified. Absence
/// after max_iter is not a claim of non-existence.
EquilibriumResult find_equilibrium(const Scenario& scn, std::vector<double> init, int max_iter,
                                   double tol);

struct VerifyResult {
  bool ok = false;
  std::vector<double> gaps;  // max_p r_i(p) - r_i(p_i), per model
};

VerifyResult verify_equilibrium(const std::vector<double>& prices, const Scenario& scn,
                                double tol);

}  // namespace pricechain
