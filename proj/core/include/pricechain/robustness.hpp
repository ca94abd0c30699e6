#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pricechain/static_pricing.hpp"

namespace pricechain {

/// Certified bracket on |dh/da| over a domain: alpha = 0.99 * min,
/// beta = 1.01 * max of the analytic derivative on the grid.
std::pair<double, double> lipschitz_estimate(const UtilityFunction& fn, double p, double lo,
                                             double hi, int grid_n);

struct LipschitzProfile {
  std::vector<double> alpha;
  std::vector<double> beta;
  bool interleaved = false;  // 0 < a_1 < b_1 < a_2 < b_2 < ...
};

LipschitzProfile lipschitz_profile(const Scenario& scn, const ChainSolution& sol,
                                   int grid_n = 201);

struct EndpointBound {
  std::optional<double> bound;  // absent: assumption violated, bound unavailable
  std::string label;            // which case formula produced it
};

struct ErrorBoundReport {
  LipschitzProfile profile;
  std::vector<EndpointBound> lower;  // per model
  std::vector<EndpointBound> upper;
  std::vector<std::optional<double>> revenue_bound;  // p_i * Lambda * (lb + ub)
  double lambda_sup = 0.0;
};

/// Deviation bounds for every allocation endpoint under per-model utility
/// misspecification |b_i - true b_i| <= eps_i, selected by each endpoint's
/// provenance and maximized over the admissible true provenances.
ErrorBoundReport endpoint_error_bounds(const Scenario& scn, const ChainSolution& sol,
                                       const std::vector<double>& eps,
                                       const LipschitzProfile& prof);

struct TrialRecord {
  int trial = 0;
  int model = 0;  // 0-based
  double lo_dev = 0.0;
  double hi_dev = 0.0;
  double rev_dev = 0.0;
};

struct PerturbationOutcome {
  std::vector<TrialRecord> records;  // one per (trial, model)
  double max_endpoint_dev = 0.0;
  double max_revenue_dev = 0.0;
  bool within_bounds = true;  // every observation <= its bound (+ grid slack)
  std::vector<double> full_shift_lower_dev;  // trial-0 lower-endpoint deviations
  ErrorBoundReport report;
  ChainSolution base;
};

/// Seeded additive-offset perturbation trials: trial 0 applies the full
/// shift +eps_i exactly; the rest draw uniformly from [-eps_i, +eps_i].
/// True buyer choices are recomputed by the grid oracle at the ORIGINAL
/// prices under the perturbed utilities.
PerturbationOutcome empirical_perturbation_test(const Scenario& scn, std::vector<double> eps,
                                                int trials, std::uint64_t seed,
                                                int oracle_grid = 20000);

}  // namespace pricechain
