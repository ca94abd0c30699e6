#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pricechain/distribution.hpp"
#include "pricechain/market.hpp"
#include "pricechain/separable.hpp"
#include "pricechain/utility.hpp"

namespace pricechain {

/// Strictly increasing map from training cost to model accuracy.
struct CostAccuracyCurve {
  enum class Kind : std::uint8_t { Table, Saturating };
  Kind kind = Kind::Table;
  std::vector<std::pair<double, double>> table;  // (cost, accuracy), both strictly increasing
  double sat_a_hi = 1.0;                         // saturating A(c) = a_hi * (1 - exp(-k c))
  double sat_k = 1.0;

  static CostAccuracyCurve from_table(std::vector<std::pair<double, double>> table);
  static CostAccuracyCurve saturating(double a_hi, double k);

  double accuracy(double cost) const;  // monotone piecewise-linear interpolation for tables
};

struct SolverConfig {
  int case_grid = 2000;        // dense-grid points per 1-D maximization
  double root_tol = 1e-10;     // |g| at accepted roots
  double price_tol = 1e-9;     // golden-section bracket width
  int oracle_grid = 100000;    // brute-force buyer grid
  int axiom_grid = 201;        // compatibility lattice
  bool separable_candidates = true;
};

struct Scenario {
  std::vector<double> costs;  // strictly increasing
  CostAccuracyCurve curve;
  UtilityFamily family;  // one member per model, ordered
  BuyerDistribution dist = BuyerDistribution::uniform(0.0, 1.0, 1.0);
  double price_cap = 1.0;
  SolverConfig solver;
  std::vector<double> accuracy_override;  // when set, used instead of curve(costs)

  int n() const { return static_cast<int>(costs.size()); }
  std::vector<double> accuracies() const;  // curve(costs), validated increasing
  void validate() const;                   // throws ConfigError
};

enum class CaseKind : std::uint8_t {
  Monopolist,             // first model / empty envelope
  FullCoverage,           // marginal buyer lands in (or below) a support gap
  BlockCoverage,          // new market starts at a block boundary A_j
  Competition,            // crossing with envelope piece j
  NoCompetitionAdjacent,  // new market starts right after the last piece
  NoCompetitionGap,       // marginal buyer beyond the envelope support
  Dominated,              // fallback: empty allocation
};

std::string case_kind_name(CaseKind kind, int ref_model = -1);

struct CaseDescriptor {
  CaseKind kind = CaseKind::Monopolist;
  double p_lo = 0.0;  // closure of the feasible price interval, clamped to [0, P]
  double p_hi = 0.0;
  bool lo_open = false;  // strictness as printed in the case constraint
  bool hi_open = false;
  int ref_piece = -1;  // envelope piece (competition/block) or gap index (coverage)
  bool feasible = true;
};

enum class EndpointKind : std::uint8_t {
  None,         // empty interval / not applicable
  Zero,         // marginal buyer: b_i(p_i, a) = 0
  Crossing,     // indifference with the neighboring model
  AccuracyCap,  // the model's own accuracy A_i
  CapStart,     // interval starts at the previous model's accuracy cap
  SupportLow,   // pinned at the bottom of the accuracy domain
};

struct EndpointInfo {
  EndpointKind kind = EndpointKind::None;
  int other = -1;  // neighbor model index for Crossing / CapStart
};

struct ModelOutcome {
  double price = 0.0;
  AllocationInterval interval;
  double rev = 0.0;
  EndpointInfo lo_info, hi_info;
  CaseKind case_kind = CaseKind::Dominated;
  int case_ref = -1;  // model index referenced by the chosen case, if any
};

struct StepTrace {
  int model = 0;  // 0-based index priced at this step
  std::vector<CaseDescriptor> descriptors;
  CaseKind chosen = CaseKind::Dominated;
  int chosen_ref = -1;
  double total_revenue = 0.0;
};

struct ChainSolution {
  std::vector<double> prices;
  MarketAllocation alloc;
  std::vector<double> revenues;
  std::vector<double> profits;  // max{r_i - c_i, 0}
  double objective = 0.0;
  std::vector<ModelOutcome> outcomes;
  std::vector<StepTrace> trace;
  EnvelopeUtility envelope;
};

/// Exact market response of the chain when the next model is offered at
/// price p against the current envelope: the new model serves (x, A_next],
/// upstream pieces at or beyond x are truncated/absorbed.
struct StepResponse {
  bool empty = true;
  double x = 0.0;
  CaseKind kind = CaseKind::Dominated;
  int ref_piece = -1;  // envelope piece index involved, -1 if none
  EndpointInfo lo_info;
  double new_revenue = 0.0;
  double total_revenue = 0.0;  // truncated upstream + new
};

StepResponse step_response(const EnvelopeUtility& env, const UtilityFunction& next, double p,
                           double A_next, const BuyerDistribution& dist, double a_floor);

/// Sum of p_j * mass(piece) over the envelope.
double envelope_revenue(const EnvelopeUtility& env, const BuyerDistribution& dist);

struct SingleResult {
  double price = 0.0;
  AllocationInterval interval;
  double rev = 0.0;
};

/// Monopolist problem for T_1: maximize p * (F(A_1) - F(a'(p))) on [0, P].
SingleResult price_single(const Scenario& scn);

/// Closed case taxonomy for pricing the next model against the
/// envelope; constraint intervals inverted to price bounds. Structurally
/// empty cases are omitted; cap-infeasible ones carry feasible = false.
std::vector<CaseDescriptor> enumerate_cases(const EnvelopeUtility& env, const UtilityFunction& next,
                                            double A_next, double P);

struct CaseOptimum {
  bool feasible = false;
  double price = 0.0;
  double objective = 0.0;  // case equation value, incl. retained upstream revenue
};

CaseOptimum optimize_case(const CaseDescriptor& cd, const EnvelopeUtility& env,
                          const UtilityFunction& next, double A_next,
                          const BuyerDistribution& dist, double P, const SolverConfig& cfg);

/// Prices model `next_index` (0-based), keeping earlier prices fixed;
/// rebuilds allocations, revenues, and the envelope.
void price_next(ChainSolution& state, const Scenario& scn, int next_index);

ChainSolution solve_chain(const Scenario& scn);

/// Solves only the first `upto` models (envelope and trace reflect that
/// prefix); upto = n reproduces solve_chain.
ChainSolution solve_chain_prefix(const Scenario& scn, int upto);

/// Brute-force outer search over strictly increasing n-tuples from the grid.
ChainSolution optimize_costs(const Scenario& base, const std::vector<double>& cost_grid, int n,
                             std::vector<double>* best_costs = nullptr);

/// Samples r_{next}(p) (revenue of the model being priced) on [0, P] with
/// the given step, after solving the chain through next_index - 1.
std::vector<std::pair<double, double>> revenue_curve(const Scenario& scn, int next_index,
                                                     double step);

}  // namespace pricechain
