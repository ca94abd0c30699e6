#pragma once

#include <optional>
#include <vector>

#include "pricechain/distribution.hpp"
#include "pricechain/utility.hpp"

namespace pricechain {

/// b(p, a) = f(p) + h(a) with the constant offset folded into f.
struct SeparableParts {
  UtilityFunction fn;

  double f(double p) const { return fn.price_term(p) + fn.offset; }
  double h(double a) const { return fn.accuracy_term(a); }
  double df(double p) const { return fn.d_dp(p); }
  double dh(double a) const { return fn.d_da(a); }

  static SeparableParts from(const UtilityFunction& u) { return {u}; }
};

enum class CandidateKind : std::uint8_t { Single, Competition };

struct StationaryCandidate {
  double price = 0.0;
  CandidateKind kind = CandidateKind::Single;
  double residual = 0.0;  // |FOC value| at the root
};

/// Marginal buyer a'(p) = h^{-1}(-f(p)); absent when -f(p) is outside the
/// range of h on [a_lo, a_hi].
std::optional<double> marginal_buyer(const SeparableParts& parts, double p, double a_lo,
                                     double a_hi);

/// Interior roots of d/dp [ p * (F(A) - F(a'(p))) ] = 0 on [0, price_cap],
/// found by a 500-interval sign scan plus bisection; da'/dp analytic.
std::vector<StationaryCandidate> stationary_single(const SeparableParts& parts, double A,
                                                   const BuyerDistribution& dist,
                                                   double price_cap);

/// Interior roots of d/dp [ (p - p_j) * (F(A) - F(a*(p))) ] = 0 where
/// a*(p) = (h_i - h_j)^{-1}(f_j(p_j) - f_i(p)). Throws ConfigError when
/// h_i - h_j is not strictly monotone on [a_lo, a_hi].
std::vector<StationaryCandidate> stationary_competition(const SeparableParts& parts_i,
                                                        const SeparableParts& parts_j, double p_j,
                                                        double A, const BuyerDistribution& dist,
                                                        double price_cap);

/// a*(p): accuracy where b_i(p, .) meets b_j(p_j, .); absent when the level
/// f_j(p_j) - f_i(p) is outside the range of h_i - h_j on [a_lo, a_hi].
std::optional<double> indifference_accuracy(const SeparableParts& parts_i,
                                            const SeparableParts& parts_j, double p, double p_j,
                                            double a_lo, double a_hi);

}  // namespace pricechain
