#pragma once

#include <utility>
#include <vector>

namespace pricechain {

/// Buyer density lambda(a) with a closed-form CDF. total mass need not be 1:
/// it is a market-mass weight. The same type represents mu over buyers'
/// maximum permissible prices in the dual / quasi-dual settings.
class BuyerDistribution {
 public:
  enum class Kind { Uniform, PiecewiseLinear, TruncatedNormal };

  static BuyerDistribution uniform(double lo, double hi, double mass);
  /// knots: (position, raw density) pairs spanning [lo, hi]; the raw shape
  /// is scaled so the total integral equals mass.
  static BuyerDistribution piecewise_linear(std::vector<std::pair<double, double>> knots,
                                            double mass);
  static BuyerDistribution truncated_normal(double lo, double hi, double mean, double sigma,
                                            double mass);

  Kind kind() const { return kind_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double total_mass() const { return mass_; }

  double density(double a) const;  // 0 outside the support
  double cdf(double a) const;      // 0 at lo, total_mass at hi, clamped
  /// F(hi) - F(lo), clamped to the support; throws std::domain_error when lo > hi.
  double mass(double lo, double hi) const;
  double sup_density() const;

  // shape parameters for serialization (knots are post-scaling)
  const std::vector<std::pair<double, double>>& knots() const { return knots_; }
  double mean() const { return mean_; }
  double sigma() const { return sigma_; }

 private:
  BuyerDistribution() = default;

  Kind kind_ = Kind::Uniform;
  double lo_ = 0.0;
  double hi_ = 1.0;
  double mass_ = 1.0;
  // piecewise-linear state
  std::vector<std::pair<double, double>> knots_;  // scaled densities
  std::vector<double> knot_cdf_;
  // truncated-normal state
  double mean_ = 0.0;
  double sigma_ = 1.0;
  double z_lo_cdf_ = 0.0;
  double z_span_ = 1.0;
};

}  // namespace pricechain
