#include "pricechain/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pricechain {

namespace {
double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }
}  // namespace

BuyerDistribution BuyerDistribution::uniform(double lo, double hi, double mass) {
  if (!(lo < hi)) throw std::domain_error("uniform: lo must be < hi");
  if (!(mass > 0.0)) throw std::domain_error("uniform: mass must be > 0");
  BuyerDistribution d;
  d.kind_ = Kind::Uniform;
  d.lo_ = lo;
  d.hi_ = hi;
  d.mass_ = mass;
  return d;
}

BuyerDistribution BuyerDistribution::piecewise_linear(
    std::vector<std::pair<double, double>> knots, double mass) {
  if (knots.size() < 2) throw std::domain_error("piecewise_linear: need at least 2 knots");
  if (!(mass > 0.0)) throw std::domain_error("piecewise_linear: mass must be > 0");
  for (std::size_t k = 0; k < knots.size(); ++k) {
    if (knots[k].second < 0.0) throw std::domain_error("piecewise_linear: negative density knot");
    if (k > 0 && !(knots[k].first > knots[k - 1].first))
      throw std::domain_error("piecewise_linear: knot positions must be strictly increasing");
  }
  // exact trapezoid integral of the raw shape
  double raw = 0.0;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    raw += 0.5 * (knots[k].second + knots[k + 1].second) * (knots[k + 1].first - knots[k].first);
  }
  if (!(raw > 0.0)) throw std::domain_error("piecewise_linear: density integrates to zero");
  const double scale = mass / raw;
  BuyerDistribution d;
  d.kind_ = Kind::PiecewiseLinear;
  d.lo_ = knots.front().first;
  d.hi_ = knots.back().first;
  d.mass_ = mass;
  d.knots_ = std::move(knots);
  for (auto& kn : d.knots_) kn.second *= scale;
  d.knot_cdf_.assign(d.knots_.size(), 0.0);
  for (std::size_t k = 0; k + 1 < d.knots_.size(); ++k) {
    d.knot_cdf_[k + 1] =
        d.knot_cdf_[k] + 0.5 * (d.knots_[k].second + d.knots_[k + 1].second) *
                             (d.knots_[k + 1].first - d.knots_[k].first);
  }
  d.knot_cdf_.back() = mass;  // absorb rounding so F(hi) is exact
  return d;
}

BuyerDistribution BuyerDistribution::truncated_normal(double lo, double hi, double mean,
                                                      double sigma, double mass) {
  if (!(lo < hi)) throw std::domain_error("truncated_normal: lo must be < hi");
  if (!(sigma > 0.0)) throw std::domain_error("truncated_normal: sigma must be > 0");
  if (!(mass > 0.0)) throw std::domain_error("truncated_normal: mass must be > 0");
  BuyerDistribution d;
  d.kind_ = Kind::TruncatedNormal;
  d.lo_ = lo;
  d.hi_ = hi;
  d.mass_ = mass;
  d.mean_ = mean;
  d.sigma_ = sigma;
  d.z_lo_cdf_ = normal_cdf((lo - mean) / sigma);
  d.z_span_ = normal_cdf((hi - mean) / sigma) - d.z_lo_cdf_;
  if (!(d.z_span_ > 0.0))
    throw std::domain_error("truncated_normal: support carries no probability mass");
  return d;
}

double BuyerDistribution::density(double a) const {
  if (a < lo_ || a > hi_) return 0.0;
  switch (kind_) {
    case Kind::Uniform:
      return mass_ / (hi_ - lo_);
    case Kind::PiecewiseLinear: {
      auto it = std::upper_bound(knots_.begin(), knots_.end(), a,
                                 [](double x, const auto& kn) { return x < kn.first; });
      if (it == knots_.begin()) return knots_.front().second;
      if (it == knots_.end()) return knots_.back().second;
      const auto& r = *it;
      const auto& l = *(it - 1);
      double t = (a - l.first) / (r.first - l.first);
      return l.second + t * (r.second - l.second);
    }
    case Kind::TruncatedNormal: {
      double z = (a - mean_) / sigma_;
      double pdf = std::exp(-0.5 * z * z) / (sigma_ * std::sqrt(2.0 * M_PI));
      return mass_ * pdf / z_span_;
    }
  }
  return 0.0;
}

double BuyerDistribution::cdf(double a) const {
  if (a <= lo_) return 0.0;
  if (a >= hi_) return mass_;
  switch (kind_) {
    case Kind::Uniform:
      return mass_ * (a - lo_) / (hi_ - lo_);
    case Kind::PiecewiseLinear: {
      auto it = std::upper_bound(knots_.begin(), knots_.end(), a,
                                 [](double x, const auto& kn) { return x < kn.first; });
      std::size_t r = static_cast<std::size_t>(it - knots_.begin());
      if (r == 0) return 0.0;
      if (r == knots_.size()) return mass_;
      std::size_t l = r - 1;
      double w = knots_[r].first - knots_[l].first;
      double t = a - knots_[l].first;
      double slope = (knots_[r].second - knots_[l].second) / w;
      // exact integral of the linear segment
      return knot_cdf_[l] + knots_[l].second * t + 0.5 * slope * t * t;
    }
    case Kind::TruncatedNormal: {
      double c = normal_cdf((a - mean_) / sigma_);
      return mass_ * (c - z_lo_cdf_) / z_span_;
    }
  }
  return 0.0;
}

double BuyerDistribution::mass(double lo, double hi) const {
  if (lo > hi) throw std::domain_error("mass: lo > hi");
  return std::max(0.0, cdf(hi) - cdf(lo));
}

double BuyerDistribution::sup_density() const {
  switch (kind_) {
    case Kind::Uniform:
      return mass_ / (hi_ - lo_);
    case Kind::PiecewiseLinear: {
      double m = 0.0;
      for (const auto& kn : knots_) m = std::max(m, kn.second);
      return m;
    }
    case Kind::TruncatedNormal: {
      double peak = std::clamp(mean_, lo_, hi_);
      return density(peak);
    }
  }
  return 0.0;
}

}  // namespace pricechain
