#include "pricechain/separable.hpp"

#include <algorithm>
#include <cmath>

namespace pricechain {

namespace {
constexpr int kScanIntervals = 500;
constexpr double kResidualTol = 1e-9;

double h_diff(const SeparableParts& i, const SeparableParts& j, double a) {
  return i.h(a) - j.h(a);
}

double dh_diff(const SeparableParts& i, const SeparableParts& j, double a) {
  return i.dh(a) - j.dh(a);
}

// Roots of g on [lo, hi] via sign scan + bisection, residual-filtered.
std::vector<StationaryCandidate> scan_roots(const std::function<double(double)>& g, double lo,
                                            double hi, CandidateKind kind) {
  std::vector<StationaryCandidate> out;
  if (!(hi > lo)) return out;
  double prev_p = lo;
  double prev_v = g(lo);
  for (int k = 1; k <= kScanIntervals; ++k) {
    double p = lo + (hi - lo) * k / kScanIntervals;
    double v = g(p);
    if (std::isfinite(prev_v) && std::isfinite(v) && (prev_v < 0.0) != (v < 0.0)) {
      double root = detail::bisect(g, prev_p, p, kRootValueTol, kRootArgTol);
      double res = std::abs(g(root));
      if (res <= kResidualTol) out.push_back({root, kind, res});
    }
    prev_p = p;
    prev_v = v;
  }
  return out;
}

}  // namespace

std::optional<double> marginal_buyer(const SeparableParts& parts, double p, double a_lo,
                                     double a_hi) {
  double a = parts.fn.accuracy_term_inverse(-parts.f(p));
  if (!std::isfinite(a) || a < a_lo - kBoundaryPad || a > a_hi + kBoundaryPad)
    return std::nullopt;
  return std::clamp(a, a_lo, a_hi);
}

std::vector<StationaryCandidate> stationary_single(const SeparableParts& parts, double A,
                                                   const BuyerDistribution& dist,
                                                   double price_cap) {
  const double mass_cap = dist.cdf(A);
  auto foc = [&](double p) {
    double ap = parts.fn.accuracy_term_inverse(-parts.f(p));
    if (!std::isfinite(ap)) return mass_cap;  // marginal buyer below every accuracy
    double g = mass_cap - dist.cdf(ap);
    double lam = dist.density(ap);
    if (lam > 0.0) {
      double dap_dp = -parts.df(p) / parts.dh(ap);  // > 0
      g -= p * lam * dap_dp;
    }
    return g;
  };
  return scan_roots(foc, 0.0, price_cap, CandidateKind::Single);
}

std::optional<double> indifference_accuracy(const SeparableParts& parts_i,
                                            const SeparableParts& parts_j, double p, double p_j,
                                            double a_lo, double a_hi) {
  const double level = parts_j.f(p_j) - parts_i.f(p);
  // closed form when both accuracy parts are linear
  if (parts_i.fn.acc_form == AccuracyForm::Linear && parts_j.fn.acc_form == AccuracyForm::Linear) {
    double slope = parts_i.fn.theta - parts_j.fn.theta;
    if (slope == 0.0) return std::nullopt;
    double a = level / slope;
    if (a < a_lo - kBoundaryPad || a > a_hi + kBoundaryPad) return std::nullopt;
    return std::clamp(a, a_lo, a_hi);
  }
  double dlo = h_diff(parts_i, parts_j, a_lo) - level;
  double dhi = h_diff(parts_i, parts_j, a_hi) - level;
  if (dlo == 0.0) return a_lo;
  if (dhi == 0.0) return a_hi;
  if ((dlo < 0.0) == (dhi < 0.0)) return std::nullopt;
  return detail::bisect([&](double a) { return h_diff(parts_i, parts_j, a) - level; }, a_lo, a_hi,
                        kRootValueTol, kRootArgTol);
}

std::vector<StationaryCandidate> stationary_competition(const SeparableParts& parts_i,
                                                        const SeparableParts& parts_j, double p_j,
                                                        double A, const BuyerDistribution& dist,
                                                        double price_cap) {
  const double a_lo = dist.lo();
  const double a_hi = std::max(dist.hi(), A);
  // h_i - h_j must be strictly monotone for the inversion to be well defined
  {
    constexpr int kGrid = 101;
    int sign = 0;
    for (int k = 0; k < kGrid; ++k) {
      double a = a_lo + (a_hi - a_lo) * k / (kGrid - 1);
      double d = dh_diff(parts_i, parts_j, a);
      int s = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
      if (s == 0 || (sign != 0 && s != sign))
        throw ConfigError("stationary_competition: h_i - h_j is not strictly monotone");
      sign = s;
    }
  }
  const double mass_cap = dist.cdf(A);
  auto foc = [&](double p) {
    auto astar = indifference_accuracy(parts_i, parts_j, p, p_j, a_lo, a_hi);
    if (!astar) {
      // level outside range: decide which side the indifference point fell on
      double level = parts_j.f(p_j) - parts_i.f(p);
      double at_lo = h_diff(parts_i, parts_j, a_lo);
      bool increasing = dh_diff(parts_i, parts_j, 0.5 * (a_lo + a_hi)) > 0.0;
      bool below = increasing ? (level < at_lo) : (level > at_lo);
      return below ? mass_cap : mass_cap - dist.total_mass();
    }
    double g = mass_cap - dist.cdf(*astar);
    double lam = dist.density(*astar);
    if (lam > 0.0) {
      double da_dp = -parts_i.df(p) / dh_diff(parts_i, parts_j, *astar);
      g -= (p - p_j) * lam * da_dp;
    }
    return g;
  };
  return scan_roots(foc, std::max(0.0, p_j), price_cap, CandidateKind::Competition);
}

}  // namespace pricechain
