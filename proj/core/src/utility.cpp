#include "pricechain/utility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pricechain/market.hpp"

namespace pricechain {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double UtilityFunction::accuracy_term(double a) const {
  switch (acc_form) {
    case AccuracyForm::Linear:
      return theta * a;
    case AccuracyForm::Power:
      return theta * std::pow(a, q);
    case AccuracyForm::Log:
      return theta * std::log1p(a);
  }
  return 0.0;
}

double UtilityFunction::price_term(double p) const {
  switch (price_form) {
    case PriceForm::Linear:
      return -phi * p;
    case PriceForm::Quadratic:
      return -phi * p * p;
    case PriceForm::Log:
      return -phi * std::log1p(p);
  }
  return 0.0;
}

double UtilityFunction::d_da(double a) const {
  switch (acc_form) {
    case AccuracyForm::Linear:
      return theta;
    case AccuracyForm::Power:
      return theta * q * std::pow(a, q - 1.0);
    case AccuracyForm::Log:
      return theta / (1.0 + a);
  }
  return 0.0;
}

double UtilityFunction::d_dp(double p) const {
  switch (price_form) {
    case PriceForm::Linear:
      return -phi;
    case PriceForm::Quadratic:
      return -2.0 * phi * p;
    case PriceForm::Log:
      return -phi / (1.0 + p);
  }
  return 0.0;
}

double UtilityFunction::accuracy_term_inverse(double v) const {
  switch (acc_form) {
    case AccuracyForm::Linear:
      return v / theta;
    case AccuracyForm::Power:
      if (v < 0.0) return -kInf;
      return std::pow(v / theta, 1.0 / q);
    case AccuracyForm::Log:
      return std::expm1(v / theta);
  }
  return 0.0;
}

double UtilityFunction::price_term_inverse(double v) const {
  // f maps [0, inf) onto (-inf, 0]; v > 0 has no preimage, clamp to 0.
  if (v > 0.0) return 0.0;
  switch (price_form) {
    case PriceForm::Linear:
      return -v / phi;
    case PriceForm::Quadratic:
      return std::sqrt(-v / phi);
    case PriceForm::Log:
      return std::expm1(-v / phi);
  }
  return kInf;
}

void UtilityFunction::validate() const {
  if (!(theta > 0.0)) throw ConfigError("utility: theta must be > 0");
  if (!(phi > 0.0)) throw ConfigError("utility: phi must be > 0");
  if (acc_form == AccuracyForm::Power && !(q > 0.0))
    throw ConfigError("utility: power exponent q must be > 0");
  if (!std::isfinite(offset)) throw ConfigError("utility: offset must be finite");
}

double UtilityFamily::eval(int i, double p, double a) const {
  if (i < 0 || i >= size()) throw std::domain_error("eval: model index out of range");
  if (p < 0.0 || p > price_cap) throw std::domain_error("eval: price outside [0, P]");
  if (a < a_lo || a > a_hi) throw std::domain_error("eval: accuracy outside bounds");
  return members[static_cast<std::size_t>(i)].value(p, a);
}

namespace detail {

double bisect(const std::function<double(double)>& g, double lo, double hi, double value_tol,
              double arg_tol) {
  double glo = g(lo);
  double ghi = g(hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  bool rising = ghi > glo;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double gm = g(mid);
    if (std::abs(gm) <= value_tol && (hi - lo) <= arg_tol) return mid;
    if ((gm > 0.0) == rising) {
      hi = mid;
    } else {
      lo = mid;
    }
    if (hi - lo <= arg_tol && std::abs(g(0.5 * (lo + hi))) <= value_tol) break;
  }
  return 0.5 * (lo + hi);
}

std::pair<double, double> golden_max(const std::function<double(double)>& g, double lo, double hi,
                                     double arg_tol) {
  constexpr double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = g(x1), f2 = g(x2);
  while (b - a > arg_tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = g(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = g(x1);
    }
  }
  double xm = 0.5 * (a + b);
  double fm = g(xm);
  // keep endpoints in contention, maxima are often at interval boundaries
  if (g(lo) > fm) return {lo, g(lo)};
  if (g(hi) > fm) return {hi, g(hi)};
  return {xm, fm};
}

}  // namespace detail

ZeroAccuracyResult zero_accuracy_detail(const UtilityFunction& f, double p, double lo, double hi) {
  if (lo > hi) throw std::domain_error("zero_accuracy: empty domain");
  double blo = f.value(p, lo);
  double bhi = f.value(p, hi);
  if (blo > 0.0) return {RootStatus::AllPositive, lo};
  if (bhi < 0.0) return {RootStatus::AllNegative, hi};
  double a = detail::bisect([&](double x) { return f.value(p, x); }, lo, hi, kRootValueTol,
                            kRootArgTol);
  return {RootStatus::Found, a};
}

std::optional<double> zero_accuracy(const UtilityFunction& f, double p, double lo, double hi) {
  auto r = zero_accuracy_detail(f, p, lo, hi);
  if (r.status != RootStatus::Found) return std::nullopt;
  return r.a;
}

namespace {

void check_member_monotonicity(const UtilityFamily& fam, int i, int grid_n,
                               CompatibilityReport& report) {
  const auto& f = fam.members[static_cast<std::size_t>(i)];
  const double dp = fam.price_cap / (grid_n - 1);
  const double da = (fam.a_hi - fam.a_lo) / (grid_n - 1);
  for (int k = 0; k + 1 < grid_n; ++k) {
    double p0 = k * dp, p1 = (k + 1) * dp;
    if (!(f.price_term(p1) < f.price_term(p0))) {
      report.violations.push_back({i, i, p0, p1, fam.a_lo, "not strictly decreasing in price"});
      return;
    }
    double a0 = fam.a_lo + k * da, a1 = fam.a_lo + (k + 1) * da;
    if (!(f.accuracy_term(a1) > f.accuracy_term(a0))) {
      report.violations.push_back({i, i, 0.0, 0.0, a0, "not strictly increasing in accuracy"});
      return;
    }
  }
}

}  // namespace

CompatibilityReport check_axioms(const UtilityFamily& fam, int grid_n) {
  if (grid_n < 2) throw std::domain_error("check_axioms: grid_n must be >= 2");
  CompatibilityReport report;
  const int n = fam.size();
  for (int i = 0; i < n; ++i) check_member_monotonicity(fam, i, grid_n, report);
  // ordering b_i < b_j for i < j, away from the a_lo boundary
  const double a_start = fam.a_lo + kBoundaryPad;
  const double da = (fam.a_hi - a_start) / (grid_n - 1);
  const double dp = fam.price_cap / (grid_n - 1);
  for (int i = 0; i + 1 < n; ++i) {
    const auto& bi = fam.members[static_cast<std::size_t>(i)];
    const auto& bj = fam.members[static_cast<std::size_t>(i + 1)];
    for (int kp = 0; kp < grid_n; ++kp) {
      double p = kp * dp;
      for (int ka = 0; ka < grid_n; ++ka) {
        double a = a_start + ka * da;
        if (!(bi.value(p, a) < bj.value(p, a))) {
          report.violations.push_back({i, i + 1, p, p, a, "ordering b_i < b_j violated"});
          kp = grid_n;  // one violation per pair is enough
          break;
        }
      }
    }
  }
  report.pass = report.violations.empty();
  return report;
}

CompatibilityReport check_accuracy_compatibility(const UtilityFamily& fam, int grid_n) {
  if (grid_n < 3) throw std::domain_error("check_accuracy_compatibility: grid_n must be >= 3");
  CompatibilityReport report;
  const int n = fam.size();
  const int price_n = std::clamp(grid_n / 5, 9, 41);
  const double dp = fam.price_cap / (price_n - 1);
  const double da = (fam.a_hi - fam.a_lo) / (grid_n - 1);
  constexpr double kSignTol = 1e-12;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto& bi = fam.members[static_cast<std::size_t>(i)];
      const auto& bj = fam.members[static_cast<std::size_t>(j)];
      for (int kp = 0; kp < price_n; ++kp) {
        double p = kp * dp;
        for (int kq = 0; kq < price_n; ++kq) {
          double p2 = kq * dp;
          int last_sign = 0;
          int transitions = 0;
          bool bad_direction = false;
          double bad_a = 0.0;
          for (int ka = 0; ka < grid_n; ++ka) {
            double a = fam.a_lo + ka * da;
            double vi = bi.value(p, a);
            double vj = bj.value(p2, a);
            if (vi < 0.0 || vj < 0.0) continue;  // outside D_{i,p} ∩ D_{j,p'}
            double diff = vi - vj;
            int sign = (diff > kSignTol) ? 1 : (diff < -kSignTol ? -1 : 0);
            if (sign == 0) continue;
            if (last_sign != 0 && sign != last_sign) {
              ++transitions;
              if (sign > 0) {  // went - to +, wrong direction
                bad_direction = true;
                bad_a = a;
              }
            }
            last_sign = sign;
          }
          if (transitions > 1 || bad_direction) {
            report.violations.push_back(
                {i, j, p, p2, bad_a,
                 transitions > 1 ? "B_ij has more than one sign change"
                                 : "B_ij sign change goes - to +"});
            kp = price_n;  // next pair
            break;
          }
        }
      }
    }
  }
  report.pass = report.violations.empty();
  return report;
}

std::optional<double> crossing_with_envelope(const UtilityFunction& f, double p,
                                             const EnvelopeUtility& env) {
  if (env.pieces.empty()) return std::nullopt;
  constexpr int kScanPerPiece = 64;
  constexpr double kSignTol = 1e-13;
  std::optional<double> root;
  int sign_changes = 0;
  int last_sign = 0;  // tracked across pieces: flips at discontinuities count too
  for (const auto& piece : env.pieces) {
    double width = piece.hi - piece.lo;
    if (width <= 0.0) continue;
    double last_a = piece.lo;
    bool last_in_piece = false;
    for (int k = 0; k <= kScanPerPiece; ++k) {
      // sample inside the half-open piece, the left endpoint is excluded
      double a = piece.lo + width * (k + (k == 0 ? 1e-9 : 0.0)) / kScanPerPiece;
      double diff = f.value(p, a) - piece.fn.value(piece.price, a);
      int sign = (diff > kSignTol) ? 1 : (diff < -kSignTol ? -1 : 0);
      if (sign == 0) {
        if (!root) root = a;
        continue;
      }
      if (last_sign != 0 && sign != last_sign) {
        ++sign_changes;
        if (sign_changes >= 2)
          throw MultipleCrossingError("crossing_with_envelope: two or more sign changes");
        if (last_in_piece) {
          double a_star = detail::bisect(
              [&](double x) { return f.value(p, x) - piece.fn.value(piece.price, x); }, last_a, a,
              kRootValueTol, kRootArgTol);
          if (piece.fn.value(piece.price, a_star) >= -kRootValueTol) root = a_star;
        } else if (piece.fn.value(piece.price, a) >= -kRootValueTol) {
          root = a;  // flip at the piece boundary itself
        }
      }
      last_sign = sign;
      last_a = a;
      last_in_piece = true;
    }
  }
  return root;
}

}  // namespace pricechain
