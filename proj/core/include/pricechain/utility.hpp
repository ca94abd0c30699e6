#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pricechain {

/// Thrown when a scenario or family fails a structural requirement.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a curve/envelope comparison shows two or more sign changes,
/// i.e. the configured family is not accuracy-compatible.
class MultipleCrossingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closed grammar of decreasing price terms: -phi*p, -phi*p^2, -phi*ln(1+p).
enum class PriceForm : std::uint8_t { Linear, Quadratic, Log };

/// Closed grammar of increasing accuracy terms: theta*a, theta*a^q, theta*ln(1+a).
enum class AccuracyForm : std::uint8_t { Linear, Power, Log };

/// Additively separable buyer utility b(p, a) = h(a) + f(p) + offset with
/// h increasing in accuracy and f decreasing in price.
struct UtilityFunction {
  AccuracyForm acc_form = AccuracyForm::Linear;
  double theta = 1.0;  // accuracy coefficient, > 0
  double q = 1.0;      // exponent for AccuracyForm::Power, > 0
  PriceForm price_form = PriceForm::Linear;
  double phi = 1.0;  // price coefficient, > 0
  double offset = 0.0;

  double accuracy_term(double a) const;
  double price_term(double p) const;  // always <= 0 for p >= 0
  double value(double p, double a) const { return accuracy_term(a) + price_term(p) + offset; }

  double d_da(double a) const;
  double d_dp(double p) const;

  /// h^{-1}(v). Returns -infinity when v is below the range of h (the
  /// preimage would be below every admissible accuracy).
  double accuracy_term_inverse(double v) const;
  /// f^{-1}(v) for v <= 0. Returns +infinity when v is below the range of f
  /// on [0, inf).
  double price_term_inverse(double v) const;

  void validate() const;  // throws ConfigError on bad coefficients
};

/// Ordered family (b_1, ..., b_n), one utility per model, with the shared
/// accuracy bounds and price cap.
struct UtilityFamily {
  std::vector<UtilityFunction> members;
  double a_lo = 0.0;
  double a_hi = 1.0;
  double price_cap = 1.0;

  int size() const { return static_cast<int>(members.size()); }

  /// Checked evaluation of b_i(p, a); throws std::domain_error outside
  /// p in [0, price_cap], a in [a_lo, a_hi].
  double eval(int i, double p, double a) const;
};

struct CompatibilityViolation {
  int i = -1;
  int j = -1;
  double p = 0.0;
  double p2 = 0.0;
  double a = 0.0;
  std::string description;
};

struct CompatibilityReport {
  bool pass = true;
  std::vector<CompatibilityViolation> violations;
};

enum class RootStatus : std::uint8_t {
  Found,        // sign change bracketed, root returned
  AllPositive,  // b(p, .) > 0 on the whole domain: marginal buyer below it
  AllNegative,  // b(p, .) < 0 on the whole domain: no buyer
};

struct ZeroAccuracyResult {
  RootStatus status = RootStatus::AllNegative;
  double a = 0.0;
};

/// Root of b(p, .) = 0 on [lo, hi] by bisection (|b| <= 1e-10, |da| <= 1e-12).
ZeroAccuracyResult zero_accuracy_detail(const UtilityFunction& f, double p, double lo, double hi);

/// Optional-returning form: absent when b(p, .) has one sign on the domain.
std::optional<double> zero_accuracy(const UtilityFunction& f, double p, double lo, double hi);

/// Grid certification of the monotonicity and ordering axioms on a
/// grid_n x grid_n (p, a) lattice.
CompatibilityReport check_axioms(const UtilityFamily& fam, int grid_n = 201);

/// Grid certification of accuracy-compatibility: for sampled (p, p') pairs
/// and every i < j, B_ij(a) = b_i(p,a) - b_j(p',a) restricted to the
/// nonnegative-utility intersection has at most one sign change, + to -.
CompatibilityReport check_accuracy_compatibility(const UtilityFamily& fam, int grid_n = 201);

struct EnvelopeUtility;  // defined in market.hpp

/// Unique a* in the envelope support with b(p, a*) = envelope(a*) >= 0.
/// Absent when the curves never meet; throws MultipleCrossingError when a
/// grid scan sees two or more sign changes.
std::optional<double> crossing_with_envelope(const UtilityFunction& f, double p,
                                             const EnvelopeUtility& env);

// Shared numeric tolerances.
inline constexpr double kRootValueTol = 1e-10;
inline constexpr double kRootArgTol = 1e-12;
inline constexpr double kBoundaryPad = 1e-9;

namespace detail {
/// Bisection for a continuous g with g(lo) and g(hi) of opposite sign.
double bisect(const std::function<double(double)>& g, double lo, double hi, double value_tol,
              double arg_tol);
/// Golden-section maximization of g on [lo, hi]; returns {argmax, max}.
std::pair<double, double> golden_max(const std::function<double(double)>& g, double lo, double hi,
                                     double arg_tol);
}  // namespace detail

}  // namespace pricechain
