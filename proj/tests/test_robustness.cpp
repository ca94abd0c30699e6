#include <doctest.h>

#include "fixtures.hpp"
#include "pricechain/robustness.hpp"

using namespace pricechain;

TEST_CASE("derivative bracket on a linear utility") {
  UtilityFunction f;  // h(a) = a
  auto [lo, hi] = lipschitz_estimate(f, 0.3, 0.2, 0.8, 101);
  CHECK(lo == doctest::Approx(0.99));
  CHECK(hi == doctest::Approx(1.01));
}

TEST_CASE("profile on the two-model fixture interleaves") {
  Scenario s2 = pctest::make_s2();
  ChainSolution sol = solve_chain(s2);
  LipschitzProfile prof = lipschitz_profile(s2, sol);
  REQUIRE(prof.alpha.size() == 2);
  CHECK(prof.alpha[0] == doctest::Approx(0.99));
  CHECK(prof.beta[0] == doctest::Approx(1.01));
  CHECK(prof.alpha[1] == doctest::Approx(1.98));
  CHECK(prof.beta[1] == doctest::Approx(2.02));
  CHECK(prof.interleaved);
}

TEST_CASE("endpoint bounds follow the per-provenance formulas") {
  Scenario s2 = pctest::make_s2();
  ChainSolution sol = solve_chain(s2);
  LipschitzProfile prof = lipschitz_profile(s2, sol);
  ErrorBoundReport rep = endpoint_error_bounds(s2, sol, {0.01, 0.01}, prof);

  // model 1 lower endpoint is its own marginal buyer: eps / alpha
  REQUIRE(rep.lower[0].bound.has_value());
  CHECK(*rep.lower[0].bound == doctest::Approx(0.01 / 0.99).epsilon(1e-9));
  // model 1 upper endpoint sits at its accuracy cap; the worst admissible
  // shift is the crossing with model 2: (eps1 + eps2) / (beta2 - alpha1)
  REQUIRE(rep.upper[0].bound.has_value());
  CHECK(*rep.upper[0].bound == doctest::Approx(0.02 / (2.02 - 0.99)).epsilon(1e-9));
  // model 2 lower endpoint: crossing with model 1
  REQUIRE(rep.lower[1].bound.has_value());
  CHECK(*rep.lower[1].bound == doctest::Approx(0.02 / (1.98 - 1.01)).epsilon(1e-9));
  // model 2 upper endpoint is the last accuracy cap: exact
  REQUIRE(rep.upper[1].bound.has_value());
  CHECK(*rep.upper[1].bound == doctest::Approx(0.0));
  // revenue bound p * Lambda * (lb + ub)
  REQUIRE(rep.revenue_bound[0].has_value());
  CHECK(*rep.revenue_bound[0] ==
        doctest::Approx(0.3 * 1.0 * (*rep.lower[0].bound + *rep.upper[0].bound)));
  CHECK_THROWS_AS(endpoint_error_bounds(s2, sol, {0.01}, prof), ConfigError);
}

TEST_CASE("seeded perturbation trials stay within the certified bounds") {
  Scenario s2 = pctest::make_s2();
  PerturbationOutcome out = empirical_perturbation_test(s2, {0.01}, 25, 12345, 20000);
  CHECK(out.within_bounds);
  CHECK(out.max_endpoint_dev > 0.0);
  CHECK(out.records.size() == 25 * 2);
  // the full-shift trial nearly attains the marginal-buyer bound
  REQUIRE(out.report.lower[0].bound.has_value());
  CHECK(out.full_shift_lower_dev[0] >= 0.97 * *out.report.lower[0].bound);
  // determinism
  PerturbationOutcome again = empirical_perturbation_test(s2, {0.01}, 25, 12345, 20000);
  CHECK(again.max_endpoint_dev == out.max_endpoint_dev);
  CHECK_THROWS_AS(empirical_perturbation_test(s2, {0.01}, 0, 1, 1000), ConfigError);
}
