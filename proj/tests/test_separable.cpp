#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "pricechain/separable.hpp"

using namespace pricechain;

TEST_CASE("separable parts split value into f(p) and h(a)") {
  UtilityFunction fn;
  fn.acc_form = AccuracyForm::Log;
  fn.theta = 2.0;
  fn.price_form = PriceForm::Quadratic;
  fn.phi = 0.5;
  fn.offset = 0.3;
  SeparableParts parts = SeparableParts::from(fn);
  for (double p : {0.0, 0.4, 1.1})
    for (double a : {0.1, 0.6})
      CHECK(parts.f(p) + parts.h(a) == doctest::Approx(fn.value(p, a)));
}

TEST_CASE("marginal buyer inverts the zero-utility condition") {
  UtilityFunction fn;  // b = a - p
  SeparableParts parts = SeparableParts::from(fn);
  auto a = marginal_buyer(parts, 0.4, 0.0, 1.0);
  REQUIRE(a.has_value());
  CHECK(*a == doctest::Approx(0.4));
  CHECK_FALSE(marginal_buyer(parts, 2.0, 0.0, 1.0).has_value());
}

TEST_CASE("single-model stationarity on the triangular density") {
  Scenario scn = pctest::make_triangular_single();
  auto cands =
      stationary_single(SeparableParts::from(scn.family.members[0]), 0.6, scn.dist, scn.price_cap);
  const double expected = std::sqrt(0.12);
  bool found = false;
  for (const auto& c : cands) {
    CHECK(std::abs(c.residual) <= 1e-9);
    if (std::abs(c.price - expected) < 1e-7) found = true;
  }
  CHECK(found);
  // and the full single-model optimizer lands there
  SingleResult sr = price_single(scn);
  CHECK(sr.price == doctest::Approx(expected).epsilon(1e-6));
  CHECK(sr.rev == doctest::Approx(expected * (0.36 - 0.12)).epsilon(1e-6));
}

TEST_CASE("indifference accuracy: closed form for linear-linear pairs") {
  Scenario s2 = pctest::make_s2();
  // 2a - p = a - 0.3  =>  a = p - 0.3
  auto pi = SeparableParts::from(s2.family.members[1]);
  auto pj = SeparableParts::from(s2.family.members[0]);
  auto a = indifference_accuracy(pi, pj, 0.75, 0.3, 0.0, 1.0);
  REQUIRE(a.has_value());
  CHECK(*a == doctest::Approx(0.45).epsilon(1e-9));
  // no crossing inside the domain
  CHECK_FALSE(indifference_accuracy(pi, pj, 3.0, 0.3, 0.0, 1.0).has_value());
}

TEST_CASE("competition stationarity reproduces the hand-derived optimum") {
  // S2 step 2 under the competition case: total revenue
  // 0.3 (a* - 0.3) + p (0.9 - a*) with a* = p - 0.3 peaks at p = 0.75.
  Scenario s2 = pctest::make_s2();
  auto cands = stationary_competition(SeparableParts::from(s2.family.members[1]),
                                      SeparableParts::from(s2.family.members[0]), 0.3, 0.9,
                                      s2.dist, s2.price_cap);
  bool found = false;
  for (const auto& c : cands) {
    CHECK(std::abs(c.residual) <= 1e-9);
    if (std::abs(c.price - 0.75) < 1e-7) found = true;
  }
  CHECK(found);
}
