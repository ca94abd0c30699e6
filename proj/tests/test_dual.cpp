#include <doctest.h>

#include "fixtures.hpp"
#include "pricechain/dual_pricing.hpp"

using namespace pricechain;

TEST_CASE("quasi-dual utility evaluation and validation") {
  QuasiDualUtility f;
  f.pbar_lin = -1.0;
  f.offset = 1.0;
  CHECK(f.value(0.25, 0.5) == doctest::Approx(1.0 - 0.25 - 0.5));
  CHECK_NOTHROW(f.validate());
  QuasiDualUtility bad = f;
  bad.phi = -1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("second-type compatibility holds for shared-slope members") {
  QDScenario scn = pctest::make_qd2();
  CHECK(check_second_type_compatibility(scn.family, 101).pass);
}

TEST_CASE("single-model quasi-dual fixture") {
  QDScenario scn = pctest::make_qd1();
  QDSingleResult r = qd_price_single(scn);
  CHECK(r.price == doctest::Approx(0.25).epsilon(1e-4));
  CHECK(r.rev == doctest::Approx(0.125).epsilon(1e-4));
  CHECK(r.interval.lo == doctest::Approx(0.25).epsilon(1e-4));
  CHECK(r.interval.hi == doctest::Approx(0.75).epsilon(1e-4));

  QDSolution sol = solve_chain_qd(scn);
  CHECK(sol.prices[0] == doctest::Approx(0.25).epsilon(1e-4));
  CHECK(sol.revenues[0] == doctest::Approx(0.125).epsilon(1e-4));
}

TEST_CASE("two-model quasi-dual chain") {
  QDScenario scn = pctest::make_qd2();
  QDSolution sol = solve_chain_qd(scn);
  CHECK(sol.prices[0] == doctest::Approx(0.25).epsilon(1e-4));
  CHECK(sol.prices[1] == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(sol.revenues[0] == doctest::Approx(0.0625).epsilon(1e-3));
  CHECK(sol.revenues[1] == doctest::Approx(0.25).epsilon(1e-3));
  CHECK(sol.intervals[0].lo == doctest::Approx(0.25).epsilon(1e-3));
  CHECK(sol.intervals[0].hi == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(sol.intervals[1].hi == doctest::Approx(1.0).epsilon(1e-3));
  CHECK_FALSE(sol.disconnected);
  double total = sol.revenues[0] + sol.revenues[1];
  CHECK(total == doctest::Approx(0.3125).epsilon(1e-3));
  // cross-check against the cap-space grid oracle
  auto oracle = qd_oracle_revenues(sol.prices, scn.family, scn.mu, 20000);
  CHECK(oracle[0] == doctest::Approx(sol.revenues[0]).epsilon(1e-3));
  CHECK(oracle[1] == doctest::Approx(sol.revenues[1]).epsilon(1e-3));
}

TEST_CASE("cap-space winner partition respects availability and ties") {
  QDScenario scn = pctest::make_qd2();
  auto cells = qd_winner_partition({0.25, 0.5}, scn.family);
  // below 0.25 nobody is available; [0.25, 0.5) goes to model 1; above to 2
  for (const auto& c : cells) {
    if (c.hi <= 0.25) CHECK(c.winner == -1);
    if (c.lo >= 0.25 && c.hi <= 0.5) CHECK(c.winner == 0);
    if (c.lo >= 0.5 && c.hi <= 1.0 - 1e-9) CHECK(c.winner == 1);
  }
}

TEST_CASE("dual solve reproduces the primal chain exactly") {
  DualScenario d = pctest::make_s2_dual();
  ChainSolution dual_sol = solve_chain_dual(d);
  ChainSolution primal_sol = solve_chain(pctest::make_s2());
  CHECK(dual_sol.objective == doctest::Approx(primal_sol.objective).epsilon(1e-12));
  for (std::size_t i = 0; i < 2; ++i)
    CHECK(dual_sol.prices[i] == doctest::Approx(primal_sol.prices[i]).epsilon(1e-12));
}
