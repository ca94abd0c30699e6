#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "pricechain/static_pricing.hpp"

using namespace pricechain;

TEST_CASE("cost-accuracy curves") {
  auto t = CostAccuracyCurve::from_table({{0.05, 0.6}, {0.1, 0.9}});
  CHECK(t.accuracy(0.05) == doctest::Approx(0.6));
  CHECK(t.accuracy(0.075) == doctest::Approx(0.75));
  CHECK(t.accuracy(0.2) == doctest::Approx(0.9));  // clamped
  CHECK_THROWS_AS(CostAccuracyCurve::from_table({{0.1, 0.6}, {0.05, 0.9}}), ConfigError);
  CHECK_THROWS_AS(CostAccuracyCurve::from_table({{0.05, 0.9}, {0.1, 0.6}}), ConfigError);

  auto s = CostAccuracyCurve::saturating(0.95, 10.0);
  CHECK(s.accuracy(0.0) == doctest::Approx(0.0));
  CHECK(s.accuracy(0.1) == doctest::Approx(0.95 * (1.0 - std::exp(-1.0))));
}

TEST_CASE("scenario validation") {
  Scenario s2 = pctest::make_s2();
  CHECK_NOTHROW(s2.validate());
  CHECK(s2.accuracies()[0] == doctest::Approx(0.6));
  CHECK(s2.accuracies()[1] == doctest::Approx(0.9));

  Scenario bad = s2;
  bad.costs = {0.1, 0.1};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("two-model chain: hand-derived optimum") {
  Scenario s2 = pctest::make_s2();
  ChainSolution sol = solve_chain(s2);
  CHECK(sol.prices[0] == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(sol.prices[1] == doctest::Approx(1.2).epsilon(1e-6));
  CHECK(sol.alloc.intervals[0].lo == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(sol.alloc.intervals[0].hi == doctest::Approx(0.6).epsilon(1e-6));
  CHECK(sol.alloc.intervals[1].lo == doctest::Approx(0.6).epsilon(1e-6));
  CHECK(sol.alloc.intervals[1].hi == doctest::Approx(0.9).epsilon(1e-6));
  CHECK(sol.revenues[0] == doctest::Approx(0.09).epsilon(1e-6));
  CHECK(sol.revenues[1] == doctest::Approx(0.36).epsilon(1e-6));
  CHECK(sol.objective == doctest::Approx(0.30).epsilon(1e-6));
  CHECK(sol.outcomes[0].case_kind == CaseKind::Monopolist);
  CHECK(sol.outcomes[1].case_kind == CaseKind::NoCompetitionAdjacent);
}

TEST_CASE("three-model chain: block takeover at the boundary") {
  Scenario s3 = pctest::make_s3();
  ChainSolution sol = solve_chain(s3);
  CHECK(sol.prices[0] == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(sol.prices[2] == doctest::Approx(1.8).epsilon(1e-6));
  CHECK(sol.alloc.intervals[1].empty);  // absorbed by the third model
  CHECK(sol.revenues[1] == doctest::Approx(0.0));
  CHECK(sol.alloc.intervals[2].lo == doctest::Approx(0.6).epsilon(1e-6));
  CHECK(sol.alloc.intervals[2].hi == doctest::Approx(0.95).epsilon(1e-6));
  CHECK(sol.revenues[2] == doctest::Approx(0.63).epsilon(1e-6));
  CHECK(sol.outcomes[2].case_kind == CaseKind::BlockCoverage);
  // the takeover price zeroes the entrant's utility at the boundary
  CHECK(s3.family.members[2].value(sol.prices[2], 0.6) == doctest::Approx(0.0).epsilon(1e-6));
  double total = sol.revenues[0] + sol.revenues[1] + sol.revenues[2];
  CHECK(total == doctest::Approx(0.72).epsilon(1e-6));
  CHECK(sol.objective == doctest::Approx(0.52).epsilon(1e-6));
}

TEST_CASE("case names") {
  CHECK(case_kind_name(CaseKind::Monopolist) == "single");
  CHECK(case_kind_name(CaseKind::FullCoverage) == "full-coverage");
  CHECK(case_kind_name(CaseKind::BlockCoverage) == "block-coverage");
  CHECK(case_kind_name(CaseKind::Competition, 0) == "competition-with-1");
  CHECK(case_kind_name(CaseKind::NoCompetitionAdjacent) == "no-competition-adjacent");
  CHECK(case_kind_name(CaseKind::NoCompetitionGap) == "no-competition-gap");
  CHECK(case_kind_name(CaseKind::Dominated) == "dominated");
}

TEST_CASE("case enumeration covers the hand-derived taxonomy on the second step") {
  Scenario s2 = pctest::make_s2();
  ChainSolution prefix = solve_chain_prefix(s2, 1);
  auto cds = enumerate_cases(prefix.envelope, s2.family.members[1], 0.9, s2.price_cap);
  bool full = false, comp = false, adj = false;
  for (const auto& cd : cds) {
    if (cd.kind == CaseKind::FullCoverage) {
      full = true;
      CHECK(cd.p_hi == doctest::Approx(0.6).epsilon(1e-9));
    }
    if (cd.kind == CaseKind::Competition) {
      comp = true;
      CHECK(cd.p_lo == doctest::Approx(0.6).epsilon(1e-9));
      CHECK(cd.p_hi == doctest::Approx(0.9).epsilon(1e-9));
    }
    if (cd.kind == CaseKind::NoCompetitionAdjacent) {
      adj = true;
      CHECK(cd.p_hi == doctest::Approx(1.2).epsilon(1e-9));
    }
  }
  CHECK(full);
  CHECK(comp);
  CHECK(adj);
}

TEST_CASE("step response classifies the market reaction") {
  Scenario s2 = pctest::make_s2();
  ChainSolution prefix = solve_chain_prefix(s2, 1);
  const auto& next = s2.family.members[1];

  auto comp = step_response(prefix.envelope, next, 0.75, 0.9, s2.dist, 0.0);
  CHECK_FALSE(comp.empty);
  CHECK(comp.kind == CaseKind::Competition);
  CHECK(comp.x == doctest::Approx(0.45).epsilon(1e-8));  // 2a - 0.75 = a - 0.3

  auto adj = step_response(prefix.envelope, next, 1.2, 0.9, s2.dist, 0.0);
  CHECK(adj.kind == CaseKind::NoCompetitionAdjacent);
  CHECK(adj.x == doctest::Approx(0.6).epsilon(1e-9));

  auto full = step_response(prefix.envelope, next, 0.4, 0.9, s2.dist, 0.0);
  CHECK(full.kind == CaseKind::FullCoverage);
  CHECK(full.x == doctest::Approx(0.2).epsilon(1e-9));

  auto none = step_response(prefix.envelope, next, 5.0, 0.9, s2.dist, 0.0);
  CHECK(none.empty);
}

TEST_CASE("revenue curve is finely sampled and bounded") {
  Scenario s2 = pctest::make_s2();
  auto pts = revenue_curve(s2, 1, 1e-3);
  REQUIRE(pts.size() > 1000);
  double best = 0.0;
  for (const auto& [p, r] : pts) best = std::max(best, r);
  CHECK(best == doctest::Approx(0.36).epsilon(1e-3));
  CHECK_THROWS_AS(revenue_curve(s2, 5, 1e-3), ConfigError);
  CHECK_THROWS_AS(revenue_curve(s2, 1, 0.0), ConfigError);
}

TEST_CASE("outer cost sweep picks the best increasing tuple") {
  Scenario s2 = pctest::make_s2();
  std::vector<double> best_costs;
  ChainSolution sol = optimize_costs(s2, {0.05, 0.075, 0.1}, 2, &best_costs);
  REQUIRE(best_costs.size() == 2);
  CHECK(best_costs[0] < best_costs[1]);
  CHECK(sol.objective >= solve_chain(s2).objective - 1e-9);
  CHECK_THROWS_AS(optimize_costs(s2, {0.05}, 2, nullptr), ConfigError);
}

TEST_CASE("deterministic resolve") {
  Scenario s2 = pctest::make_s2();
  ChainSolution a = solve_chain(s2), b = solve_chain(s2);
  CHECK(a.prices == b.prices);
  CHECK(a.revenues == b.revenues);
}
