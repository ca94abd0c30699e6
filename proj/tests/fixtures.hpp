#pragma once

// Hand-derived scenarios shared across the test suites. All reference
// numbers quoted in the tests were computed by hand from these closed-form
// setups and cross-checked against the brute-force oracles.

#include "pricechain/dual_pricing.hpp"
#include "pricechain/static_pricing.hpp"

namespace pctest {

// Two linear models b_i = theta_i * a - p, theta = (1, 2), A = (0.6, 0.9),
// uniform unit density on [0.05, 1], price cap 1.2, costs (0.05, 0.1).
// Optimum: p = (0.3, 1.2), markets (0.3, 0.6] and (0.6, 0.9],
// revenues (0.09, 0.36), objective 0.30.
inline pricechain::Scenario make_s2() {
  pricechain::Scenario scn;
  scn.costs = {0.05, 0.1};
  scn.curve = pricechain::CostAccuracyCurve::from_table({{0.05, 0.6}, {0.1, 0.9}});
  pricechain::UtilityFunction f1, f2;
  f1.theta = 1.0;
  f2.theta = 2.0;
  scn.family.members = {f1, f2};
  scn.family.a_lo = 0.0;
  scn.family.a_hi = 1.0;
  scn.dist = pricechain::BuyerDistribution::uniform(0.05, 1.0, 0.95);
  scn.price_cap = 1.2;
  scn.family.price_cap = scn.price_cap;
  return scn;
}

// S2 plus a third linear model theta_3 = 3, A_3 = 0.95, cost 0.15, cap 2.0.
// Optimum: p = (0.3, 1.2, 1.8); the third model absorbs the second's market
// from the block boundary at 0.6 (b_3(1.8, 0.6) = 0), revenues
// (0.09, 0, 0.63), total revenue 0.72, objective 0.52.
inline pricechain::Scenario make_s3() {
  pricechain::Scenario scn = make_s2();
  scn.costs.push_back(0.15);
  scn.curve = pricechain::CostAccuracyCurve::from_table({{0.05, 0.6}, {0.1, 0.9}, {0.15, 0.95}});
  pricechain::UtilityFunction f3;
  f3.theta = 3.0;
  scn.family.members.push_back(f3);
  scn.price_cap = 2.0;
  scn.family.price_cap = 2.0;
  return scn;
}

// Single model b = a - p with triangular density lambda(a) = 2a on [0, 1]
// and A = 0.6: the stationarity condition A^2 - p^2 - 2p^2 = 0 gives
// p* = sqrt(0.12).
inline pricechain::Scenario make_triangular_single() {
  pricechain::Scenario scn;
  scn.costs = {0.05};
  scn.accuracy_override = {0.6};
  pricechain::UtilityFunction f1;
  scn.family.members = {f1};
  scn.family.a_lo = 0.0;
  scn.family.a_hi = 1.0;
  scn.dist = pricechain::BuyerDistribution::piecewise_linear({{0.0, 0.0}, {1.0, 2.0}}, 1.0);
  scn.price_cap = 1.0;
  scn.family.price_cap = 1.0;
  return scn;
}

// Quasi-dual single model b(p, pbar) = 1 - p - pbar, caps uniform on [0, 1]:
// optimum p = 0.25, market [0.25, 0.75), revenue 0.125.
inline pricechain::QDScenario make_qd1() {
  pricechain::QDScenario scn;
  scn.costs = {0.05};
  pricechain::QuasiDualUtility f1;
  f1.pbar_lin = -1.0;
  f1.offset = 1.0;
  scn.family.members = {f1};
  scn.family.pbar_lo = 0.0;
  scn.family.pbar_hi = 1.0;
  scn.mu = pricechain::BuyerDistribution::uniform(0.0, 1.0, 1.0);
  scn.price_cap = 1.0;
  scn.family.price_cap = 1.0;
  return scn;
}

// Adds b_2(p, pbar) = 1.5 - p - pbar. Optimum p = (0.25, 0.5): the second
// model wins every cap >= 0.5 (its value is higher wherever both are
// available), the first keeps [0.25, 0.5); revenues (0.0625, 0.25),
// total 0.3125.
inline pricechain::QDScenario make_qd2() {
  pricechain::QDScenario scn = make_qd1();
  scn.costs.push_back(0.1);
  pricechain::QuasiDualUtility f2;
  f2.pbar_lin = -1.0;
  f2.offset = 1.5;
  scn.family.members.push_back(f2);
  return scn;
}

// Variable-swapped counterpart of S2: the dual engine must rebuild the
// primal problem exactly, so objectives agree to machine precision.
inline pricechain::DualScenario make_s2_dual() {
  pricechain::Scenario s2 = make_s2();
  pricechain::DualScenario d;
  d.costs = s2.costs;
  d.menu = {0.6, 0.9};
  d.family = s2.family;
  d.mu = s2.dist;
  d.choice_cap = s2.price_cap;
  d.solver = s2.solver;
  return d;
}

}  // namespace pctest
