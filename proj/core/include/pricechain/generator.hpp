#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pricechain/static_pricing.hpp"

namespace pricechain {

/// Deterministic random valid scenarios (1-5 models, shared utility form per
/// scenario, strictly increasing accuracy slopes). Every returned scenario
/// passes the axiom and compatibility checks; rejection sampling is capped
/// at 100 attempts per scenario.
std::vector<Scenario> generate_scenarios(std::uint64_t seed, int count);

struct PropertyReport {
  struct Entry {
    std::string name;
    bool pass = false;
    std::string detail;
  };
  std::vector<Entry> entries;

  bool all_pass() const {
    for (const auto& e : entries)
      if (!e.pass) return false;
    return true;
  }
};

/// Solves the chain and checks the structural guarantees of the static
/// theory against the brute-force oracle: connectivity, interval ordering,
/// envelope jump direction, single crossing per step, the block-boundary
/// zero-utility identity when that case wins, step monotonicity, and
/// revenue-curve continuity.
PropertyReport assert_market_properties(const Scenario& scn, int oracle_grid = 10000);

/// Same checks against a caller-supplied solution (e.g. for fault injection).
PropertyReport assert_market_properties(const Scenario& scn, const ChainSolution& sol,
                                        int oracle_grid = 10000);

}  // namespace pricechain
