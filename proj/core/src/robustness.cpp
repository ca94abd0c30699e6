#include "pricechain/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "pricechain/market.hpp"

namespace pricechain {

std::pair<double, double> lipschitz_estimate(const UtilityFunction& fn, double /*p*/, double lo,
                                             double hi, int grid_n) {
  if (grid_n < 2) throw std::domain_error("lipschitz_estimate: grid_n must be >= 2");
  double mn = std::numeric_limits<double>::infinity();
  double mx = 0.0;
  if (hi <= lo) {
    double d = std::abs(fn.d_da(lo));
    return {0.99 * d, 1.01 * d};
  }
  for (int k = 0; k < grid_n; ++k) {
    double a = lo + (hi - lo) * k / (grid_n - 1);
    double d = std::abs(fn.d_da(a));
    mn = std::min(mn, d);
    mx = std::max(mx, d);
  }
  return {0.99 * mn, 1.01 * mx};
}

LipschitzProfile lipschitz_profile(const Scenario& scn, const ChainSolution& sol, int grid_n) {
  LipschitzProfile prof;
  const int n = scn.n();
  for (int i = 0; i < n; ++i) {
    // evaluate over the model's market (fall back to the whole domain)
    const auto& iv = sol.alloc.intervals[static_cast<std::size_t>(i)];
    double lo = iv.empty ? scn.family.a_lo : iv.lo;
    double hi = iv.empty ? scn.family.a_hi : iv.hi;
    auto [a, b] = lipschitz_estimate(scn.family.members[static_cast<std::size_t>(i)],
                                     sol.prices[static_cast<std::size_t>(i)], lo, hi, grid_n);
    prof.alpha.push_back(a);
    prof.beta.push_back(b);
  }
  prof.interleaved = prof.alpha.empty() ? false : prof.alpha.front() > 0.0;
  for (int i = 0; i < n && prof.interleaved; ++i) {
    if (!(prof.alpha[static_cast<std::size_t>(i)] < prof.beta[static_cast<std::size_t>(i)]))
      prof.interleaved = false;
    if (i + 1 < n && !(prof.beta[static_cast<std::size_t>(i)] <
                       prof.alpha[static_cast<std::size_t>(i + 1)]))
      prof.interleaved = false;
  }
  return prof;
}

namespace {

// max of candidate ratios; absent when every candidate has a non-positive
// denominator (the interleaving assumption required by that formula fails).
struct BoundAcc {
  std::optional<double> best;
  void add(double numerator, double denominator) {
    if (!(denominator > 0.0)) return;
    double v = numerator / denominator;
    if (!best || v > *best) best = v;
  }
};

}  // namespace

ErrorBoundReport endpoint_error_bounds(const Scenario& scn, const ChainSolution& sol,
                                       const std::vector<double>& eps,
                                       const LipschitzProfile& prof) {
  const int n = scn.n();
  if (static_cast<int>(eps.size()) != n)
    throw ConfigError("endpoint_error_bounds: eps size does not match model count");
  ErrorBoundReport rep;
  rep.profile = prof;
  rep.lambda_sup = scn.dist.sup_density();
  rep.lower.assign(static_cast<std::size_t>(n), {});
  rep.upper.assign(static_cast<std::size_t>(n), {});
  rep.revenue_bound.assign(static_cast<std::size_t>(n), std::nullopt);

  auto A = [&](int i) { return prof.alpha[static_cast<std::size_t>(i)]; };
  auto B = [&](int i) { return prof.beta[static_cast<std::size_t>(i)]; };
  auto E = [&](int i) { return eps[static_cast<std::size_t>(i)]; };

  for (int i = 0; i < n; ++i) {
    const auto& outc = sol.outcomes[static_cast<std::size_t>(i)];
    auto& lo_b = rep.lower[static_cast<std::size_t>(i)];
    auto& hi_b = rep.upper[static_cast<std::size_t>(i)];
    if (outc.interval.empty) {
      lo_b = {0.0, "empty market"};
      hi_b = {0.0, "empty market"};
      rep.revenue_bound[static_cast<std::size_t>(i)] = 0.0;
      continue;
    }

    // lower endpoint
    switch (outc.lo_info.kind) {
      case EndpointKind::Zero: {
        BoundAcc acc;
        acc.add(E(i), A(i));
        lo_b = {acc.best, "marginal buyer: eps_i / alpha_i"};
        break;
      }
      case EndpointKind::SupportLow: {
        lo_b = {0.0, "pinned at the domain floor"};
        break;
      }
      case EndpointKind::Crossing:
      case EndpointKind::CapStart: {
        // true boundary may be a crossing with any earlier model or the
        // model's own marginal buyer; take the worst admissible formula
        BoundAcc acc;
        acc.add(E(i), A(i));
        for (int j = 0; j < i; ++j) acc.add(E(i) + E(j), A(i) - B(j));
        lo_b = {acc.best, "crossing: max over eps_i/alpha_i, (eps_i+eps_j)/(alpha_i-beta_j)"};
        break;
      }
      default:
        lo_b = {std::nullopt, "unclassified endpoint"};
        break;
    }

    // upper endpoint
    switch (outc.hi_info.kind) {
      case EndpointKind::AccuracyCap: {
        if (i == n - 1) {
          hi_b = {0.0, "accuracy cap of the last model"};
        } else {
          BoundAcc acc;
          acc.add(0.0, 1.0);  // the cap itself is exact
          for (int j = i + 1; j < n; ++j) acc.add(E(i) + E(j), B(j) - A(i));
          hi_b = {acc.best, "cap: max over 0, (eps_i+eps_j)/(beta_j-alpha_i)"};
        }
        break;
      }
      case EndpointKind::Crossing:
      case EndpointKind::Zero: {
        BoundAcc acc;
        acc.add(E(i), A(i));
        for (int j = i + 1; j < n; ++j) acc.add(E(i) + E(j), B(j) - A(i));
        hi_b = {acc.best, "crossing: max over eps_i/alpha_i, (eps_i+eps_j)/(beta_j-alpha_i)"};
        break;
      }
      default:
        hi_b = {std::nullopt, "unclassified endpoint"};
        break;
    }

    if (lo_b.bound && hi_b.bound) {
      rep.revenue_bound[static_cast<std::size_t>(i)] =
          sol.prices[static_cast<std::size_t>(i)] * rep.lambda_sup * (*lo_b.bound + *hi_b.bound);
    }
  }
  return rep;
}

PerturbationOutcome empirical_perturbation_test(const Scenario& scn, std::vector<double> eps,
                                                int trials, std::uint64_t seed, int oracle_grid) {
  if (trials < 1) throw ConfigError("empirical_perturbation_test: trials must be >= 1");
  const int n = scn.n();
  if (static_cast<int>(eps.size()) == 1 && n > 1) eps.assign(static_cast<std::size_t>(n), eps[0]);
  if (static_cast<int>(eps.size()) != n)
    throw ConfigError("empirical_perturbation_test: eps size does not match model count");

  PerturbationOutcome out;
  out.base = solve_chain(scn);
  LipschitzProfile prof = lipschitz_profile(scn, out.base, 201);
  out.report = endpoint_error_bounds(scn, out.base, eps, prof);
  out.full_shift_lower_dev.assign(static_cast<std::size_t>(n), 0.0);

  const auto accs = scn.accuracies();
  std::mt19937_64 rng(seed);
  const double dx = (scn.dist.hi() - scn.dist.lo()) / oracle_grid;
  const double slack = 2.0 * dx;

  for (int t = 0; t < trials; ++t) {
    UtilityFamily fam = scn.family;
    for (int i = 0; i < n; ++i) {
      double delta;
      if (t == 0) {
        delta = eps[static_cast<std::size_t>(i)];
      } else {
        std::uniform_real_distribution<double> u(-eps[static_cast<std::size_t>(i)],
                                                 eps[static_cast<std::size_t>(i)]);
        delta = u(rng);
      }
      fam.members[static_cast<std::size_t>(i)].offset += delta;
    }
    OracleAllocation oracle = oracle_allocate(out.base.prices, fam, accs, scn.dist, oracle_grid);
    for (int i = 0; i < n; ++i) {
      const auto& iv = out.base.alloc.intervals[static_cast<std::size_t>(i)];
      const auto& set = oracle.sets[static_cast<std::size_t>(i)];
      const bool true_empty = set.first > set.last;
      if (iv.empty && true_empty) {
        out.records.push_back({t, i, 0.0, 0.0, 0.0});
        continue;
      }
      double lo_dev, hi_dev;
      if (iv.empty != true_empty) {
        // appeared/disappeared market: deviation is half the interval width
        AllocationInterval nz = iv;
        if (iv.empty) nz = {false, set.a_first - 0.5 * dx, set.a_last + 0.5 * dx};
        lo_dev = hi_dev = 0.5 * (nz.hi - nz.lo);
      } else {
        double alo = std::clamp(iv.lo, scn.dist.lo(), scn.dist.hi());
        double ahi = std::clamp(iv.hi, scn.dist.lo(), scn.dist.hi());
        lo_dev = std::abs(alo - (set.a_first - 0.5 * dx));
        hi_dev = std::abs(ahi - (set.a_last + 0.5 * dx));
      }
      double rev_dev = std::abs(out.base.revenues[static_cast<std::size_t>(i)] -
                                oracle.revenues[static_cast<std::size_t>(i)]);
      out.records.push_back({t, i, lo_dev, hi_dev, rev_dev});
      out.max_endpoint_dev = std::max({out.max_endpoint_dev, lo_dev, hi_dev});
      out.max_revenue_dev = std::max(out.max_revenue_dev, rev_dev);
      if (t == 0) out.full_shift_lower_dev[static_cast<std::size_t>(i)] = lo_dev;

      const auto& lb = out.report.lower[static_cast<std::size_t>(i)].bound;
      const auto& ub = out.report.upper[static_cast<std::size_t>(i)].bound;
      const auto& rb = out.report.revenue_bound[static_cast<std::size_t>(i)];
      if (lb && lo_dev > *lb + slack) out.within_bounds = false;
      if (ub && hi_dev > *ub + slack) out.within_bounds = false;
      if (rb &&
          rev_dev > *rb + out.base.prices[static_cast<std::size_t>(i)] *
                              scn.dist.sup_density() * 2.0 * slack)
        out.within_bounds = false;
    }
  }
  return out;
}

}  // namespace pricechain
