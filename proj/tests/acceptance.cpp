// Acceptance harness: one pass/fail line per criterion, exit 0 only if all
// pass. Reference numbers are hand-derived from the closed-form fixtures and
// confirmed here by independent brute-force oracles.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pricechain/dual_pricing.hpp"
#include "pricechain/dynamic_pricing.hpp"
#include "pricechain/generator.hpp"
#include "pricechain/robustness.hpp"
#include "pricechain/scenario_io.hpp"
#include "fixtures.hpp"

using namespace pricechain;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what) {
  std::printf("criterion %2d: %s - %s\n", criterion, pass ? "PASS" : "FAIL", what.c_str());
  if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Suite {
  std::vector<Scenario> scenarios;
  std::vector<ChainSolution> solutions;
};

// ---------------------------------------------------------------------------

void criterion_1_fixture() {
  auto t0 = Clock::now();
  Scenario s2 = pctest::make_s2();
  ChainSolution sol = solve_chain(s2);
  double solve_secs = seconds_since(t0);

  bool pass = true;
  std::ostringstream why;
  auto close = [&](double got, double want, const char* name) {
    if (std::abs(got - want) > 1e-3) {
      pass = false;
      why << name << "=" << got << " want " << want << "; ";
    }
  };
  close(sol.prices[0], 0.3, "p1");
  close(sol.prices[1], 1.2, "p2");
  close(sol.alloc.intervals[0].lo, 0.3, "a1-");
  close(sol.alloc.intervals[0].hi, 0.6, "a1+");
  close(sol.alloc.intervals[1].lo, 0.6, "a2-");
  close(sol.alloc.intervals[1].hi, 0.9, "a2+");
  close(sol.revenues[0], 0.09, "r1");
  close(sol.revenues[1], 0.36, "r2");
  close(sol.objective, 0.30, "objective");
  if (solve_secs >= 1.0) {
    pass = false;
    why << "solve took " << solve_secs << "s; ";
  }

  // independent confirmation: coarse 2-D price grid scored by the buyer-grid
  // oracle must not beat the solver, and the fine oracle must reproduce the
  // solver's revenues at its prices
  const auto accs = s2.accuracies();
  double best_grid = 0.0;
  for (double p1 = 0.0; p1 <= 1.2 + 1e-12; p1 += 0.05)
    for (double p2 = 0.0; p2 <= 1.2 + 1e-12; p2 += 0.05) {
      auto o = oracle_allocate({p1, p2}, s2.family, accs, s2.dist, 2000);
      best_grid = std::max(best_grid, o.revenues[0] + o.revenues[1]);
    }
  double solver_total = sol.revenues[0] + sol.revenues[1];
  if (best_grid > solver_total + 1e-3) {
    pass = false;
    why << "2-D grid found " << best_grid << " > solver " << solver_total << "; ";
  }
  auto fine = oracle_allocate(sol.prices, s2.family, accs, s2.dist, 100000);
  if (std::abs(fine.revenues[0] - 0.09) > 1e-3 || std::abs(fine.revenues[1] - 0.36) > 1e-3) {
    pass = false;
    why << "fine oracle revenues (" << fine.revenues[0] << "," << fine.revenues[1] << "); ";
  }
  report(1, pass, pass ? "worked fixture reproduced and oracle-confirmed in under 1 s"
                       : why.str());
}

void criterion_2_connectivity(const Suite& suite) {
  auto t0 = Clock::now();
  bool pass = true;
  std::ostringstream why;
  std::mt19937_64 rng(9001);
  int checked = 0;

  auto check_sets = [&](const Scenario& scn, const std::vector<double>& prices,
                        const char* label) {
    auto oracle = oracle_allocate(prices, scn.family, scn.accuracies(), scn.dist, 10000);
    int prev_last = -1;
    for (std::size_t i = 0; i < oracle.sets.size(); ++i) {
      const auto& s = oracle.sets[i];
      if (s.first > s.last) continue;
      if (s.gap_cells > 1) {
        pass = false;
        why << label << " scenario " << checked << " model " << i + 1 << ": " << s.gap_cells
            << " gap cells; ";
      }
      if (s.first <= prev_last) {
        pass = false;
        why << label << " scenario " << checked << " model " << i + 1 << ": out of order; ";
      }
      prev_last = s.last;
    }
  };

  for (std::size_t k = 0; k < suite.scenarios.size(); ++k) {
    const Scenario& scn = suite.scenarios[k];
    checked = static_cast<int>(k);
    check_sets(scn, suite.solutions[k].prices, "solved");
    std::vector<double> random_prices(static_cast<std::size_t>(scn.n()));
    for (double& p : random_prices)
      p = std::uniform_real_distribution<double>(0.0, scn.price_cap)(rng);
    check_sets(scn, random_prices, "random");
  }
  double secs = seconds_since(t0);
  if (secs >= 60.0) {
    pass = false;
    why << "took " << secs << "s; ";
  }
  std::ostringstream ok;
  ok << "buyer sets contiguous and ordered for " << suite.scenarios.size()
     << " scenarios at solved and random prices (" << secs << " s)";
  report(2, pass, pass ? ok.str() : why.str());
}

void criterion_3_single_crossing(const Suite& suite) {
  bool pass = true;
  std::ostringstream why;
  int steps = 0;
  for (std::size_t k = 0; k < suite.scenarios.size(); ++k) {
    const Scenario& scn = suite.scenarios[k];
    for (int i = 1; i < scn.n(); ++i) {
      ChainSolution prefix = solve_chain_prefix(scn, i);
      if (prefix.envelope.empty()) continue;
      ++steps;
      const auto& next = scn.family.members[static_cast<std::size_t>(i)];
      double p = suite.solutions[k].prices[static_cast<std::size_t>(i)];
      int sign = 0, changes = 0;
      for (const auto& piece : prefix.envelope.pieces) {
        const int pts = 1 + static_cast<int>(10000.0 * (piece.hi - piece.lo) /
                                             std::max(1e-12, prefix.envelope.support_hi() -
                                                                 prefix.envelope.support_lo()));
        for (int g = 0; g <= pts; ++g) {
          double a = piece.lo + (piece.hi - piece.lo) * g / pts;
          double d = next.value(p, a) - piece.fn.value(piece.price, a);
          int s = d > 1e-12 ? 1 : (d < -1e-12 ? -1 : 0);
          if (s != 0) {
            if (sign != 0 && s != sign) ++changes;
            sign = s;
          }
        }
      }
      if (changes > 1) {
        pass = false;
        why << "scenario " << k << " step " << i + 1 << ": " << changes << " sign changes; ";
      }
      sign = 0;
    }
  }
  std::ostringstream ok;
  ok << "at most one envelope crossing at each of " << steps << " accepted steps";
  report(3, pass, pass ? ok.str() : why.str());
}

void criterion_4_continuity(const Suite& suite) {
  bool pass = true;
  std::ostringstream why;
  std::vector<Scenario> scns = {pctest::make_s2()};
  for (std::size_t k = 0; k < 20 && k < suite.scenarios.size(); ++k)
    scns.push_back(suite.scenarios[k]);

  auto max_jump = [](const std::vector<std::pair<double, double>>& pts) {
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
      m = std::max(m, std::abs(pts[i + 1].second - pts[i].second));
    return m;
  };
  for (std::size_t k = 0; k < scns.size(); ++k) {
    const Scenario& scn = scns[k];
    int model = scn.n() - 1;
    auto coarse = revenue_curve(scn, model, 0.01);
    double slope = 0.0;
    for (std::size_t i = 0; i + 1 < coarse.size(); ++i)
      slope = std::max(slope, std::abs(coarse[i + 1].second - coarse[i].second) / 0.01);
    double j1 = max_jump(revenue_curve(scn, model, 1e-4));
    double j2 = max_jump(revenue_curve(scn, model, 5e-5));
    if (j1 > 10.0 * 1e-4 * slope + 1e-12) {
      pass = false;
      why << "scenario " << k << ": jump " << j1 << " vs bound " << 10.0 * 1e-4 * slope << "; ";
    }
    if (j2 > 0.51 * j1 + 1e-9) {  // 2% slack on "halves": kinks shift between grids
      pass = false;
      why << "scenario " << k << ": halving step left jump " << j2 << " (was " << j1 << "); ";
    }
  }
  report(4, pass,
         pass ? "revenue curves continuous: jumps bounded by slope x step and halve with the step"
              : why.str());
}

void criterion_5_oracle_equivalence(const Suite& suite) {
  bool pass = true;
  std::ostringstream why;
  for (std::size_t k = 0; k < suite.scenarios.size(); ++k) {
    const Scenario& scn = suite.scenarios[k];
    const ChainSolution& sol = suite.solutions[k];
    auto oracle = oracle_allocate(sol.prices, scn.family, scn.accuracies(), scn.dist, 10000);
    double lambda = scn.dist.sup_density();
    for (int i = 0; i < scn.n(); ++i) {
      double tol =
          sol.prices[static_cast<std::size_t>(i)] * lambda * 2.0 * oracle.grid_spacing + 1e-12;
      double diff = std::abs(sol.revenues[static_cast<std::size_t>(i)] -
                             oracle.revenues[static_cast<std::size_t>(i)]);
      if (diff > tol) {
        pass = false;
        why << "scenario " << k << " model " << i + 1 << ": |" << sol.revenues[i] << " - "
            << oracle.revenues[i] << "| > " << tol << "; ";
      }
    }
  }
  report(5, pass,
         pass ? "analytic revenues match the grid oracle within p*density*2*spacing everywhere"
              : why.str());
}

void criterion_6_stationarity(const Suite& suite) {
  bool pass = true;
  std::ostringstream why;
  int cases_checked = 0;
  for (std::size_t k = 0; k < suite.scenarios.size(); ++k) {
    const Scenario& scn = suite.scenarios[k];
    const auto accs = scn.accuracies();
    SolverConfig grid_only = scn.solver;
    grid_only.separable_candidates = false;
    SolverConfig with_cands = scn.solver;
    with_cands.separable_candidates = true;

    for (int i = 1; i < scn.n(); ++i) {
      ChainSolution prefix = solve_chain_prefix(scn, i);
      const auto& next = scn.family.members[static_cast<std::size_t>(i)];
      double A = accs[static_cast<std::size_t>(i)];
      auto cds = enumerate_cases(prefix.envelope, next, A, scn.price_cap);
      for (const auto& cd : cds) {
        if (!cd.feasible) continue;
        CaseOptimum o1 =
            optimize_case(cd, prefix.envelope, next, A, scn.dist, scn.price_cap, grid_only);
        CaseOptimum o2 =
            optimize_case(cd, prefix.envelope, next, A, scn.dist, scn.price_cap, with_cands);
        if (!o1.feasible || !o2.feasible) continue;
        ++cases_checked;
        bool price_ok = std::abs(o1.price - o2.price) <= 1e-6;
        bool value_tie = std::abs(o1.objective - o2.objective) <=
                         1e-9 * std::max(1.0, std::abs(o1.objective));
        if (!price_ok && !value_tie) {
          pass = false;
          why << "scenario " << k << " step " << i + 1 << " case "
              << case_kind_name(cd.kind, cd.ref_piece) << ": grid " << o1.price
              << " vs candidates " << o2.price << "; ";
        }
        // an interior optimum of a smooth case must be a stationary point
        if ((cd.kind == CaseKind::Monopolist || cd.kind == CaseKind::FullCoverage ||
             cd.kind == CaseKind::Competition) &&
            o2.price > cd.p_lo + 1e-6 && o2.price < cd.p_hi - 1e-6) {
          std::vector<StationaryCandidate> cands;
          auto parts = SeparableParts::from(next);
          // the FOC only governs optima whose market boundary moves smoothly:
          // skip optima where the boundary is clamped to a domain or support
          // edge (there the case objective is piecewise linear, not smooth)
          auto inside = [&](double a, double lo, double hi) {
            return a > lo + 1e-7 && a < hi - 1e-7 && a > scn.dist.lo() + 1e-7 &&
                   a < scn.dist.hi() - 1e-7;
          };
          if (cd.kind == CaseKind::Competition && cd.ref_piece >= 0 &&
              cd.ref_piece < static_cast<int>(prefix.envelope.pieces.size())) {
            const auto& piece = prefix.envelope.pieces[static_cast<std::size_t>(cd.ref_piece)];
            auto astar = indifference_accuracy(parts, SeparableParts::from(piece.fn), o2.price,
                                               piece.price, scn.family.a_lo, scn.family.a_hi);
            if (!astar || !inside(*astar, piece.lo, std::min(piece.hi, A))) continue;
            try {
              cands = stationary_competition(parts, SeparableParts::from(piece.fn), piece.price,
                                             A, scn.dist, scn.price_cap);
            } catch (const ConfigError&) {
              continue;
            }
          } else {
            auto aprime = marginal_buyer(parts, o2.price, scn.family.a_lo, scn.family.a_hi);
            if (!aprime || !inside(*aprime, scn.family.a_lo, A)) continue;
            cands = stationary_single(parts, A, scn.dist, scn.price_cap);
          }
          // golden refinement localizes a flat quadratic top only to about
          // sqrt(eps) relative, so scale the 1e-6 proximity with the price
          const double prox = 1e-6 * std::max(1.0, o2.price);
          bool matched = false;
          for (const auto& c : cands) {
            if (std::abs(c.residual) > 1e-9) {
              pass = false;
              why << "scenario " << k << ": residual " << c.residual << "; ";
            }
            if (std::abs(c.price - o2.price) <= prox) matched = true;
          }
          if (!matched) {
            pass = false;
            why << "scenario " << k << " step " << i + 1 << " case "
                << case_kind_name(cd.kind, cd.ref_piece) << ": interior optimum " << o2.price
                << " has no stationary candidate; ";
          }
        }
      }
    }
  }
  std::ostringstream ok;
  ok << "grid+refine agrees with stationary candidates/endpoints on " << cases_checked
     << " case problems (FOC residuals <= 1e-9)";
  report(6, pass, pass ? ok.str() : why.str());
}

void criterion_7_dynamic() {
  bool pass = true;
  std::ostringstream why;
  Scenario s2 = pctest::make_s2();
  EquilibriumResult eq = find_equilibrium(s2, {0.1, 0.1}, 200, 1e-6);
  if (!eq.prices) {
    pass = false;
    why << "no equilibrium found; ";
  } else {
    if (std::abs((*eq.prices)[0] - 0.3) > 1e-6 || std::abs((*eq.prices)[1] - 1.2) > 1e-6) {
      pass = false;
      why << "converged to (" << (*eq.prices)[0] << "," << (*eq.prices)[1] << "); ";
    }
    if (!verify_equilibrium(*eq.prices, s2, 1e-4).ok) {
      pass = false;
      why << "verification failed at the fixed point; ";
    }
  }
  VerifyResult bad = verify_equilibrium({0.3, 0.75}, s2, 1e-4);
  if (bad.ok) {
    pass = false;
    why << "deviation point wrongly accepted; ";
  }
  if (std::abs(bad.gaps[1] - 0.0225) > 1e-3) {
    pass = false;
    why << "T2 gap " << bad.gaps[1] << " want 0.0225 +/- 1e-3; ";
  }
  report(7, pass,
         pass ? "best-response iteration reaches (0.3, 1.2); deviation point rejected with the "
                "expected gap"
              : why.str());
}

void criterion_8_robustness() {
  auto t0 = Clock::now();
  bool pass = true;
  std::ostringstream why;
  Scenario s2 = pctest::make_s2();
  PerturbationOutcome out = empirical_perturbation_test(s2, {0.01}, 100, 424242, 20000);
  if (!out.within_bounds) {
    pass = false;
    why << "a deviation exceeded its bound; ";
  }
  if (!out.report.lower[0].bound) {
    pass = false;
    why << "marginal-buyer bound unavailable; ";
  } else if (out.full_shift_lower_dev[0] < 0.97 * *out.report.lower[0].bound) {
    pass = false;
    why << "tightness " << out.full_shift_lower_dev[0] / *out.report.lower[0].bound
        << " < 0.97; ";
  }
  double secs = seconds_since(t0);
  if (secs >= 10.0) {
    pass = false;
    why << "took " << secs << "s; ";
  }
  std::ostringstream ok;
  ok << "100 perturbation trials within bounds; full shift reaches "
     << out.full_shift_lower_dev[0] / *out.report.lower[0].bound << " of the bound (" << secs
     << " s)";
  report(8, pass, pass ? ok.str() : why.str());
}

void criterion_9_dual() {
  bool pass = true;
  std::ostringstream why;
  ChainSolution primal = solve_chain(pctest::make_s2());
  ChainSolution dual = solve_chain_dual(pctest::make_s2_dual());
  if (std::abs(primal.objective - dual.objective) > 1e-9) {
    pass = false;
    why << "dual objective " << dual.objective << " vs primal " << primal.objective << "; ";
  }
  QDSolution qd = solve_chain_qd(pctest::make_qd1());
  if (std::abs(qd.prices[0] - 0.25) > 1e-4 || std::abs(qd.revenues[0] - 0.125) > 1e-4) {
    pass = false;
    why << "quasi-dual fixture gave p=" << qd.prices[0] << " r=" << qd.revenues[0] << "; ";
  }
  report(9, pass,
         pass ? "variable-swapped chain matches the primal objective to 1e-9; quasi-dual fixture "
                "reproduced"
              : why.str());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_10_determinism() {
  bool pass = true;
  std::ostringstream why;
  const std::string cli = PC_CLI_PATH;
  const std::string fixture = std::string(PC_FIXTURE_DIR) + "/S2.json";
  struct Run {
    std::string args;
    std::string out_a, out_b;
  };
  std::vector<Run> runs = {
      {"solve \"" + fixture + "\"", "/tmp/pc_det_a1.csv", "/tmp/pc_det_a2.csv"},
      {"robustness \"" + fixture + "\" --epsilon 0.01 --trials 10 --seed 7", "/tmp/pc_det_b1.csv",
       "/tmp/pc_det_b2.csv"},
  };
  for (const auto& r : runs) {
    std::string c1 = "\"" + cli + "\" " + r.args + " -o " + r.out_a + " 2>/dev/null";
    std::string c2 = "\"" + cli + "\" " + r.args + " -o " + r.out_b + " 2>/dev/null";
    if (std::system(c1.c_str()) != 0 || std::system(c2.c_str()) != 0) {
      pass = false;
      why << "command failed: " << r.args << "; ";
      continue;
    }
    std::string a = slurp(r.out_a), b = slurp(r.out_b);
    if (a.empty() || a != b) {
      pass = false;
      why << "outputs differ for: " << r.args << "; ";
    }
  }
  report(10, pass,
         pass ? "repeated runs with identical inputs and seeds emit byte-identical CSV"
              : why.str());
}

}  // namespace

int main() {
  criterion_1_fixture();

  Suite suite;
  suite.scenarios = generate_scenarios(2024, 200);
  for (const auto& scn : suite.scenarios) suite.solutions.push_back(solve_chain(scn));

  criterion_2_connectivity(suite);
  criterion_3_single_crossing(suite);
  criterion_4_continuity(suite);
  criterion_5_oracle_equivalence(suite);
  criterion_6_stationarity(suite);
  criterion_7_dynamic();
  criterion_8_robustness();
  criterion_9_dual();
  criterion_10_determinism();

  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 10 acceptance criteria passed\n");
  return 0;
}
