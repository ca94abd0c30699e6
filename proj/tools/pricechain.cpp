// pricechain: market pricing for a chain of models of increasing accuracy.
//
// Subcommands:
//   check       validate a scenario (or random ones) and run the invariant suite
//   solve       price the chain (--mode static | quasi-dual | dual | dynamic)
//   sweep       brute-force outer search over a training-cost grid
//   curve       sample one model's revenue-vs-price curve and report continuity
//   robustness  perturbation trials against the misspecification error bounds

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pricechain/dual_pricing.hpp"
#include "pricechain/dynamic_pricing.hpp"
#include "pricechain/generator.hpp"
#include "pricechain/robustness.hpp"
#include "pricechain/scenario_io.hpp"

namespace pc = pricechain;

namespace {

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw pc::ConfigError("cannot write: " + path);
  out << content;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-")
    std::cout << content;
  else
    write_file(path, content);
}

pc::ScenarioDocument load(const std::string& path) {
  pc::ScenarioDocument doc = pc::parse_scenario_file(path);
  if (const char* env = std::getenv("PRICECHAIN_SEED")) {
    doc.seed = std::strtoull(env, nullptr, 10);
    doc.robustness.seed = doc.seed;
  }
  return doc;
}

int report_properties(const pc::PropertyReport& rep, const std::string& label) {
  for (const auto& e : rep.entries) {
    std::cout << label << e.name << ": " << (e.pass ? "pass" : "FAIL");
    if (!e.pass && !e.detail.empty()) std::cout << " (" << e.detail << ")";
    std::cout << "\n";
  }
  return rep.all_pass() ? 0 : 1;
}

int cmd_check(const std::string& file, int random_count, std::uint64_t seed, int oracle_grid) {
  if (random_count > 0) {
    auto scns = pc::generate_scenarios(seed, random_count);
    int bad = 0;
    for (std::size_t k = 0; k < scns.size(); ++k) {
      pc::PropertyReport rep = pc::assert_market_properties(scns[k], oracle_grid);
      if (!rep.all_pass()) {
        ++bad;
        report_properties(rep, "scenario " + std::to_string(k) + ": ");
      }
    }
    std::cout << (static_cast<int>(scns.size()) - bad) << "/" << scns.size()
              << " random scenarios passed the invariant suite (seed " << seed << ")\n";
    return bad == 0 ? 0 : 1;
  }
  pc::ScenarioDocument doc = load(file);
  if (!doc.has_models) {
    std::cout << "scenario parsed; no primal models to check\n";
    return 0;
  }
  std::cout << "axioms: pass\naccuracy-compatibility: pass\n";  // enforced by the parser
  return report_properties(pc::assert_market_properties(doc.scenario, oracle_grid), "");
}

std::vector<pc::SolutionRow> rows_from_dual(const pc::DualScenario& ds,
                                            const pc::ChainSolution& sol) {
  // the dual solution is a ChainSolution over the interchanged axes; reuse
  // the primal row builder with the menu playing the accuracy column
  pc::Scenario view;
  view.costs = ds.costs;
  view.accuracy_override = ds.menu;
  view.family = ds.family;
  view.dist = ds.mu;
  view.price_cap = ds.choice_cap;
  view.solver = ds.solver;
  return pc::rows_from_solution(view, sol);
}

int solve_static(const pc::ScenarioDocument& doc, const std::string& out, const std::string& svg,
                 int property_grid) {
  pc::ChainSolution sol = pc::solve_chain(doc.scenario);
  pc::PropertyReport rep = pc::assert_market_properties(doc.scenario, property_grid);
  auto rows = pc::rows_from_solution(doc.scenario, sol);
  emit(out, pc::csv_from_rows(rows));
  if (!svg.empty())
    write_file(svg, pc::svg_from_rows(rows, doc.scenario.family.a_lo, doc.scenario.family.a_hi));
  if (!rep.all_pass()) {
    std::cerr << "invariant suite failed on the emitted solution:\n";
    for (const auto& e : rep.entries)
      if (!e.pass) std::cerr << "  " << e.name << ": " << e.detail << "\n";
    return 1;
  }
  return 0;
}

int solve_quasi_dual(const pc::ScenarioDocument& doc, const std::string& out,
                     const std::string& svg) {
  if (!doc.quasi_dual) {
    std::cerr << "error: mode quasi-dual needs a quasi_dual section in the scenario file\n";
    return 2;
  }
  pc::QDSolution sol = pc::solve_chain_qd(*doc.quasi_dual);
  for (const auto& n : sol.notes) std::cerr << "note: " << n << "\n";
  auto rows = pc::rows_from_qd_solution(*doc.quasi_dual, sol);
  emit(out, pc::csv_from_rows(rows));
  if (!svg.empty())
    write_file(svg, pc::svg_from_rows(rows, doc.quasi_dual->family.pbar_lo,
                                      doc.quasi_dual->family.pbar_hi));
  return 0;
}

int solve_dual(const pc::ScenarioDocument& doc, const std::string& out, const std::string& svg) {
  if (!doc.dual) {
    std::cerr << "error: mode dual needs a dual section in the scenario file\n";
    return 2;
  }
  pc::ChainSolution sol = pc::solve_chain_dual(*doc.dual);
  auto rows = rows_from_dual(*doc.dual, sol);
  emit(out, pc::csv_from_rows(rows));
  if (!svg.empty())
    write_file(svg, pc::svg_from_rows(rows, doc.dual->mu.lo(), doc.dual->mu.hi()));
  return 0;
}

int solve_dynamic(const pc::ScenarioDocument& doc, const std::string& out, const std::string& svg,
                  const std::string& trace_path, std::vector<double> init_flag, int max_iter,
                  double tol) {
  const pc::Scenario& scn = doc.scenario;
  std::vector<double> init =
      !init_flag.empty() ? std::move(init_flag)
                         : (!doc.dynamic.init.empty()
                                ? doc.dynamic.init
                                : std::vector<double>(static_cast<std::size_t>(scn.n()), 0.0));
  if (static_cast<int>(init.size()) != scn.n()) {
    std::cerr << "error: --init needs one price per model\n";
    return 2;
  }
  pc::EquilibriumResult eq = pc::find_equilibrium(scn, init, max_iter, tol);
  if (!trace_path.empty()) write_file(trace_path, pc::csv_from_price_trace(eq.trace));
  if (!eq.prices) {
    std::cerr << "no equilibrium found after " << eq.iterations
              << " iterations (largest best-response gap ";
    double g = 0.0;
    for (double x : eq.gaps) g = std::max(g, x);
    std::cerr << fmt12(g) << ")\n";
    return 1;
  }
  // render the equilibrium as solution rows via the exact buyer partition
  const auto accs = scn.accuracies();
  auto cells = pc::winner_partition(*eq.prices, scn.family, accs, scn.family.a_lo,
                                    scn.family.a_hi);
  auto revs = pc::partition_revenue(cells, *eq.prices, scn.dist);
  std::vector<pc::SolutionRow> rows;
  for (int i = 0; i < scn.n(); ++i) {
    pc::SolutionRow r;
    r.model = i + 1;
    r.cost = scn.costs[static_cast<std::size_t>(i)];
    r.accuracy = accs[static_cast<std::size_t>(i)];
    r.price = (*eq.prices)[static_cast<std::size_t>(i)];
    for (const auto& c : cells) {
      if (c.winner != i) continue;
      if (r.empty) {
        r.empty = false;
        r.alloc_lo = c.lo;
        r.alloc_hi = c.hi;
      } else {
        r.alloc_lo = std::min(r.alloc_lo, c.lo);
        r.alloc_hi = std::max(r.alloc_hi, c.hi);
      }
    }
    r.revenue = revs[static_cast<std::size_t>(i)];
    r.profit = std::max(0.0, r.revenue - r.cost);
    r.case_kind = "equilibrium";
    rows.push_back(std::move(r));
  }
  emit(out, pc::csv_from_rows(rows));
  if (!svg.empty()) write_file(svg, pc::svg_from_rows(rows, scn.family.a_lo, scn.family.a_hi));
  std::cerr << "equilibrium after " << eq.iterations << " iterations\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Revenue-optimal pricing for a chain of models sold to heterogeneous buyers"};
  app.require_subcommand(1);

  std::string file, out, svg, meta, replay, mode = "static", trace_path;
  int random_count = 0, oracle_grid = 10000, max_iter = 200, trials = -1, sweep_n = 0, model = 1;
  std::uint64_t seed = 42;
  double tol = 1e-6, step = 1e-4;
  std::vector<double> init_flag, epsilon, grid;

  auto* check = app.add_subcommand("check", "Validate a scenario and run the invariant suite");
  check->add_option("file", file, "scenario JSON file");
  check->add_option("--random", random_count, "generate and check N random scenarios instead");
  check->add_option("--seed", seed, "generator seed (default 42)");
  check->add_option("--oracle-grid", oracle_grid, "buyer-grid size for the brute-force oracle");

  auto* solve = app.add_subcommand("solve", "Price the chain and emit the solution CSV");
  solve->add_option("file", file, "scenario JSON file")->required();
  solve->add_option("--mode", mode, "static | quasi-dual | dual | dynamic (default: file mode)");
  solve->add_option("-o,--output", out, "CSV output path (default stdout)");
  solve->add_option("--svg", svg, "also render the allocation chart");
  solve->add_option("--meta", meta, "write run metadata");
  solve->add_option("--replay", replay, "write the parsed scenario back as JSON");
  solve->add_option("--init", init_flag, "dynamic: initial prices");
  solve->add_option("--max-iter", max_iter, "dynamic: iteration cap (default 200)");
  solve->add_option("--tol", tol, "dynamic: convergence tolerance (default 1e-6)");
  solve->add_option("--trace", trace_path, "dynamic: per-iteration price trace CSV");

  auto* sweep = app.add_subcommand("sweep", "Outer search over a training-cost grid");
  sweep->add_option("file", file, "scenario JSON file")->required();
  sweep->add_option("--grid", grid, "candidate training costs")->required();
  sweep->add_option("--n", sweep_n, "chain length (default: models in the file)");
  sweep->add_option("-o,--output", out, "CSV output path (default stdout)");

  auto* curve = app.add_subcommand("curve", "Sample one model's revenue-vs-price curve");
  curve->add_option("file", file, "scenario JSON file")->required();
  curve->add_option("--model", model, "1-based model index (default 1)");
  curve->add_option("--step", step, "price step (default 1e-4)");
  curve->add_option("-o,--output", out, "CSV output path (default stdout)");

  auto* robust = app.add_subcommand("robustness", "Perturbation trials vs the error bounds");
  robust->add_option("file", file, "scenario JSON file")->required();
  robust->add_option("--epsilon", epsilon, "utility misspecification radius (scalar or per-model)");
  robust->add_option("--trials", trials, "number of perturbation draws");
  robust->add_option("--seed", seed, "perturbation seed");
  robust->add_option("-o,--output", out, "CSV output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) {
      if (random_count <= 0 && file.empty()) {
        std::cerr << "error: give a scenario file or --random N\n";
        return 2;
      }
      return cmd_check(file, random_count, seed, oracle_grid);
    }

    if (solve->parsed()) {
      pc::ScenarioDocument doc = load(file);
      if (solve->count("--mode") == 0 && !doc.mode.empty()) mode = doc.mode;
      if (mode == "ultra-dual") {
        std::cerr << "error: mode 'ultra-dual' is intentionally not implemented; "
                     "supported modes are static, quasi-dual, dual, dynamic\n";
        return 2;
      }
      if (!replay.empty()) write_file(replay, pc::scenario_to_json(doc));
      if (!meta.empty()) write_file(meta, pc::run_metadata(doc));
      if (mode == "static") {
        if (!doc.has_models) {
          std::cerr << "error: mode static needs models[] in the scenario file\n";
          return 2;
        }
        return solve_static(doc, out, svg, oracle_grid);
      }
      if (mode == "quasi-dual") return solve_quasi_dual(doc, out, svg);
      if (mode == "dual") return solve_dual(doc, out, svg);
      if (mode == "dynamic") {
        if (!doc.has_models) {
          std::cerr << "error: mode dynamic needs models[] in the scenario file\n";
          return 2;
        }
        if (solve->count("--max-iter") == 0) max_iter = doc.dynamic.max_iter;
        if (solve->count("--tol") == 0) tol = doc.dynamic.tol;
        return solve_dynamic(doc, out, svg, trace_path, init_flag, max_iter, tol);
      }
      std::cerr << "error: unknown mode '" << mode << "'\n";
      return 2;
    }

    if (sweep->parsed()) {
      pc::ScenarioDocument doc = load(file);
      if (!doc.has_models) {
        std::cerr << "error: sweep needs models[] in the scenario file\n";
        return 2;
      }
      int n = sweep_n > 0 ? sweep_n : doc.scenario.n();
      std::vector<double> best_costs;
      pc::ChainSolution sol = pc::optimize_costs(doc.scenario, grid, n, &best_costs);
      pc::Scenario chosen = doc.scenario;
      chosen.costs = best_costs;
      chosen.accuracy_override.clear();
      while (static_cast<int>(chosen.family.members.size()) < n)
        chosen.family.members.push_back(chosen.family.members.back());
      chosen.family.members.resize(static_cast<std::size_t>(n));
      emit(out, pc::csv_from_rows(pc::rows_from_solution(chosen, sol)));
      std::cerr << "objective " << fmt12(sol.objective) << " at costs";
      for (double c : best_costs) std::cerr << ' ' << fmt12(c);
      std::cerr << "\n";
      return 0;
    }

    if (curve->parsed()) {
      pc::ScenarioDocument doc = load(file);
      if (!doc.has_models || model < 1 || model > doc.scenario.n()) {
        std::cerr << "error: --model must name a model in the scenario file\n";
        return 2;
      }
      auto pts = pc::revenue_curve(doc.scenario, model - 1, step);
      std::ostringstream csv;
      csv << "price,revenue\n";
      double max_jump = 0.0;
      for (std::size_t k = 0; k < pts.size(); ++k) {
        csv << fmt12(pts[k].first) << ',' << fmt12(pts[k].second) << '\n';
        if (k > 0) max_jump = std::max(max_jump, std::abs(pts[k].second - pts[k - 1].second));
      }
      emit(out, csv.str());
      std::cerr << "max jump between consecutive samples: " << fmt12(max_jump) << " (step "
                << fmt12(step) << ")\n";
      return 0;
    }

    if (robust->parsed()) {
      pc::ScenarioDocument doc = load(file);
      if (!doc.has_models) {
        std::cerr << "error: robustness needs models[] in the scenario file\n";
        return 2;
      }
      if (!epsilon.empty()) doc.robustness.epsilon = epsilon;
      if (trials > 0) doc.robustness.trials = trials;
      if (robust->count("--seed")) doc.robustness.seed = seed;
      pc::PerturbationOutcome res = pc::empirical_perturbation_test(
          doc.scenario, doc.robustness.epsilon, doc.robustness.trials, doc.robustness.seed,
          doc.robustness.oracle_grid);
      std::ostringstream csv;
      csv << "trial,model,lo_dev,hi_dev,rev_dev,lo_bound,hi_bound,rev_bound\n";
      auto opt = [](const std::optional<double>& v) {
        return v ? fmt12(*v) : std::string("unavailable");
      };
      for (const auto& r : res.records) {
        csv << r.trial << ',' << r.model + 1 << ',' << fmt12(r.lo_dev) << ',' << fmt12(r.hi_dev)
            << ',' << fmt12(r.rev_dev) << ','
            << opt(res.report.lower[static_cast<std::size_t>(r.model)].bound) << ','
            << opt(res.report.upper[static_cast<std::size_t>(r.model)].bound) << ','
            << opt(res.report.revenue_bound[static_cast<std::size_t>(r.model)]) << '\n';
      }
      emit(out, csv.str());
      std::cerr << (res.within_bounds ? "all deviations within bounds"
                                      : "BOUND VIOLATION observed")
                << " (max endpoint dev " << fmt12(res.max_endpoint_dev) << ")\n";
      return res.within_bounds ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
