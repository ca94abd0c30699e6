#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pricechain/dual_pricing.hpp"
#include "pricechain/dynamic_pricing.hpp"
#include "pricechain/static_pricing.hpp"

namespace pricechain {

struct RobustnessConfig {
  std::vector<double> epsilon{0.01};  // scalar broadcasts to every model
  int trials = 20;
  std::uint64_t seed = 0;
  int oracle_grid = 20000;
};

struct DynamicConfig {
  std::vector<double> init;  // empty: start at zero prices
  int max_iter = 200;
  double tol = 1e-6;
};

/// Full parsed scenario file: the primal scenario plus the optional
/// mode-specific sections.
struct ScenarioDocument {
  std::string mode = "static";
  std::uint64_t seed = 0;
  Scenario scenario;
  std::optional<QDScenario> quasi_dual;
  std::optional<DualScenario> dual;
  RobustnessConfig robustness;
  DynamicConfig dynamic;
  bool has_models = false;  // quasi-dual-only files may omit the primal part
};

/// Parses and validates a JSON scenario document. Errors carry the
/// dotted path to the offending field. The primal part (when present) is
/// checked against the utility axioms and accuracy compatibility.
ScenarioDocument parse_scenario_text(const std::string& text);
ScenarioDocument parse_scenario_file(const std::string& path);

/// Round-trip serialization for replay files.
std::string scenario_to_json(const ScenarioDocument& doc);

/// One CSV row per model; the canonical text output of every mode.
struct SolutionRow {
  int model = 0;  // 1-based
  double cost = 0.0;
  double accuracy = 0.0;
  double price = 0.0;
  bool empty = true;
  double alloc_lo = 0.0;
  double alloc_hi = 0.0;
  double revenue = 0.0;
  double profit = 0.0;
  std::string case_kind;
};

std::vector<SolutionRow> rows_from_solution(const Scenario& scn, const ChainSolution& sol);
std::vector<SolutionRow> rows_from_qd_solution(const QDScenario& scn, const QDSolution& sol);

/// Header "model,cost,accuracy,price,alloc_lo,alloc_hi,revenue,profit,case_kind";
/// numbers printed with %.12g so identical inputs give identical bytes.
std::string csv_from_rows(const std::vector<SolutionRow>& rows);

/// Per-iteration price trace of the dynamic mode: iter,p_1,...,p_n.
std::string csv_from_price_trace(const std::vector<std::vector<double>>& trace);

/// Number-line chart of the allocation intervals. Renders only what the CSV
/// rows contain; no further computation.
std::string svg_from_rows(const std::vector<SolutionRow>& rows, double a_lo, double a_hi);

/// Seed / tolerance / version stamp for the result bundle.
std::string run_metadata(const ScenarioDocument& doc);

}  // namespace pricechain
