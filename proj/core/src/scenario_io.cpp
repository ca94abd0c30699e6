#include "pricechain/scenario_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pricechain {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError(path + ": " + msg);
}

const json* opt_key(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

const json& need_key(const json& j, const std::string& path, const char* key) {
  const json* v = opt_key(j, path, key);
  if (!v) fail(path + "." + key, "missing required field");
  return *v;
}

double as_num(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

std::string as_str(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

bool as_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected a boolean");
  return j.get<bool>();
}

double num_or(const json& j, const std::string& path, const char* key, double dflt) {
  const json* v = opt_key(j, path, key);
  return v ? as_num(*v, path + "." + key) : dflt;
}

std::vector<double> as_num_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t k = 0; k < j.size(); ++k)
    out.push_back(as_num(j[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

AccuracyForm parse_accuracy_form(const std::string& s, const std::string& path) {
  if (s == "linear") return AccuracyForm::Linear;
  if (s == "power") return AccuracyForm::Power;
  if (s == "log") return AccuracyForm::Log;
  fail(path, "unknown utility form '" + s + "' (expected linear, power, or log)");
}

PriceForm parse_price_form(const std::string& s, const std::string& path) {
  if (s == "linear") return PriceForm::Linear;
  if (s == "quadratic") return PriceForm::Quadratic;
  if (s == "log") return PriceForm::Log;
  fail(path, "unknown utility form '" + s + "' (expected linear, quadratic, or log)");
}

const char* accuracy_form_name(AccuracyForm f) {
  switch (f) {
    case AccuracyForm::Linear: return "linear";
    case AccuracyForm::Power: return "power";
    default: return "log";
  }
}

const char* price_form_name(PriceForm f) {
  switch (f) {
    case PriceForm::Linear: return "linear";
    case PriceForm::Quadratic: return "quadratic";
    default: return "log";
  }
}

UtilityFunction parse_utility(const json& j, const std::string& path) {
  UtilityFunction fn;
  fn.acc_form = parse_accuracy_form(as_str(need_key(j, path, "accuracy_form"),
                                           path + ".accuracy_form"),
                                    path + ".accuracy_form");
  fn.theta = as_num(need_key(j, path, "theta"), path + ".theta");
  fn.q = num_or(j, path, "q", 1.0);
  fn.price_form = parse_price_form(as_str(need_key(j, path, "price_form"), path + ".price_form"),
                                   path + ".price_form");
  fn.phi = as_num(need_key(j, path, "phi"), path + ".phi");
  fn.offset = num_or(j, path, "offset", 0.0);
  return fn;
}

BuyerDistribution parse_distribution(const json& j, const std::string& path) {
  std::string type = as_str(need_key(j, path, "type"), path + ".type");
  double lo = as_num(need_key(j, path, "lo"), path + ".lo");
  double hi = as_num(need_key(j, path, "hi"), path + ".hi");
  double mass = num_or(j, path, "mass", 1.0);
  if (type == "uniform") return BuyerDistribution::uniform(lo, hi, mass);
  if (type == "piecewise-linear") {
    const json& kn = need_key(j, path, "knots");
    if (!kn.is_array() || kn.empty()) fail(path + ".knots", "expected a non-empty array");
    std::vector<std::pair<double, double>> knots;
    for (std::size_t k = 0; k < kn.size(); ++k) {
      std::string kp = path + ".knots[" + std::to_string(k) + "]";
      if (!kn[k].is_array() || kn[k].size() != 2) fail(kp, "expected [position, density]");
      knots.emplace_back(as_num(kn[k][0], kp + "[0]"), as_num(kn[k][1], kp + "[1]"));
    }
    return BuyerDistribution::piecewise_linear(std::move(knots), mass);
  }
  if (type == "truncated-normal") {
    double mean = as_num(need_key(j, path, "mean"), path + ".mean");
    double sigma = as_num(need_key(j, path, "sigma"), path + ".sigma");
    return BuyerDistribution::truncated_normal(lo, hi, mean, sigma, mass);
  }
  fail(path + ".type",
       "unknown distribution '" + type + "' (expected uniform, piecewise-linear, or truncated-normal)");
}

CostAccuracyCurve parse_curve(const json& j, const std::string& path) {
  std::string type = as_str(need_key(j, path, "type"), path + ".type");
  if (type == "table") {
    const json& pts = need_key(j, path, "points");
    if (!pts.is_array()) fail(path + ".points", "expected an array");
    std::vector<std::pair<double, double>> table;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      std::string kp = path + ".points[" + std::to_string(k) + "]";
      if (!pts[k].is_array() || pts[k].size() != 2) fail(kp, "expected [cost, accuracy]");
      table.emplace_back(as_num(pts[k][0], kp + "[0]"), as_num(pts[k][1], kp + "[1]"));
    }
    return CostAccuracyCurve::from_table(std::move(table));
  }
  if (type == "saturating") {
    return CostAccuracyCurve::saturating(as_num(need_key(j, path, "a_hi"), path + ".a_hi"),
                                         as_num(need_key(j, path, "k"), path + ".k"));
  }
  fail(path + ".type", "unknown curve '" + type + "' (expected table or saturating)");
}

SolverConfig parse_solver(const json* j, const std::string& path) {
  SolverConfig cfg;
  if (!j) return cfg;
  cfg.case_grid = opt_key(*j, path, "case_grid")
                      ? as_int(*opt_key(*j, path, "case_grid"), path + ".case_grid")
                      : cfg.case_grid;
  cfg.root_tol = num_or(*j, path, "root_tol", cfg.root_tol);
  cfg.price_tol = num_or(*j, path, "price_tol", cfg.price_tol);
  cfg.oracle_grid = opt_key(*j, path, "oracle_grid")
                        ? as_int(*opt_key(*j, path, "oracle_grid"), path + ".oracle_grid")
                        : cfg.oracle_grid;
  cfg.axiom_grid = opt_key(*j, path, "axiom_grid")
                       ? as_int(*opt_key(*j, path, "axiom_grid"), path + ".axiom_grid")
                       : cfg.axiom_grid;
  if (const json* v = opt_key(*j, path, "separable_candidates"))
    cfg.separable_candidates = as_bool(*v, path + ".separable_candidates");
  return cfg;
}

QuasiDualUtility parse_qd_utility(const json& j, const std::string& path) {
  QuasiDualUtility fn;
  fn.price_form = parse_price_form(as_str(need_key(j, path, "price_form"), path + ".price_form"),
                                   path + ".price_form");
  fn.phi = as_num(need_key(j, path, "phi"), path + ".phi");
  fn.pbar_lin = num_or(j, path, "pbar_lin", 0.0);
  fn.pbar_quad = num_or(j, path, "pbar_quad", 0.0);
  fn.offset = num_or(j, path, "offset", 0.0);
  return fn;
}

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

json distribution_json(const BuyerDistribution& d) {
  json j;
  j["lo"] = d.lo();
  j["hi"] = d.hi();
  j["mass"] = d.total_mass();
  switch (d.kind()) {
    case BuyerDistribution::Kind::Uniform:
      j["type"] = "uniform";
      break;
    case BuyerDistribution::Kind::PiecewiseLinear: {
      j["type"] = "piecewise-linear";
      json kn = json::array();
      for (const auto& [x, y] : d.knots()) kn.push_back({x, y});
      j["knots"] = std::move(kn);
      break;
    }
    case BuyerDistribution::Kind::TruncatedNormal:
      j["type"] = "truncated-normal";
      j["mean"] = d.mean();
      j["sigma"] = d.sigma();
      break;
  }
  return j;
}

json utility_json(const UtilityFunction& fn) {
  json j;
  j["accuracy_form"] = accuracy_form_name(fn.acc_form);
  j["theta"] = fn.theta;
  if (fn.acc_form == AccuracyForm::Power) j["q"] = fn.q;
  j["price_form"] = price_form_name(fn.price_form);
  j["phi"] = fn.phi;
  j["offset"] = fn.offset;
  return j;
}

}  // namespace

ScenarioDocument parse_scenario_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("$: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("$", "expected a top-level object");

  ScenarioDocument doc;
  if (const json* v = opt_key(j, "$", "mode")) doc.mode = as_str(*v, "$.mode");
  if (const json* v = opt_key(j, "$", "seed")) {
    if (!v->is_number_integer()) fail("$.seed", "expected an integer");
    doc.seed = v->get<std::uint64_t>();
  }

  Scenario& scn = doc.scenario;
  scn.solver = parse_solver(opt_key(j, "$", "solver"), "$.solver");

  if (const json* models = opt_key(j, "$", "models")) {
    if (!models->is_array() || models->empty()) fail("$.models", "expected a non-empty array");
    doc.has_models = true;
    for (std::size_t k = 0; k < models->size(); ++k) {
      std::string mp = "$.models[" + std::to_string(k) + "]";
      const json& m = (*models)[k];
      double cost = as_num(need_key(m, mp, "cost"), mp + ".cost");
      if (!scn.costs.empty() && cost <= scn.costs.back())
        fail(mp + ".cost", "costs must be strictly increasing (index " + std::to_string(k) + ")");
      scn.costs.push_back(cost);
      scn.family.members.push_back(parse_utility(need_key(m, mp, "utility"), mp + ".utility"));
    }
    if (const json* v = opt_key(j, "$", "accuracy_override"))
      scn.accuracy_override = as_num_array(*v, "$.accuracy_override");
    if (const json* v = opt_key(j, "$", "accuracy_curve"))
      scn.curve = parse_curve(*v, "$.accuracy_curve");
    else if (scn.accuracy_override.empty())
      fail("$.accuracy_curve", "missing required field (or provide accuracy_override)");
    if (const json* v = opt_key(j, "$", "domain")) {
      scn.family.a_lo = num_or(*v, "$.domain", "a_lo", 0.0);
      scn.family.a_hi = num_or(*v, "$.domain", "a_hi", 1.0);
    }
    scn.dist = parse_distribution(need_key(j, "$", "distribution"), "$.distribution");
    scn.price_cap = as_num(need_key(j, "$", "price_cap"), "$.price_cap");
    scn.family.price_cap = scn.price_cap;

    try {
      scn.validate();
    } catch (const ConfigError& e) {
      fail("$", std::string("invalid scenario: ") + e.what());
    }
    CompatibilityReport ax = check_axioms(scn.family, scn.solver.axiom_grid);
    if (!ax.pass) {
      const auto& v = ax.violations.front();
      fail("$.models", "axiom failure at (p=" + fmt12(v.p) + ", a=" + fmt12(v.a) + "): " +
                           v.description);
    }
    CompatibilityReport cp = check_accuracy_compatibility(scn.family, scn.solver.axiom_grid);
    if (!cp.pass) {
      const auto& v = cp.violations.front();
      fail("$.models", "accuracy-compatibility failure for models " + std::to_string(v.i + 1) +
                           "," + std::to_string(v.j + 1) + " at (p=" + fmt12(v.p) + ", p'=" +
                           fmt12(v.p2) + ", a=" + fmt12(v.a) + "): " + v.description);
    }
  }

  if (const json* r = opt_key(j, "$", "robustness")) {
    const json* e = opt_key(*r, "$.robustness", "epsilon");
    if (e) {
      if (e->is_number())
        doc.robustness.epsilon = {e->get<double>()};
      else
        doc.robustness.epsilon = as_num_array(*e, "$.robustness.epsilon");
    }
    if (const json* v = opt_key(*r, "$.robustness", "trials"))
      doc.robustness.trials = as_int(*v, "$.robustness.trials");
    if (const json* v = opt_key(*r, "$.robustness", "seed")) {
      if (!v->is_number_integer()) fail("$.robustness.seed", "expected an integer");
      doc.robustness.seed = v->get<std::uint64_t>();
    }
    if (const json* v = opt_key(*r, "$.robustness", "oracle_grid"))
      doc.robustness.oracle_grid = as_int(*v, "$.robustness.oracle_grid");
  }

  if (const json* d = opt_key(j, "$", "dynamic")) {
    if (const json* v = opt_key(*d, "$.dynamic", "init"))
      doc.dynamic.init = as_num_array(*v, "$.dynamic.init");
    if (const json* v = opt_key(*d, "$.dynamic", "max_iter"))
      doc.dynamic.max_iter = as_int(*v, "$.dynamic.max_iter");
    doc.dynamic.tol = num_or(*d, "$.dynamic", "tol", doc.dynamic.tol);
  }

  if (const json* q = opt_key(j, "$", "quasi_dual")) {
    QDScenario qd;
    const json& members = need_key(*q, "$.quasi_dual", "members");
    if (!members.is_array() || members.empty())
      fail("$.quasi_dual.members", "expected a non-empty array");
    for (std::size_t k = 0; k < members.size(); ++k)
      qd.family.members.push_back(
          parse_qd_utility(members[k], "$.quasi_dual.members[" + std::to_string(k) + "]"));
    if (const json* v = opt_key(*q, "$.quasi_dual", "costs"))
      qd.costs = as_num_array(*v, "$.quasi_dual.costs");
    else
      qd.costs = scn.costs;
    if (static_cast<int>(qd.costs.size()) != qd.family.size())
      fail("$.quasi_dual.costs", "one cost per member required");
    qd.mu = parse_distribution(need_key(*q, "$.quasi_dual", "mu"), "$.quasi_dual.mu");
    qd.family.pbar_lo = num_or(*q, "$.quasi_dual", "pbar_lo", qd.mu.lo());
    qd.family.pbar_hi = num_or(*q, "$.quasi_dual", "pbar_hi", qd.mu.hi());
    qd.price_cap = num_or(*q, "$.quasi_dual", "price_cap",
                          doc.has_models ? scn.price_cap : qd.family.pbar_hi);
    qd.family.price_cap = qd.price_cap;
    qd.solver = scn.solver;
    try {
      qd.validate();
    } catch (const ConfigError& e) {
      fail("$.quasi_dual", std::string("invalid scenario: ") + e.what());
    }
    doc.quasi_dual = std::move(qd);
  }

  if (const json* d = opt_key(j, "$", "dual")) {
    if (!doc.has_models) fail("$.dual", "dual mode needs the top-level models[] utilities");
    DualScenario ds;
    ds.costs = scn.costs;
    ds.family = scn.family;
    ds.menu = as_num_array(need_key(*d, "$.dual", "menu"), "$.dual.menu");
    if (ds.menu.size() != ds.costs.size()) fail("$.dual.menu", "one entry per model required");
    ds.mu = parse_distribution(need_key(*d, "$.dual", "mu"), "$.dual.mu");
    ds.choice_cap = as_num(need_key(*d, "$.dual", "choice_cap"), "$.dual.choice_cap");
    ds.family.price_cap = ds.choice_cap;
    ds.solver = scn.solver;
    doc.dual = std::move(ds);
  }

  return doc;
}

ScenarioDocument parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read scenario file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario_text(ss.str());
}

std::string scenario_to_json(const ScenarioDocument& doc) {
  json j;
  j["mode"] = doc.mode;
  j["seed"] = doc.seed;
  if (doc.has_models) {
    const Scenario& scn = doc.scenario;
    json models = json::array();
    for (int i = 0; i < scn.n(); ++i) {
      json m;
      m["cost"] = scn.costs[static_cast<std::size_t>(i)];
      m["utility"] = utility_json(scn.family.members[static_cast<std::size_t>(i)]);
      models.push_back(std::move(m));
    }
    j["models"] = std::move(models);
    if (!scn.accuracy_override.empty()) {
      j["accuracy_override"] = scn.accuracy_override;
    } else if (scn.curve.kind == CostAccuracyCurve::Kind::Table) {
      json pts = json::array();
      for (const auto& [c, a] : scn.curve.table) pts.push_back({c, a});
      j["accuracy_curve"] = {{"type", "table"}, {"points", std::move(pts)}};
    } else {
      j["accuracy_curve"] = {
          {"type", "saturating"}, {"a_hi", scn.curve.sat_a_hi}, {"k", scn.curve.sat_k}};
    }
    j["domain"] = {{"a_lo", scn.family.a_lo}, {"a_hi", scn.family.a_hi}};
    j["distribution"] = distribution_json(scn.dist);
    j["price_cap"] = scn.price_cap;
    j["solver"] = {{"case_grid", scn.solver.case_grid},
                   {"root_tol", scn.solver.root_tol},
                   {"price_tol", scn.solver.price_tol},
                   {"oracle_grid", scn.solver.oracle_grid},
                   {"axiom_grid", scn.solver.axiom_grid},
                   {"separable_candidates", scn.solver.separable_candidates}};
  }
  if (doc.quasi_dual) {
    const QDScenario& qd = *doc.quasi_dual;
    json q;
    json members = json::array();
    for (const auto& fn : qd.family.members) {
      json m;
      m["price_form"] = price_form_name(fn.price_form);
      m["phi"] = fn.phi;
      m["pbar_lin"] = fn.pbar_lin;
      m["pbar_quad"] = fn.pbar_quad;
      m["offset"] = fn.offset;
      members.push_back(std::move(m));
    }
    q["members"] = std::move(members);
    q["costs"] = qd.costs;
    q["mu"] = distribution_json(qd.mu);
    q["pbar_lo"] = qd.family.pbar_lo;
    q["pbar_hi"] = qd.family.pbar_hi;
    q["price_cap"] = qd.price_cap;
    j["quasi_dual"] = std::move(q);
  }
  if (doc.dual) {
    j["dual"] = {{"menu", doc.dual->menu},
                 {"mu", distribution_json(doc.dual->mu)},
                 {"choice_cap", doc.dual->choice_cap}};
  }
  j["robustness"] = {{"epsilon", doc.robustness.epsilon},
                     {"trials", doc.robustness.trials},
                     {"seed", doc.robustness.seed},
                     {"oracle_grid", doc.robustness.oracle_grid}};
  j["dynamic"] = {{"init", doc.dynamic.init},
                  {"max_iter", doc.dynamic.max_iter},
                  {"tol", doc.dynamic.tol}};
  return j.dump(2) + "\n";
}

std::vector<SolutionRow> rows_from_solution(const Scenario& scn, const ChainSolution& sol) {
  std::vector<SolutionRow> rows;
  const auto accs = scn.accuracies();
  for (int i = 0; i < scn.n(); ++i) {
    const auto& o = sol.outcomes[static_cast<std::size_t>(i)];
    SolutionRow r;
    r.model = i + 1;
    r.cost = scn.costs[static_cast<std::size_t>(i)];
    r.accuracy = accs[static_cast<std::size_t>(i)];
    r.price = sol.prices[static_cast<std::size_t>(i)];
    r.empty = o.interval.empty;
    if (!r.empty) {
      r.alloc_lo = o.interval.lo;
      r.alloc_hi = o.interval.hi;
    }
    r.revenue = sol.revenues[static_cast<std::size_t>(i)];
    r.profit = sol.profits[static_cast<std::size_t>(i)];
    r.case_kind = case_kind_name(o.case_kind, o.case_ref);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<SolutionRow> rows_from_qd_solution(const QDScenario& scn, const QDSolution& sol) {
  std::vector<SolutionRow> rows;
  for (int i = 0; i < scn.n(); ++i) {
    const auto& iv = sol.intervals[static_cast<std::size_t>(i)];
    SolutionRow r;
    r.model = i + 1;
    r.cost = scn.costs[static_cast<std::size_t>(i)];
    r.accuracy = 0.0;  // no accuracy axis in the second-type setting
    r.price = sol.prices[static_cast<std::size_t>(i)];
    r.empty = iv.empty;
    if (!r.empty) {
      r.alloc_lo = iv.lo;
      r.alloc_hi = iv.hi;
    }
    r.revenue = sol.revenues[static_cast<std::size_t>(i)];
    r.profit = sol.profits[static_cast<std::size_t>(i)];
    r.case_kind = iv.empty ? "dominated" : "quasi-dual";
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string csv_from_rows(const std::vector<SolutionRow>& rows) {
  std::ostringstream out;
  out << "model,cost,accuracy,price,alloc_lo,alloc_hi,revenue,profit,case_kind\n";
  for (const auto& r : rows) {
    out << r.model << ',' << fmt12(r.cost) << ',' << fmt12(r.accuracy) << ',' << fmt12(r.price)
        << ',';
    if (r.empty)
      out << ",";
    else
      out << fmt12(r.alloc_lo) << ',' << fmt12(r.alloc_hi);
    out << ',' << fmt12(r.revenue) << ',' << fmt12(r.profit) << ',' << r.case_kind << '\n';
  }
  return out.str();
}

std::string csv_from_price_trace(const std::vector<std::vector<double>>& trace) {
  std::ostringstream out;
  std::size_t n = trace.empty() ? 0 : trace.front().size();
  out << "iter";
  for (std::size_t i = 0; i < n; ++i) out << ",p_" << i + 1;
  out << '\n';
  for (std::size_t t = 0; t < trace.size(); ++t) {
    out << t;
    for (double p : trace[t]) out << ',' << fmt12(p);
    out << '\n';
  }
  return out.str();
}

std::string svg_from_rows(const std::vector<SolutionRow>& rows, double a_lo, double a_hi) {
  static const char* kColors[] = {"#d62728", "#1f77b4", "#2ca02c", "#ff7f0e",
                                  "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};
  const double width = 800.0, margin = 60.0, row_h = 28.0;
  if (!(a_hi > a_lo)) a_hi = a_lo + 1.0;
  const double height = margin + row_h * static_cast<double>(rows.size() + 1) + margin * 0.5;
  auto x_of = [&](double a) {
    return margin + (a - a_lo) / (a_hi - a_lo) * (width - 2.0 * margin);
  };
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  double axis_y = height - margin * 0.5;
  out << "<line x1=\"" << x_of(a_lo) << "\" y1=\"" << axis_y << "\" x2=\"" << x_of(a_hi)
      << "\" y2=\"" << axis_y << "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
  for (int t = 0; t <= 10; ++t) {
    double a = a_lo + (a_hi - a_lo) * t / 10.0;
    out << "<line x1=\"" << x_of(a) << "\" y1=\"" << axis_y - 4 << "\" x2=\"" << x_of(a)
        << "\" y2=\"" << axis_y + 4 << "\" stroke=\"#333\"/>\n"
        << "<text x=\"" << x_of(a) << "\" y=\"" << axis_y + 18
        << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt12(a) << "</text>\n";
  }
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    double y = margin + row_h * static_cast<double>(k);
    const char* color = kColors[(r.model - 1) % 8];
    out << "<text x=\"8\" y=\"" << y + 14 << "\" font-size=\"12\" fill=\"" << color << "\">T"
        << r.model << " p=" << fmt12(r.price) << "</text>\n";
    if (!r.empty) {
      out << "<rect x=\"" << x_of(r.alloc_lo) << "\" y=\"" << y << "\" width=\""
          << x_of(r.alloc_hi) - x_of(r.alloc_lo) << "\" height=\"18\" fill=\"" << color
          << "\" fill-opacity=\"0.65\"/>\n";
    } else {
      out << "<text x=\"" << x_of(a_lo) << "\" y=\"" << y + 14
          << "\" font-size=\"11\" fill=\"#999\">(no market)</text>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

std::string run_metadata(const ScenarioDocument& doc) {
  const SolverConfig& s = doc.scenario.solver;
  std::ostringstream out;
  out << "pricechain 1.0.0\n"
      << "mode=" << doc.mode << '\n'
      << "seed=" << doc.seed << '\n'
      << "case_grid=" << s.case_grid << '\n'
      << "root_tol=" << fmt12(s.root_tol) << '\n'
      << "price_tol=" << fmt12(s.price_tol) << '\n'
      << "oracle_grid=" << s.oracle_grid << '\n'
      << "axiom_grid=" << s.axiom_grid << '\n';
  return out.str();
}

}  // namespace pricechain
