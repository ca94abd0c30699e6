#include "pricechain/static_pricing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pricechain {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTieTol = 1e-12;
}  // namespace

// ---------------------------------------------------------------------------
// CostAccuracyCurve / Scenario
// ---------------------------------------------------------------------------

CostAccuracyCurve CostAccuracyCurve::from_table(std::vector<std::pair<double, double>> table) {
  if (table.size() < 2) throw ConfigError("accuracy curve: table needs at least 2 entries");
  for (std::size_t k = 1; k < table.size(); ++k) {
    if (!(table[k].first > table[k - 1].first) || !(table[k].second > table[k - 1].second))
      throw ConfigError("accuracy curve: table must be strictly increasing in cost and accuracy");
  }
  CostAccuracyCurve c;
  c.kind = Kind::Table;
  c.table = std::move(table);
  return c;
}

CostAccuracyCurve CostAccuracyCurve::saturating(double a_hi, double k) {
  if (!(a_hi > 0.0) || !(k > 0.0))
    throw ConfigError("accuracy curve: saturating parameters must be > 0");
  CostAccuracyCurve c;
  c.kind = Kind::Saturating;
  c.sat_a_hi = a_hi;
  c.sat_k = k;
  return c;
}

double CostAccuracyCurve::accuracy(double cost) const {
  if (kind == Kind::Saturating) return sat_a_hi * (1.0 - std::exp(-sat_k * cost));
  if (cost <= table.front().first) return table.front().second;
  if (cost >= table.back().first) return table.back().second;
  auto it = std::upper_bound(table.begin(), table.end(), cost,
                             [](double c, const auto& e) { return c < e.first; });
  const auto& r = *it;
  const auto& l = *(it - 1);
  double t = (cost - l.first) / (r.first - l.first);
  return l.second + t * (r.second - l.second);
}

std::vector<double> Scenario::accuracies() const {
  if (!accuracy_override.empty()) {
    if (accuracy_override.size() != costs.size())
      throw ConfigError("scenario: accuracy override size does not match model count");
    return accuracy_override;
  }
  std::vector<double> out;
  out.reserve(costs.size());
  for (double c : costs) out.push_back(curve.accuracy(c));
  return out;
}

void Scenario::validate() const {
  if (costs.empty()) throw ConfigError("scenario: no models");
  if (family.size() != n()) throw ConfigError("scenario: utility count does not match model count");
  for (int i = 1; i < n(); ++i) {
    if (!(costs[static_cast<std::size_t>(i)] > costs[static_cast<std::size_t>(i - 1)]))
      throw ConfigError("scenario: costs must be strictly increasing (index " + std::to_string(i) +
                        ")");
  }
  auto acc = accuracies();
  for (int i = 1; i < n(); ++i) {
    if (!(acc[static_cast<std::size_t>(i)] > acc[static_cast<std::size_t>(i - 1)]))
      throw ConfigError("scenario: derived accuracies must be strictly increasing (index " +
                        std::to_string(i) + ")");
  }
  if (!(price_cap >= 0.0)) throw ConfigError("scenario: price cap must be >= 0");
  for (const auto& f : family.members) f.validate();
}

std::string case_kind_name(CaseKind kind, int ref_model) {
  switch (kind) {
    case CaseKind::Monopolist:
      return "single";
    case CaseKind::FullCoverage:
      return "full-coverage";
    case CaseKind::BlockCoverage:
      return "block-coverage";
    case CaseKind::Competition:
      return ref_model >= 0 ? "competition-with-" + std::to_string(ref_model + 1) : "competition";
    case CaseKind::NoCompetitionAdjacent:
      return "no-competition-adjacent";
    case CaseKind::NoCompetitionGap:
      return "no-competition-gap";
    case CaseKind::Dominated:
      return "dominated";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

namespace {

// Price p with b(p, a) = 0, i.e. a'(p) = a. Returns -1 when no p >= 0 works
// (the buyer at a is priced out even at p = 0 -- a'(p) > a for every p).
double p_at_marginal(const UtilityFunction& fn, double a) {
  double target = -(fn.accuracy_term(a) + fn.offset);
  if (target > 0.0) return -1.0;
  return fn.price_term_inverse(target);
}

// Price p with b(p, a) = piece value at a, i.e. a*(p) = a. Same sentinel.
double p_at_crossing(const UtilityFunction& fn, double a, const EnvelopePiece& piece) {
  double target = piece.fn.value(piece.price, a) - fn.accuracy_term(a) - fn.offset;
  if (target > 0.0) return -1.0;
  return fn.price_term_inverse(target);
}

struct Max1D {
  double x = 0.0;
  double v = -kInf;
};

Max1D maximize_1d(const std::function<double(double)>& g, double lo, double hi, int grid_n,
                  double tol, const std::vector<double>& extra) {
  Max1D best;
  if (hi < lo) return best;
  if (hi == lo) {
    best = {lo, g(lo)};
  } else {
    const int n = std::max(grid_n, 2);
    int best_k = 0;
    for (int k = 0; k <= n; ++k) {
      double x = lo + (hi - lo) * k / n;
      double v = g(x);
      if (v > best.v) {
        best = {x, v};
        best_k = k;
      }
    }
    const double dx = (hi - lo) / n;
    double blo = std::max(lo, lo + (hi - lo) * best_k / n - dx);
    double bhi = std::min(hi, lo + (hi - lo) * best_k / n + dx);
    auto [xr, vr] = detail::golden_max(g, blo, bhi, tol);
    if (vr > best.v) best = {xr, vr};
  }
  for (double c : extra) {
    if (c < lo || c > hi) continue;
    double v = g(c);
    if (v > best.v || (v >= best.v - kTieTol && c > best.x)) best = {c, v};
  }
  return best;
}

double upstream_full_revenue(const EnvelopeUtility& env, const BuyerDistribution& dist,
                             std::size_t first_n_pieces) {
  double sum = 0.0;
  for (std::size_t k = 0; k < first_n_pieces && k < env.pieces.size(); ++k) {
    const auto& piece = env.pieces[k];
    sum += piece.price * dist.mass(piece.lo, piece.hi);
  }
  return sum;
}

}  // namespace

double envelope_revenue(const EnvelopeUtility& env, const BuyerDistribution& dist) {
  return upstream_full_revenue(env, dist, env.pieces.size());
}

// ---------------------------------------------------------------------------
// step_response: exact market response of the chain to the next model at p
// ---------------------------------------------------------------------------

StepResponse step_response(const EnvelopeUtility& env, const UtilityFunction& next, double p,
                           double A_next, const BuyerDistribution& dist, double a_floor) {
  StepResponse out;
  out.total_revenue = envelope_revenue(env, dist);
  SeparableParts parts{next};
  const double aprime = next.accuracy_term_inverse(-parts.f(p));
  const bool has_aprime = std::isfinite(aprime);
  if (has_aprime && aprime >= A_next) return out;  // no buyer affords the new model

  double x = 0.0;
  CaseKind kind = CaseKind::Dominated;
  int ref = -1;
  EndpointInfo lo_info;

  if (env.pieces.empty()) {
    x = has_aprime ? std::max(aprime, a_floor) : a_floor;
    kind = CaseKind::Monopolist;
    lo_info = (has_aprime && aprime > a_floor) ? EndpointInfo{EndpointKind::Zero, -1}
                                               : EndpointInfo{EndpointKind::SupportLow, -1};
  } else if (has_aprime && aprime > env.support_hi()) {
    x = aprime;
    kind = CaseKind::NoCompetitionGap;
    ref = static_cast<int>(env.pieces.size()) - 1;
    lo_info = {EndpointKind::Zero, -1};
  } else {
    bool found = false;
    for (std::size_t k = 0; k < env.pieces.size() && !found; ++k) {
      const auto& piece = env.pieces[k];
      auto diff = [&](double a) {
        return next.value(p, a) - piece.fn.value(piece.price, a);
      };
      if (diff(piece.lo) >= 0.0) {
        // the new model already wins at the top of this piece
        if (k == 0) {
          x = has_aprime ? std::max(aprime, a_floor) : a_floor;
          kind = CaseKind::FullCoverage;
          ref = 0;
          lo_info = (has_aprime && aprime > a_floor) ? EndpointInfo{EndpointKind::Zero, -1}
                                                     : EndpointInfo{EndpointKind::SupportLow, -1};
        } else {
          const auto& prev = env.pieces[k - 1];
          if (piece.lo > prev.hi + kBoundaryPad && has_aprime && aprime > prev.hi) {
            x = aprime;  // marginal buyer sits in the gap before this piece
            kind = CaseKind::FullCoverage;
            ref = static_cast<int>(k);
            lo_info = {EndpointKind::Zero, -1};
          } else {
            x = prev.hi;  // takeover from the block boundary onward
            kind = CaseKind::BlockCoverage;
            ref = static_cast<int>(k) - 1;
            lo_info = {EndpointKind::CapStart, prev.model};
          }
        }
        found = true;
      } else if (diff(piece.hi) >= 0.0) {
        x = detail::bisect(diff, piece.lo, piece.hi, kRootValueTol, kRootArgTol);
        kind = CaseKind::Competition;
        ref = static_cast<int>(k);
        lo_info = {EndpointKind::Crossing, piece.model};
        found = true;
      }
    }
    if (!found) {
      x = env.support_hi();
      kind = CaseKind::NoCompetitionAdjacent;
      ref = static_cast<int>(env.pieces.size()) - 1;
      lo_info = {EndpointKind::CapStart, env.pieces.back().model};
    }
  }

  if (x >= A_next) return out;  // nothing left for the new model
  out.empty = false;
  out.x = x;
  out.kind = kind;
  out.ref_piece = ref;
  out.lo_info = lo_info;
  out.new_revenue = p * dist.mass(std::min(x, A_next), A_next);
  double upstream = 0.0;
  for (const auto& piece : env.pieces) {
    if (piece.hi <= x) {
      upstream += piece.price * dist.mass(piece.lo, piece.hi);
    } else if (piece.lo < x) {
      upstream += piece.price * dist.mass(piece.lo, x);
    }
  }
  out.total_revenue = upstream + out.new_revenue;
  return out;
}

// ---------------------------------------------------------------------------
// price_single
// ---------------------------------------------------------------------------

SingleResult price_single(const Scenario& scn) {
  scn.validate();
  const auto& fn = scn.family.members.front();
  const double A = scn.accuracies().front();
  const double a_floor = scn.family.a_lo;
  SeparableParts parts{fn};
  auto rev = [&](double p) {
    double ap = fn.accuracy_term_inverse(-parts.f(p));
    double mass_lo = std::isfinite(ap) ? scn.dist.cdf(ap) : 0.0;
    return p * std::max(0.0, scn.dist.cdf(A) - mass_lo);
  };
  std::vector<double> extra{0.0, scn.price_cap};
  if (scn.solver.separable_candidates) {
    for (const auto& cand : stationary_single(parts, A, scn.dist, scn.price_cap))
      extra.push_back(cand.price);
  }
  Max1D best = maximize_1d(rev, 0.0, scn.price_cap, scn.solver.case_grid, scn.solver.price_tol,
                           extra);
  SingleResult out;
  out.price = best.x;
  double ap = fn.accuracy_term_inverse(-parts.f(best.x));
  double lo = std::isfinite(ap) ? std::max(ap, a_floor) : a_floor;
  if (best.v > 0.0 && lo < A) {
    out.interval = {false, lo, A};
    out.rev = best.x * scn.dist.mass(lo, A);
  }
  return out;
}

// ---------------------------------------------------------------------------
// enumerate_cases
// ---------------------------------------------------------------------------

std::vector<CaseDescriptor> enumerate_cases(const EnvelopeUtility& env, const UtilityFunction& next,
                                            double A_next, double P) {
  std::vector<CaseDescriptor> out;
  if (env.pieces.empty()) {
    out.push_back({CaseKind::Monopolist, 0.0, P, false, false, -1, true});
    return out;
  }
  const double sup_hi = env.support_hi();

  // Raw price interval -> clamped descriptor. Sentinels: lo < 0 means
  // "unbounded below" (use 0), hi < 0 means the constraint is unreachable.
  auto push = [&](CaseKind kind, double raw_lo, bool lo_open, double raw_hi, bool hi_open,
                  int ref) {
    if (raw_hi < 0.0) return;  // structurally empty
    double lo = raw_lo < 0.0 ? 0.0 : raw_lo;
    if (lo > raw_hi + kTieTol) return;
    CaseDescriptor cd;
    cd.kind = kind;
    cd.lo_open = lo_open;
    cd.hi_open = hi_open;
    cd.ref_piece = ref;
    cd.p_lo = std::min(lo, P);
    cd.p_hi = std::min(raw_hi, P);
    cd.feasible = lo <= P && (cd.p_hi > cd.p_lo || !(lo_open || hi_open));
    if (lo > P) {
      // constraint interval sits entirely above the price cap
      cd.p_lo = cd.p_hi = P;
      cd.feasible = false;
    }
    out.push_back(cd);
  };

  // full coverage: marginal buyer in the region below piece j (gap or start)
  for (std::size_t j = 0; j < env.pieces.size(); ++j) {
    double gap_lo = (j == 0) ? -kInf : env.pieces[j - 1].hi;
    double gap_hi = env.pieces[j].lo;
    if (j > 0 && !(gap_hi > gap_lo + kBoundaryPad)) continue;  // contiguous pieces: no gap
    if (gap_hi >= A_next) continue;
    double raw_lo = (j == 0) ? -1.0 : p_at_marginal(next, gap_lo);
    double raw_hi = p_at_marginal(next, gap_hi);
    push(CaseKind::FullCoverage, raw_lo, true, raw_hi, false, static_cast<int>(j));
  }

  // block coverage: take over from each interior block boundary
  auto blocks = extract_blocks(env);
  for (std::size_t b = 0; b + 1 < blocks.size(); ++b) {
    int last_piece = blocks[b].piece_indices.back();
    double A_j = blocks[b].hi;
    if (A_j >= A_next) continue;
    push(CaseKind::BlockCoverage, -1.0, false, p_at_marginal(next, A_j), false, last_piece);
  }

  // competition: crossing point inside piece k
  for (std::size_t k = 0; k < env.pieces.size(); ++k) {
    const auto& piece = env.pieces[k];
    if (piece.lo >= A_next) continue;
    double a_hi = std::min(piece.hi, A_next);
    double raw_lo = p_at_crossing(next, piece.lo, piece);
    double raw_hi = p_at_crossing(next, a_hi, piece);
    push(CaseKind::Competition, raw_lo, true, raw_hi, false, static_cast<int>(k));
  }

  if (A_next > sup_hi) {
    // no competition, adjacent: marginal buyer within the last block
    double lb_lo = blocks.empty() ? env.pieces.front().lo : blocks.back().lo;
    double raw_hi = p_at_marginal(next, sup_hi);
    if (raw_hi >= 0.0)
      push(CaseKind::NoCompetitionAdjacent, p_at_marginal(next, lb_lo), true, raw_hi, false,
           static_cast<int>(env.pieces.size()) - 1);
    // no competition, gap: marginal buyer beyond the support
    double gap_lo = p_at_marginal(next, sup_hi);
    push(CaseKind::NoCompetitionGap, gap_lo, true, P, false,
         static_cast<int>(env.pieces.size()) - 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// optimize_case
// ---------------------------------------------------------------------------

CaseOptimum optimize_case(const CaseDescriptor& cd, const EnvelopeUtility& env,
                          const UtilityFunction& next, double A_next,
                          const BuyerDistribution& dist, double P, const SolverConfig& cfg) {
  CaseOptimum out;
  if (!cd.feasible) return out;
  double lo = std::clamp(cd.p_lo, 0.0, P);
  double hi = std::clamp(cd.p_hi, 0.0, P);
  if (hi < lo) return out;
  SeparableParts parts{next};
  const double FA = dist.cdf(A_next);

  auto monopolist_like = [&](double upstream) {
    return [&, upstream](double p) {
      double ap = next.accuracy_term_inverse(-parts.f(p));
      double mass_lo = std::isfinite(ap) ? dist.cdf(ap) : 0.0;
      return upstream + p * std::max(0.0, FA - mass_lo);
    };
  };

  std::function<double(double)> obj;
  std::vector<double> extra{lo, hi};
  switch (cd.kind) {
    case CaseKind::Monopolist: {
      obj = monopolist_like(0.0);
      if (cfg.separable_candidates)
        for (const auto& c : stationary_single(parts, A_next, dist, P)) extra.push_back(c.price);
      break;
    }
    case CaseKind::FullCoverage: {
      double upstream =
          upstream_full_revenue(env, dist, static_cast<std::size_t>(std::max(cd.ref_piece, 0)));
      obj = monopolist_like(upstream);
      if (cfg.separable_candidates)
        for (const auto& c : stationary_single(parts, A_next, dist, P)) extra.push_back(c.price);
      break;
    }
    case CaseKind::NoCompetitionGap: {
      double upstream = upstream_full_revenue(env, dist, env.pieces.size());
      obj = monopolist_like(upstream);
      if (cfg.separable_candidates)
        for (const auto& c : stationary_single(parts, A_next, dist, P)) extra.push_back(c.price);
      break;
    }
    case CaseKind::NoCompetitionAdjacent: {
      double upstream = upstream_full_revenue(env, dist, env.pieces.size());
      double base = dist.cdf(env.support_hi());
      obj = [&, upstream, base](double p) { return upstream + p * std::max(0.0, FA - base); };
      break;
    }
    case CaseKind::BlockCoverage: {
      const auto& piece = env.pieces[static_cast<std::size_t>(cd.ref_piece)];
      double upstream =
          upstream_full_revenue(env, dist, static_cast<std::size_t>(cd.ref_piece) + 1);
      double base = dist.cdf(piece.hi);
      obj = [&, upstream, base](double p) { return upstream + p * std::max(0.0, FA - base); };
      break;
    }
    case CaseKind::Competition: {
      const auto& piece = env.pieces[static_cast<std::size_t>(cd.ref_piece)];
      double upstream =
          upstream_full_revenue(env, dist, static_cast<std::size_t>(cd.ref_piece));
      SeparableParts piece_parts{piece.fn};
      double a_cap = std::min(piece.hi, A_next);
      obj = [&, upstream, a_cap](double p) {
        auto astar = indifference_accuracy(parts, piece_parts, p, piece.price, piece.lo, a_cap);
        double a;
        if (astar) {
          a = *astar;
        } else {
          // crossing outside the piece: clamp by which side the level fell on
          double d = next.value(p, piece.lo) - piece.fn.value(piece.price, piece.lo);
          a = d >= 0.0 ? piece.lo : a_cap;
        }
        return upstream + piece.price * dist.mass(piece.lo, a) + p * std::max(0.0, FA - dist.cdf(a));
      };
      if (cfg.separable_candidates) {
        try {
          for (const auto& c :
               stationary_competition(parts, piece_parts, piece.price, A_next, dist, P))
            extra.push_back(c.price);
        } catch (const ConfigError&) {
          // non-invertible accuracy-part difference: grid search still applies
        }
      }
      break;
    }
    case CaseKind::Dominated:
      return out;
  }

  Max1D best = maximize_1d(obj, lo, hi, cfg.case_grid, cfg.price_tol, extra);
  out.feasible = true;
  out.price = best.x;
  out.objective = best.v;
  return out;
}

// ---------------------------------------------------------------------------
// price_next / solve_chain
// ---------------------------------------------------------------------------

void price_next(ChainSolution& state, const Scenario& scn, int next_index) {
  const auto& next = scn.family.members[static_cast<std::size_t>(next_index)];
  const auto accs = scn.accuracies();
  const double A = accs[static_cast<std::size_t>(next_index)];
  const double P = scn.price_cap;
  const double a_floor = scn.family.a_lo;
  const EnvelopeUtility env = state.envelope;

  auto descriptors = enumerate_cases(env, next, A, P);
  auto R = [&](double p) {
    return step_response(env, next, p, A, scn.dist, a_floor).total_revenue;
  };
  std::vector<double> extra{0.0, P};
  for (const auto& cd : descriptors) {
    if (!cd.feasible) continue;
    extra.push_back(cd.p_lo);
    extra.push_back(cd.p_hi);
    auto opt = optimize_case(cd, env, next, A, scn.dist, P, scn.solver);
    if (opt.feasible) extra.push_back(opt.price);
  }
  Max1D best = maximize_1d(R, 0.0, P, scn.solver.case_grid, scn.solver.price_tol, extra);
  // tie-break among near-optimal candidate prices: prefer the largest price
  for (double c : extra) {
    if (c < 0.0 || c > P || c <= best.x) continue;
    if (R(c) >= best.v - kTieTol) best.x = c;
  }
  best.v = R(best.x);

  const double upstream = envelope_revenue(env, scn.dist);
  StepResponse resp = step_response(env, next, best.x, A, scn.dist, a_floor);

  StepTrace tr;
  tr.model = next_index;
  tr.descriptors = descriptors;

  auto& outc = state.outcomes[static_cast<std::size_t>(next_index)];
  if (resp.empty || resp.total_revenue <= upstream + kTieTol) {
    // dominated: never trade upstream revenue for a loss-making entry
    state.prices[static_cast<std::size_t>(next_index)] = P;
    outc.price = P;
    outc.interval = {};
    outc.rev = 0.0;
    outc.case_kind = CaseKind::Dominated;
    tr.chosen = CaseKind::Dominated;
    tr.total_revenue = upstream;
  } else {
    state.prices[static_cast<std::size_t>(next_index)] = best.x;
    // truncate or absorb upstream allocations at resp.x
    for (int m = 0; m < next_index; ++m) {
      auto& iv = state.alloc.intervals[static_cast<std::size_t>(m)];
      if (iv.empty) continue;
      if (iv.lo >= resp.x) {
        iv = {};
        state.revenues[static_cast<std::size_t>(m)] = 0.0;
        auto& mo = state.outcomes[static_cast<std::size_t>(m)];
        mo.interval = {};
        mo.rev = 0.0;
        mo.lo_info = mo.hi_info = {};
      } else if (iv.hi > resp.x) {
        iv.hi = resp.x;
        state.revenues[static_cast<std::size_t>(m)] =
            state.prices[static_cast<std::size_t>(m)] * scn.dist.mass(iv.lo, iv.hi);
        auto& mo = state.outcomes[static_cast<std::size_t>(m)];
        mo.interval = iv;
        mo.rev = state.revenues[static_cast<std::size_t>(m)];
        mo.hi_info = {resp.lo_info.kind == EndpointKind::Crossing ? EndpointKind::Crossing
                                                                  : EndpointKind::Zero,
                      next_index};
      }
    }
    auto& iv = state.alloc.intervals[static_cast<std::size_t>(next_index)];
    iv = {false, std::max(resp.x, a_floor), A};
    state.revenues[static_cast<std::size_t>(next_index)] = best.x * scn.dist.mass(iv.lo, iv.hi);
    outc.price = best.x;
    outc.interval = iv;
    outc.rev = state.revenues[static_cast<std::size_t>(next_index)];
    outc.lo_info = resp.lo_info;
    outc.hi_info = {EndpointKind::AccuracyCap, -1};
    outc.case_kind = resp.kind;
    outc.case_ref =
        resp.ref_piece >= 0 ? env.pieces[static_cast<std::size_t>(resp.ref_piece)].model : -1;
    tr.chosen = resp.kind;
    tr.chosen_ref = outc.case_ref;
    tr.total_revenue = resp.total_revenue;
    state.envelope = build_envelope(state.alloc, state.prices, scn.family, accs);
  }
  state.trace.push_back(tr);
}

namespace {

void finalize(ChainSolution& sol, const Scenario& scn) {
  sol.objective = 0.0;
  for (int i = 0; i < scn.n(); ++i) {
    double profit = std::max(0.0, sol.revenues[static_cast<std::size_t>(i)] -
                                      scn.costs[static_cast<std::size_t>(i)]);
    sol.profits[static_cast<std::size_t>(i)] = profit;
    sol.objective += profit;
  }
}

}  // namespace

ChainSolution solve_chain_prefix(const Scenario& scn, int upto) {
  scn.validate();
  const int n = scn.n();
  const auto accs = scn.accuracies();
  ChainSolution sol;
  sol.prices.assign(static_cast<std::size_t>(n), 0.0);
  sol.alloc.intervals.assign(static_cast<std::size_t>(n), {});
  sol.revenues.assign(static_cast<std::size_t>(n), 0.0);
  sol.profits.assign(static_cast<std::size_t>(n), 0.0);
  sol.outcomes.assign(static_cast<std::size_t>(n), {});
  if (upto <= 0) return sol;

  SingleResult sr = price_single(scn);
  sol.prices[0] = sr.price;
  sol.alloc.intervals[0] = sr.interval;
  sol.revenues[0] = sr.rev;
  auto& o0 = sol.outcomes[0];
  o0.price = sr.price;
  o0.interval = sr.interval;
  o0.rev = sr.rev;
  o0.case_kind = sr.interval.empty ? CaseKind::Dominated : CaseKind::Monopolist;
  if (!sr.interval.empty) {
    o0.lo_info = sr.interval.lo > scn.family.a_lo ? EndpointInfo{EndpointKind::Zero, -1}
                                                  : EndpointInfo{EndpointKind::SupportLow, -1};
    o0.hi_info = {EndpointKind::AccuracyCap, -1};
  }
  sol.envelope = build_envelope(sol.alloc, sol.prices, scn.family, accs);
  StepTrace tr0;
  tr0.model = 0;
  tr0.descriptors = {{CaseKind::Monopolist, 0.0, scn.price_cap, false, false, -1, true}};
  tr0.chosen = o0.case_kind;
  tr0.total_revenue = sr.rev;
  sol.trace.push_back(tr0);

  for (int i = 1; i < upto; ++i) price_next(sol, scn, i);
  finalize(sol, scn);
  return sol;
}

ChainSolution solve_chain(const Scenario& scn) { return solve_chain_prefix(scn, scn.n()); }

// ---------------------------------------------------------------------------
// optimize_costs
// ---------------------------------------------------------------------------

ChainSolution optimize_costs(const Scenario& base, const std::vector<double>& cost_grid, int n,
                             std::vector<double>* best_costs) {
  if (cost_grid.empty()) throw ConfigError("optimize_costs: empty cost grid");
  if (n < 1 || n > static_cast<int>(cost_grid.size()))
    throw ConfigError("optimize_costs: need at least n distinct grid costs");
  std::vector<double> grid = cost_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (static_cast<int>(grid.size()) < n)
    throw ConfigError("optimize_costs: fewer than n distinct grid costs");

  ChainSolution best;
  std::vector<double> best_tuple;
  double best_obj = -kInf;
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) idx[static_cast<std::size_t>(k)] = k;
  while (true) {
    Scenario scn = base;
    scn.costs.clear();
    for (int k : idx) scn.costs.push_back(grid[static_cast<std::size_t>(k)]);
    bool valid = true;
    auto accs = scn.accuracies();
    for (std::size_t i = 1; i < accs.size(); ++i)
      if (!(accs[i] > accs[i - 1])) valid = false;
    if (valid) {
      ChainSolution sol = solve_chain(scn);
      // strict improvement only: ties keep the lexicographically smaller tuple
      if (sol.objective > best_obj + kTieTol) {
        best_obj = sol.objective;
        best = sol;
        best_tuple = scn.costs;
      }
    }
    // advance to the next combination in lexicographic order
    int pos = n - 1;
    while (pos >= 0 &&
           idx[static_cast<std::size_t>(pos)] == static_cast<int>(grid.size()) - n + pos)
      --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int k = pos + 1; k < n; ++k)
      idx[static_cast<std::size_t>(k)] = idx[static_cast<std::size_t>(k - 1)] + 1;
  }
  if (best_tuple.empty()) throw ConfigError("optimize_costs: no valid cost tuple in grid");
  if (best_costs) *best_costs = best_tuple;
  return best;
}

// ---------------------------------------------------------------------------
// revenue_curve
// ---------------------------------------------------------------------------

std::vector<std::pair<double, double>> revenue_curve(const Scenario& scn, int next_index,
                                                     double step) {
  if (!(step > 0.0)) throw ConfigError("revenue_curve: step must be > 0");
  if (next_index < 0 || next_index >= scn.n())
    throw ConfigError("revenue_curve: model index out of range");
  ChainSolution prefix = solve_chain_prefix(scn, next_index);
  const auto& next = scn.family.members[static_cast<std::size_t>(next_index)];
  const double A = scn.accuracies()[static_cast<std::size_t>(next_index)];
  std::vector<std::pair<double, double>> out;
  for (double p = 0.0; p <= scn.price_cap + step * 0.5; p += step) {
    double pc = std::min(p, scn.price_cap);
    StepResponse resp = step_response(prefix.envelope, next, pc, A, scn.dist, scn.family.a_lo);
    out.emplace_back(pc, resp.empty ? 0.0 : resp.new_revenue);
  }
  return out;
}

}  // namespace pricechain
