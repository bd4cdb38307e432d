#pragma once

// Independent ground truth: exhaustive backward induction over a bounded
// arrival grid. No closed-form result is consulted; the follower's best
// response is an argmax over the whole grid and the leader optimizes
// against it. Used to validate the discrete solver exactly (step = 1)
// and the continuous solver by grid refinement.
//
// Two tie-breaking modes:
//   LeaderFavorable - the follower resolves indifference in the leader's
//     favor (then by latest arrival); matches the theorems' convention.
//   AllSupportable  - every outcome (t1, t2) with t2 a best response and
//     leader utility at least the maxmin over best responses (the
//     follower punishes deviations with the leader-worst best response).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "ffg/game.hpp"
#include "ffg/result_types.hpp"

namespace ffg {

// Arrival grid {t_o - k * step : k_min <= k <= k_max}. k_min is negative
// so that times after t_o are on the grid and the no-late-arrival
// property is tested, not assumed.
struct GridSpec {
  double step = 1.0;
  long long k_min = -2;
  long long k_max = 2;

  long long size() const { return k_max - k_min + 1; }
  double time_at(long long k, double t_o) const { return t_o - static_cast<double>(k) * step; }

  void validate() const {
    if (!(step > 0.0)) throw std::invalid_argument("grid: step must be positive");
    if (!(k_min < 0 && 0 < k_max))
      throw std::invalid_argument("grid: k_min < 0 < k_max required");
  }
};

// Smallest offset count K such that arriving K grid steps early costs
// more than any conceivable utility swing (e1 + r) even for the stronger
// agent, plus a two-point safety margin. Everything earlier is strictly
// dominated for both agents regardless of opponent play.
inline long long choose_k_max(const GameParams& params, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("choose_k_max: step must be positive");
  double bmax = std::max(params.beta1, params.beta2);
  double swing = params.e1 + params.r;
  long long k = static_cast<long long>(std::floor(std::sqrt(swing * bmax) / step)) + 1;
  while ((k * step) * (k * step) / bmax <= swing) ++k;
  return k + 2;
}

// Default grid: domination-bounded on the early side, two time units
// (at least two grid points) past t_o on the late side.
inline GridSpec make_grid(const GameParams& params, double step) {
  GridSpec g;
  g.step = step;
  g.k_max = choose_k_max(params, step);
  g.k_min = -std::max<long long>(2, std::llround(2.0 / step));
  g.validate();
  return g;
}

// One row of the follower's best-response table: every utility-maximizing
// follower action (ties within kEpsTie) against a fixed leader time.
struct BrRow {
  std::vector<Action> actions;
  double u2 = 0.0;
};

struct BestResponseTable {
  GridSpec grid;
  double t_o = 0.0;
  bool just_before_augmented = false;
  std::vector<BrRow> rows;  // rows[i] corresponds to offset k_min + i

  const BrRow& row_at_offset(long long k) const {
    return rows[static_cast<size_t>(k - grid.k_min)];
  }
};

enum class BrAlgo {
  Auto,        // full scan on small grids, pruned scan on large ones
  FullScan,    // evaluate every grid point
  PrunedScan,  // evaluate only points that can attain the grid maximum
};

namespace detail {

inline double follower_value(const GameParams& p, double t1, const Action& a) {
  return utility2({Action::exact(t1), a}, p);
}

inline BrRow collect_best(const GameParams& p, const GridSpec& g, double t1,
                          const std::vector<long long>& candidates, bool add_jb) {
  double best = -std::numeric_limits<double>::infinity();
  std::vector<std::pair<Action, double>> evaluated;
  evaluated.reserve(candidates.size() + 1);
  if (add_jb) {
    Action jb = Action::just_before(t1);
    double u = follower_value(p, t1, jb);
    evaluated.emplace_back(jb, u);
    best = std::max(best, u);
  }
  for (long long j : candidates) {
    Action a = Action::exact(g.time_at(j, p.t_o));
    double u = follower_value(p, t1, a);
    evaluated.emplace_back(a, u);
    best = std::max(best, u);
  }
  BrRow row;
  row.u2 = best;
  for (const auto& [a, u] : evaluated)
    if (u >= best - kEpsTie) row.actions.push_back(a);
  std::sort(row.actions.begin(), row.actions.end(),
            [](const Action& x, const Action& y) { return arrival_order(x, y) < 0; });
  return row;
}

inline BrRow follower_argmax_scan(const GameParams& p, const GridSpec& g, long long ki,
                                  bool add_jb) {
  std::vector<long long> all;
  all.reserve(static_cast<size_t>(g.size()));
  for (long long j = g.k_min; j <= g.k_max; ++j) all.push_back(j);
  return collect_best(p, g, g.time_at(ki, p.t_o), all, add_jb);
}

// The follower's utility is a quadratic in t2 with a vertex at t_o on
// each region delimited by the leader's time and the flock window, so
// the grid argmax lies at the vertex-nearest point of some region (or a
// region edge). Evaluating those candidates (with neighbors, for tie
// collection) is exact and O(1) per leader time; tests pin equality
// with the full scan.
inline BrRow follower_argmax_pruned(const GameParams& p, const GridSpec& g, long long ki,
                                    bool add_jb) {
  std::vector<long long> cs;
  auto zone = [&](long long lo, long long hi) {
    lo = std::max(lo, g.k_min);
    hi = std::min(hi, g.k_max);
    if (lo > hi) return;
    long long v = std::clamp<long long>(0, lo, hi);
    for (long long j = std::max(lo, v - 2); j <= std::min(hi, v + 2); ++j) cs.push_back(j);
    cs.push_back(lo);
    cs.push_back(hi);
  };
  if (p.w == 0.0) {
    zone(ki + 1, g.k_max);  // earlier than the leader, solo
    zone(ki, ki);           // exact tie, strict flock
    zone(g.k_min, ki - 1);  // later than the leader, solo
  } else {
    long long jw = std::llround(p.w / g.step);
    zone(ki + 1, ki + jw);       // earlier, in the flock window
    zone(ki + jw + 1, g.k_max);  // earlier, solo
    zone(ki, ki);                // exact tie
    zone(ki - jw, ki - 1);       // later, in the flock window
    zone(g.k_min, ki - jw - 1);  // later, solo
  }
  std::sort(cs.begin(), cs.end());
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
  return collect_best(p, g, g.time_at(ki, p.t_o), cs, add_jb);
}

inline bool window_on_grid(const GameParams& p, const GridSpec& g) {
  if (p.w == 0.0) return true;
  double units = p.w / g.step;
  return std::abs(units - std::nearbyint(units)) <= 1e-9 * std::max(1.0, units);
}

}  // namespace detail

// Full-grid follower argmax for every leader time on the grid.
// add_just_before augments each leader time with the off-grid limit
// action just before it, evaluated exactly (continuous-game refinement).
inline BestResponseTable build_best_response_table(const GameParams& params,
                                                   const GridSpec& grid,
                                                   bool add_just_before = false,
                                                   BrAlgo algo = BrAlgo::Auto) {
  params.validate();
  grid.validate();
  bool aligned = detail::window_on_grid(params, grid);
  if (algo == BrAlgo::PrunedScan && !aligned)
    throw std::invalid_argument("oracle: pruned scan needs the window on the grid");
  if (algo == BrAlgo::Auto)
    algo = (aligned && grid.size() > 4096) ? BrAlgo::PrunedScan : BrAlgo::FullScan;

  BestResponseTable table;
  table.grid = grid;
  table.t_o = params.t_o;
  table.just_before_augmented = add_just_before;
  table.rows.reserve(static_cast<size_t>(grid.size()));
  for (long long k = grid.k_min; k <= grid.k_max; ++k) {
    table.rows.push_back(algo == BrAlgo::PrunedScan
                             ? detail::follower_argmax_pruned(params, grid, k, add_just_before)
                             : detail::follower_argmax_scan(params, grid, k, add_just_before));
  }
  return table;
}

enum class TieMode { LeaderFavorable, AllSupportable };

inline const char* to_string(TieMode m) {
  return m == TieMode::LeaderFavorable ? "LeaderFavorable" : "AllSupportable";
}

namespace detail {

// Nominal type tag for an oracle outcome, inferred from its shape; the
// verification comparisons use times and utilities, never this tag.
inline SpeType infer_type(const GameParams& p, const Action& t1, const Action& t2,
                          bool discrete) {
  FlockKind f = classify_flock(t1, t2, p.w);
  bool leader_first = arrival_order(t1, t2) < 0;
  if (p.w == 0.0) return f == FlockKind::StrictFlock ? SpeType::SFG_COOP : SpeType::SFG_DETER;
  if (discrete) {
    if (f == FlockKind::StrictFlock) return SpeType::DT1;
    if (!leader_first) return SpeType::DT5;
    if (f == FlockKind::NoFlock) return SpeType::DT4;
    return t1.limit_time() >= p.t_o - 1.0 ? SpeType::DT2 : SpeType::DT3;
  }
  if (f == FlockKind::NoFlock) return SpeType::CT2;
  return t2.limit_time() >= p.t_o ? SpeType::CT1 : SpeType::CT3;
}

inline SpeOutcome oracle_outcome(const GameParams& p, const Action& t1, const Action& t2,
                                 bool discrete) {
  ArrivalProfile profile{t1, t2};
  auto [u1, u2] = utility(profile, p);
  return SpeOutcome{t1,       t2, infer_type(p, t1, t2, discrete),
                    classify_flock(t1, t2, p.w), u1.total, u2.total};
}

struct LeaderChoice {
  Action follower;
  double u1 = 0.0;
};

// Leader-favorable resolution of follower ties: highest leader utility,
// then latest arrival.
inline LeaderChoice leader_favorable_choice(const GameParams& p, double t1, const BrRow& row) {
  LeaderChoice best{row.actions.front(),
                    utility1({Action::exact(t1), row.actions.front()}, p)};
  for (size_t i = 1; i < row.actions.size(); ++i) {
    const Action& a = row.actions[i];
    double u1 = utility1({Action::exact(t1), a}, p);
    if (u1 > best.u1 + kEpsTie ||
        (u1 >= best.u1 - kEpsTie && arrival_order(a, best.follower) > 0)) {
      best = {a, u1};
    }
  }
  return best;
}

inline double maxmin_leader_utility(const GameParams& p, const BestResponseTable& table) {
  double maxmin = -std::numeric_limits<double>::infinity();
  for (long long k = table.grid.k_min; k <= table.grid.k_max; ++k) {
    double t1 = table.grid.time_at(k, p.t_o);
    double worst = std::numeric_limits<double>::infinity();
    for (const Action& a : table.row_at_offset(k).actions)
      worst = std::min(worst, utility1({Action::exact(t1), a}, p));
    maxmin = std::max(maxmin, worst);
  }
  return maxmin;
}

}  // namespace detail

struct OracleResult {
  std::vector<SpeOutcome> outcomes;
  TieMode mode = TieMode::LeaderFavorable;
  double maxmin_u1 = 0.0;
  BestResponseTable table;
};

// Enumerate SPE outcomes from a prebuilt table. support_slack widens the
// AllSupportable inclusion threshold; grid-refinement callers pass an
// O(step) slack so discretization error cannot drop a continuum outcome.
inline std::vector<SpeOutcome> supportable_outcomes(const GameParams& params,
                                                    const BestResponseTable& table,
                                                    double maxmin_u1,
                                                    double support_slack = kEpsTie) {
  bool discrete = table.grid.step == 1.0 && params.w == 1.0;
  std::vector<SpeOutcome> out;
  for (long long k = table.grid.k_min; k <= table.grid.k_max; ++k) {
    double t1 = table.grid.time_at(k, params.t_o);
    for (const Action& a : table.row_at_offset(k).actions) {
      double u1 = utility1({Action::exact(t1), a}, params);
      if (u1 >= maxmin_u1 - support_slack)
        out.push_back(detail::oracle_outcome(params, Action::exact(t1), a, discrete));
    }
  }
  std::sort(out.begin(), out.end(), outcome_less);
  return out;
}

inline std::vector<SpeOutcome> leader_favorable_outcomes(const GameParams& params,
                                                         const BestResponseTable& table,
                                                         double* best_u1 = nullptr) {
  bool discrete = table.grid.step == 1.0 && params.w == 1.0;
  std::vector<std::pair<double, detail::LeaderChoice>> per_row;  // (t1, choice)
  double best = -std::numeric_limits<double>::infinity();
  for (long long k = table.grid.k_min; k <= table.grid.k_max; ++k) {
    double t1 = table.grid.time_at(k, params.t_o);
    auto choice = detail::leader_favorable_choice(params, t1, table.row_at_offset(k));
    best = std::max(best, choice.u1);
    per_row.emplace_back(t1, choice);
  }
  std::vector<SpeOutcome> out;
  for (const auto& [t1, choice] : per_row)
    if (choice.u1 >= best - kEpsTie)
      out.push_back(detail::oracle_outcome(params, Action::exact(t1), choice.follower, discrete));
  std::sort(out.begin(), out.end(), outcome_less);
  if (best_u1) *best_u1 = best;
  return out;
}

inline OracleResult enumerate_spe(const GameParams& params, const GridSpec& grid, TieMode mode,
                                  bool add_just_before = false, BrAlgo algo = BrAlgo::Auto,
                                  double support_slack = kEpsTie) {
  OracleResult res;
  res.mode = mode;
  res.table = build_best_response_table(params, grid, add_just_before, algo);
  res.maxmin_u1 = detail::maxmin_leader_utility(params, res.table);
  res.outcomes = mode == TieMode::LeaderFavorable
                     ? leader_favorable_outcomes(params, res.table)
                     : supportable_outcomes(params, res.table, res.maxmin_u1, support_slack);
  return res;
}

// Grid refinement of the continuous game: every leader time is augmented
// with the exact just-before limit action. Reports leader-favorable
// outcomes, the (slack-widened) supportable set, and the leader's best
// achievable utility for convergence comparisons.
struct CtApproxResult {
  std::vector<SpeOutcome> leader_favorable;
  std::vector<SpeOutcome> supportable;
  double lf_u1 = 0.0;
  double maxmin_u1 = 0.0;
  double step = 0.0;
  GridSpec grid;
};

inline CtApproxResult oracle_ct_approx(const GameParams& params, double step) {
  params.validate();
  if (!(step <= 1.0 / 16.0))
    throw std::invalid_argument("oracle_ct_approx: step must be at most 1/16");
  double inv = 1.0 / step;
  if (std::abs(inv - std::nearbyint(inv)) > 1e-9)
    throw std::invalid_argument("oracle_ct_approx: step must divide 1");

  CtApproxResult res;
  res.step = step;
  res.grid = make_grid(params, step);
  auto table = build_best_response_table(params, res.grid, /*add_just_before=*/true);
  res.maxmin_u1 = detail::maxmin_leader_utility(params, table);
  res.leader_favorable = leader_favorable_outcomes(params, table, &res.lf_u1);
  double d = params.delta_e();
  double slack = kEpsTie +
      step * (2.0 * std::sqrt((d + params.r / 2.0) * params.beta2) / params.beta1 + 2.0);
  res.supportable = supportable_outcomes(params, table, res.maxmin_u1, slack);
  return res;
}

inline bool all_on_or_before(const std::vector<SpeOutcome>& outcomes, double t_o) {
  for (const auto& o : outcomes)
    if (o.t1.limit_time() > t_o || o.t2.limit_time() > t_o) return false;
  return true;
}

// Optional table dump: t1, best-response times, best-response utility.
inline void dump_best_response_csv(const BestResponseTable& table, std::ostream& os) {
  os << "t1,br_times,br_utility\n";
  char buf[64];
  auto fmt = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::string(buf);
  };
  for (long long k = table.grid.k_min; k <= table.grid.k_max; ++k) {
    const BrRow& row = table.row_at_offset(k);
    os << fmt(table.grid.time_at(k, table.t_o)) << ",\"";
    for (size_t i = 0; i < row.actions.size(); ++i) {
      if (i) os << ';';
      const Action& a = row.actions[i];
      if (!a.is_exact()) os << "just_before(";
      os << fmt(a.t);
      if (!a.is_exact()) os << ')';
    }
    os << "\"," << fmt(row.u2) << "\n";
  }
}

}  // namespace ffg
