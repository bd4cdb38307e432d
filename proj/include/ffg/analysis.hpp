#pragma once

// Parameter-space cartography over the territory gap dE = E1 - E2:
// solver sweeps, extraction of the discrete-game region boundaries, and
// the qualitative three-game comparison table.
//
// Boundary structure in the case-3 region: k*(dE) is a nondecreasing
// step function whose jumps sit where min(sqrt((dE + r/2) beta2),
// dE beta2 / 4 + 1) crosses an integer. Within each constant segment the
// active comparator (sqrt(dE beta1) below the follower gate,
// sqrt((dE - r/2) beta1) above it) is strictly increasing, so each
// segment contributes at most one transversal crossing; classification
// can also flip where k* jumps over the comparator. Both kinds are
// returned, split into a-bounds (flock-deterrence vs resignation,
// case 3.1) and b-bounds (solo deterrence vs resignation, case 3.2),
// plus the single gate crossing where case 3.1 turns into 3.2.

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "ffg/game.hpp"
#include "ffg/json_io.hpp"
#include "ffg/result_types.hpp"
#include "ffg/sfg.hpp"
#include "ffg/spe_continuous.hpp"
#include "ffg/spe_discrete.hpp"

namespace ffg {

inline GameParams with_delta(const GameParams& base, double delta, double w = 1.0) {
  GameParams p = base;
  p.e1 = p.e2 + delta;
  p.w = w;
  return p;
}

struct RegionRow {
  double delta_e = 0.0;
  SpeResult ct;
  SpeResult dt;
  SpeResult sfg;
};

inline std::vector<RegionRow> sweep_delta_e(const GameParams& base, double lo, double hi,
                                            double step) {
  if (!(lo > 0.0) || !(hi > lo) || !(step > 0.0))
    throw std::invalid_argument("sweep_delta_e: need 0 < lo < hi and step > 0");
  long long n = static_cast<long long>(std::floor((hi - lo) / step + 1e-9));
  std::vector<RegionRow> rows;
  rows.reserve(static_cast<size_t>(n + 1));
  for (long long i = 0; i <= n; ++i) {
    double d = lo + static_cast<double>(i) * step;
    RegionRow row;
    row.delta_e = d;
    row.ct = solve_ct(with_delta(base, d, 1.0));
    row.dt = solve_dt(with_delta(base, d, 1.0));
    row.sfg = solve_sfg(with_delta(base, d, 0.0));
    rows.push_back(std::move(row));
  }
  return rows;
}

struct BoundarySet {
  std::vector<double> a_bounds;
  std::vector<double> b_bounds;
  std::optional<double> gate;
  double tol = 0.0;
};

namespace detail {

inline bool is_case31(const std::string& path) { return path.rfind("DT-3.1", 0) == 0; }
inline bool is_case32(const std::string& path) { return path.rfind("DT-3.2", 0) == 0; }

}  // namespace detail

inline BoundarySet find_region_boundaries(const GameParams& base, double lo, double hi,
                                          double tol) {
  base.validate();
  if (!(lo > 4.0 / base.beta2))
    throw std::invalid_argument("find_region_boundaries: lo must lie in the case-3 region");
  if (!(hi > lo) || !(tol > 0.0))
    throw std::invalid_argument("find_region_boundaries: invalid range or tolerance");

  const double b1 = base.beta1, b2 = base.beta2, r = base.r;
  const double gate_level = std::sqrt(r * b2 / 2.0) + 1.0;

  auto level_at = [&](double d) { return k_star(with_delta(base, d, 1.0)); };
  auto seg_in31 = [&](long long n) {
    double nd = static_cast<double>(n);
    return nd < gate_level || nearly_equal(nd, gate_level);
  };
  auto comparator = [&](bool in31, double d) {
    if (in31) return std::sqrt(d * b1);
    double arg = (d - r / 2.0) * b1;
    return arg > 0.0 ? std::sqrt(arg) : -1.0;
  };

  // Jump points of k* inside (lo, hi): min crosses integer m at
  // max(m^2/beta2 - r/2, 4(m-1)/beta2).
  std::vector<double> jumps;
  for (long long m = level_at(lo) + 1;; ++m) {
    double md = static_cast<double>(m);
    double dm = std::max(md * md / b2 - r / 2.0, 4.0 * (md - 1.0) / b2);
    if (dm >= hi) break;
    if (dm > lo) jumps.push_back(dm);
  }

  BoundarySet out;
  out.tol = tol;

  // Transversal crossings: bisect comparator(d) - n on each constant segment.
  std::vector<double> edges;
  edges.push_back(lo);
  edges.insert(edges.end(), jumps.begin(), jumps.end());
  edges.push_back(hi);
  for (size_t s = 0; s + 1 < edges.size(); ++s) {
    double slo = edges[s], shi = edges[s + 1];
    long long n = level_at(0.5 * (slo + shi));
    bool in31 = seg_in31(n);
    auto f = [&](double d) { return comparator(in31, d) - static_cast<double>(n); };
    double flo = f(slo), fhi = f(shi);
    if (flo == 0.0 || fhi == 0.0 || (flo < 0.0) == (fhi < 0.0)) continue;
    double xlo = slo, xhi = shi;
    while (xhi - xlo > tol) {
      double mid = 0.5 * (xlo + xhi);
      if ((f(mid) < 0.0) == (flo < 0.0))
        xlo = mid;
      else
        xhi = mid;
    }
    (in31 ? out.a_bounds : out.b_bounds).push_back(0.5 * (xlo + xhi));
  }

  // Jump crossings: the step may hop over the active comparator, or over
  // the gate itself. Probe classification on both sides.
  for (size_t i = 0; i < jumps.size(); ++i) {
    double j = jumps[i];
    double prev = i == 0 ? lo : jumps[i - 1];
    double next = i + 1 < jumps.size() ? jumps[i + 1] : hi;
    double delta = std::min({1e-6 * std::max(1.0, j), (j - prev) / 4.0, (next - j) / 4.0});
    std::string left = classify_case_dt(with_delta(base, j - delta, 1.0)).path;
    std::string right = classify_case_dt(with_delta(base, j + delta, 1.0)).path;
    if (left == right) continue;
    bool l31 = detail::is_case31(left), r31 = detail::is_case31(right);
    if (l31 != r31) {
      if (!out.gate) out.gate = j;
    } else if (l31) {
      out.a_bounds.push_back(j);
    } else {
      out.b_bounds.push_back(j);
    }
  }

  std::sort(out.a_bounds.begin(), out.a_bounds.end());
  std::sort(out.b_bounds.begin(), out.b_bounds.end());
  return out;
}

inline json boundaries_to_json(const BoundarySet& b) {
  json ja = json::array(), jb = json::array();
  for (double v : b.a_bounds) ja.push_back(round12(v));
  for (double v : b.b_bounds) jb.push_back(round12(v));
  return json{{"gate", b.gate ? json(round12(*b.gate)) : json(nullptr)},
              {"a", ja},
              {"b", jb},
              {"tol", b.tol}};
}

// One qualitative row per game, aggregated over a gap sample. uniqueness
// means every sampled instance produced exactly one equilibrium; an
// empty or multi-outcome instance breaks it.
struct GameComparisonRow {
  std::string game;
  bool existence = true;
  bool uniqueness = true;
  int num_types = 0;
  bool strict_flock_possible = false;
  bool t1_le_t2_always = true;
};

inline std::vector<GameComparisonRow> compare_games(const GameParams& base,
                                                    const std::vector<double>& sample_gaps) {
  if (sample_gaps.empty())
    throw std::invalid_argument("compare_games: need at least one gap sample");
  for (double g : sample_gaps)
    if (!(g > 0.0)) throw std::invalid_argument("compare_games: gaps must be positive");

  struct Acc {
    GameComparisonRow row;
    std::set<SpeType> types;
  };
  Acc ct{{"continuous-time"}, {}}, dt{{"discrete-time"}, {}}, sfg{{"SFG"}, {}};

  auto fold = [](Acc& acc, const SpeResult& res) {
    if (res.outcomes.empty()) acc.row.existence = false;
    if (res.outcomes.size() != 1) acc.row.uniqueness = false;
    for (const auto& o : res.outcomes) {
      acc.types.insert(o.type);
      if (o.flock == FlockKind::StrictFlock) acc.row.strict_flock_possible = true;
      if (arrival_order(o.t1, o.t2) > 0) acc.row.t1_le_t2_always = false;
    }
  };

  for (double g : sample_gaps) {
    fold(ct, solve_ct(with_delta(base, g, 1.0)));
    fold(dt, solve_dt(with_delta(base, g, 1.0)));
    fold(sfg, solve_sfg(with_delta(base, g, 0.0)));
  }
  ct.row.num_types = static_cast<int>(ct.types.size());
  dt.row.num_types = static_cast<int>(dt.types.size());
  sfg.row.num_types = static_cast<int>(sfg.types.size());
  return {sfg.row, ct.row, dt.row};
}

// Default comparison sample: a dense linear sweep, the computed region
// boundaries (so boundary coexistence cases are sampled), and a few very
// large gaps for the deterrence limit.
inline std::vector<double> default_compare_gaps(const GameParams& base) {
  std::vector<double> gaps;
  for (int i = 1; i <= 600; ++i) gaps.push_back(0.05 * i);
  double lo = 4.0 / base.beta2 * 1.01;
  BoundarySet bounds = find_region_boundaries(base, lo, 1000.0, 1e-9);
  gaps.insert(gaps.end(), bounds.a_bounds.begin(), bounds.a_bounds.end());
  gaps.insert(gaps.end(), bounds.b_bounds.begin(), bounds.b_bounds.end());
  if (bounds.gate) gaps.push_back(*bounds.gate);
  gaps.push_back(1e3);
  gaps.push_back(1e4);
  gaps.push_back(1e6);
  std::sort(gaps.begin(), gaps.end());
  gaps.erase(std::unique(gaps.begin(), gaps.end()), gaps.end());
  return gaps;
}

namespace detail {

inline std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace detail

// Sweep CSV, sorted by delta_e; multi-outcome results show their first
// (smallest-t1) outcome, empty continuous branches leave times blank.
inline void write_sweep_csv(std::ostream& os, const std::vector<RegionRow>& rows) {
  os << "delta_e,case_ct,case_dt,case_sfg,ct_t1,ct_t2,dt_t1,dt_t2,sfg_t1,sfg_t2,"
        "dt_flock,ct_exists\n";
  for (const auto& row : rows) {
    os << detail::fmt12(row.delta_e) << ',' << row.ct.label.path << ',' << row.dt.label.path
       << ',' << row.sfg.label.path << ',';
    if (!row.ct.outcomes.empty())
      os << detail::fmt12(row.ct.outcomes[0].t1.limit_time()) << ','
         << detail::fmt12(row.ct.outcomes[0].t2.limit_time()) << ',';
    else
      os << ",,";
    os << detail::fmt12(row.dt.outcomes[0].t1.limit_time()) << ','
       << detail::fmt12(row.dt.outcomes[0].t2.limit_time()) << ','
       << detail::fmt12(row.sfg.outcomes[0].t1.limit_time()) << ','
       << detail::fmt12(row.sfg.outcomes[0].t2.limit_time()) << ','
       << to_string(row.dt.outcomes[0].flock) << ',' << (row.ct.outcomes.empty() ? 0 : 1)
       << "\n";
  }
}

inline void write_compare_table(std::ostream& os, const std::vector<GameComparisonRow>& rows) {
  os << "game,existence,uniqueness,num_spe_types,strict_flock_possible,t1_le_t2_always\n";
  for (const auto& r : rows) {
    os << r.game << ',' << (r.existence ? "yes" : "no") << ',' << (r.uniqueness ? "yes" : "no")
       << ',' << r.num_types << ',' << (r.strict_flock_possible ? "possible" : "never") << ','
       << (r.t1_le_t2_always ? "yes" : "no") << "\n";
  }
}

}  // namespace ffg
