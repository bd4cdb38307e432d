#pragma once

// Solver-vs-oracle cross-validation. Each game variant has a per-instance
// check plus a seeded batch runner used by the verify CLI command and by
// the acceptance suite. Mismatches carry a verbatim description of the
// first failing instance; branch hit-counts expose coverage gaps.

#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ffg/game.hpp"
#include "ffg/oracle.hpp"
#include "ffg/param_gen.hpp"
#include "ffg/sfg.hpp"
#include "ffg/spe_continuous.hpp"
#include "ffg/spe_discrete.hpp"

namespace ffg {

namespace detail {

inline std::string describe_params(const GameParams& p) {
  std::ostringstream os;
  os.precision(17);
  os << "beta1=" << p.beta1 << " beta2=" << p.beta2 << " E1=" << p.e1 << " E2=" << p.e2
     << " r=" << p.r << " t_o=" << p.t_o << " w=" << p.w;
  return os.str();
}

inline std::string describe_outcomes(const std::vector<SpeOutcome>& outs) {
  std::ostringstream os;
  os.precision(17);
  os << "{";
  for (size_t i = 0; i < outs.size(); ++i) {
    if (i) os << ", ";
    os << "(" << (outs[i].t1.is_exact() ? "" : "jb:") << outs[i].t1.t << ", "
       << (outs[i].t2.is_exact() ? "" : "jb:") << outs[i].t2.t << ")";
  }
  os << "}";
  return os.str();
}

}  // namespace detail

// ---------------------------------------------------------------------
// Discrete game: closed form must equal the unit-grid oracle exactly.

struct DtInstanceCheck {
  std::string branch;
  bool match = false;
  bool prop1_ok = false;
  bool follower_tie = false;  // follower indifferent at an equilibrium leader time
  std::string detail;
};

inline DtInstanceCheck check_dt_instance(const GameParams& params) {
  DtInstanceCheck out;
  SpeResult solved = solve_dt(params);
  out.branch = solved.label.path;

  GridSpec grid = make_grid(params, 1.0);
  auto table = build_best_response_table(params, grid, /*add_just_before=*/false,
                                         BrAlgo::FullScan);
  auto lf = leader_favorable_outcomes(params, table);
  double maxmin = detail::maxmin_leader_utility(params, table);
  auto sup = supportable_outcomes(params, table, maxmin);

  out.prop1_ok = all_on_or_before(lf, params.t_o) && all_on_or_before(sup, params.t_o);

  bool match = solved.outcomes.size() == lf.size();
  if (match) {
    for (size_t i = 0; i < lf.size(); ++i) {
      const auto& a = solved.outcomes[i];
      const auto& b = lf[i];
      long long a1 = std::llround(params.t_o - a.t1.limit_time());
      long long a2 = std::llround(params.t_o - a.t2.limit_time());
      long long b1 = std::llround(params.t_o - b.t1.limit_time());
      long long b2 = std::llround(params.t_o - b.t2.limit_time());
      if (a1 != b1 || a2 != b2 || std::abs(a.u1 - b.u1) > kEpsTie ||
          std::abs(a.u2 - b.u2) > kEpsTie) {
        match = false;
        break;
      }
    }
  }
  out.match = match;
  if (!match) {
    out.detail = detail::describe_params(params) + " solver=" +
                 detail::describe_outcomes(solved.outcomes) +
                 " oracle=" + detail::describe_outcomes(lf);
  }
  for (const auto& o : solved.outcomes) {
    long long k = std::llround(params.t_o - o.t1.limit_time());
    if (k >= grid.k_min && k <= grid.k_max && table.row_at_offset(k).actions.size() > 1)
      out.follower_tie = true;
  }
  return out;
}

struct DtVerifyReport {
  size_t trials = 0;
  size_t mismatches = 0;
  size_t prop1_violations = 0;
  size_t ties_observed = 0;
  std::map<std::string, size_t> branch_counts;
  std::string first_failure;
};

inline DtVerifyReport verify_dt(std::uint64_t seed, size_t trials) {
  ParamGen gen{seed};
  DtVerifyReport rep;
  rep.trials = trials;
  for (size_t t = 0; t < trials; ++t) {
    GameParams p = gen.draw(t, 1.0);
    DtInstanceCheck c = check_dt_instance(p);
    rep.branch_counts[c.branch]++;
    if (c.follower_tie) rep.ties_observed++;
    if (!c.prop1_ok) rep.prop1_violations++;
    if (!c.match) {
      rep.mismatches++;
      if (rep.first_failure.empty())
        rep.first_failure = "trial " + std::to_string(t) + ": " + c.detail;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------
// Continuous game: fine-grid convergence plus the appendix indifference
// identities at the tipping points.

struct TippingResiduals {
  double undercut_vs_to_flock = -1.0;  // at t11, only when t_o - t11 <= 1
  double undercut_vs_to_solo = -1.0;   // at t12, against E2 - r
  double undercut_vs_plus1 = -1.0;     // at t13, only when t13 + 1 <= t_o
};

inline TippingResiduals tipping_residuals(const GameParams& params) {
  TippingResiduals res;
  auto tp = tipping_points(params);
  if (params.t_o - tp.t11 <= 1.0) {
    double lhs = utility2({Action::exact(tp.t11), Action::just_before(tp.t11)}, params);
    double rhs = utility2({Action::exact(tp.t11), Action::exact(params.t_o)}, params);
    res.undercut_vs_to_flock = std::abs(lhs - rhs);
  }
  {
    double lhs = utility2({Action::exact(tp.t12), Action::just_before(tp.t12)}, params);
    res.undercut_vs_to_solo = std::abs(lhs - (params.e2 - params.r));
  }
  if (tp.t13 + 1.0 <= params.t_o) {
    double lhs = utility2({Action::exact(tp.t13), Action::just_before(tp.t13)}, params);
    double rhs = utility2({Action::exact(tp.t13), Action::exact(tp.t13 + 1.0)}, params);
    res.undercut_vs_plus1 = std::abs(lhs - rhs);
  }
  return res;
}

struct CtInstanceCheck {
  std::string branch;
  bool coords_ok = true;   // every closed-form outcome matched within 4 * step
  bool cap_ok = true;      // empty branch: leader-favorable u1 under the resignation cap
  bool residuals_ok = true;
  bool prop1_ok = true;
  double max_residual = 0.0;
  std::string detail;
};

inline CtInstanceCheck check_ct_instance(const GameParams& params, double step) {
  CtInstanceCheck out;
  SpeResult solved = solve_ct(params);
  out.branch = solved.label.path;
  CtApproxResult approx = oracle_ct_approx(params, step);

  if (!solved.outcomes.empty()) {
    for (const auto& o : solved.outcomes) {
      bool found = false;
      for (const auto& g : approx.supportable) {
        if (std::abs(g.t1.limit_time() - o.t1.limit_time()) <= 4.0 * step &&
            std::abs(g.t2.limit_time() - o.t2.limit_time()) <= 4.0 * step) {
          found = true;
          break;
        }
      }
      if (!found) {
        out.coords_ok = false;
        out.detail = detail::describe_params(params) + " branch=" + out.branch +
                     " unmatched=(" + std::to_string(o.t1.limit_time()) + "," +
                     std::to_string(o.t2.limit_time()) +
                     ") oracle=" + detail::describe_outcomes(approx.supportable);
      }
    }
  } else {
    double cap = params.e2 - params.r / 2.0 + 10.0 * step;
    if (approx.lf_u1 > cap) {
      out.cap_ok = false;
      out.detail = detail::describe_params(params) + " branch=" + out.branch +
                   " lf_u1=" + std::to_string(approx.lf_u1) + " cap=" + std::to_string(cap);
    }
  }

  TippingResiduals res = tipping_residuals(params);
  for (double v : {res.undercut_vs_to_flock, res.undercut_vs_to_solo, res.undercut_vs_plus1}) {
    if (v < 0.0) continue;
    out.max_residual = std::max(out.max_residual, v);
    if (v >= 1e-9) out.residuals_ok = false;
  }
  out.prop1_ok = all_on_or_before(approx.leader_favorable, params.t_o) &&
                 all_on_or_before(approx.supportable, params.t_o);
  return out;
}

struct CtVerifyReport {
  size_t trials = 0;
  size_t coord_mismatches = 0;
  size_t cap_violations = 0;
  size_t residual_failures = 0;
  size_t prop1_violations = 0;
  double max_residual = 0.0;
  std::map<std::string, size_t> branch_counts;
  std::string first_failure;
  double step = 0.0;
};

inline CtVerifyReport verify_ct(std::uint64_t seed, size_t trials, double step) {
  ParamGen gen{seed};
  CtVerifyReport rep;
  rep.trials = trials;
  rep.step = step;
  for (size_t t = 0; t < trials; ++t) {
    GameParams p = gen.draw(t, 1.0);
    CtInstanceCheck c = check_ct_instance(p, step);
    rep.branch_counts[c.branch]++;
    rep.max_residual = std::max(rep.max_residual, c.max_residual);
    if (!c.coords_ok) rep.coord_mismatches++;
    if (!c.cap_ok) rep.cap_violations++;
    if (!c.residuals_ok) rep.residual_failures++;
    if (!c.prop1_ok) rep.prop1_violations++;
    if ((!c.coords_ok || !c.cap_ok || !c.residuals_ok) && rep.first_failure.empty())
      rep.first_failure = "trial " + std::to_string(t) + ": " + c.detail;
  }
  return rep;
}

// ---------------------------------------------------------------------
// Strict-flocking baseline under the w = 0 oracle.

struct SfgInstanceCheck {
  std::string branch;
  bool threshold_ok = true;    // unit-grid oracle cooperates iff the solver does
  bool deter_time_ok = true;   // fine-grid tipping point within 2 * step of closed form
  bool indifference_ok = true;
  bool participation_ok = true;
  bool prop1_ok = true;
  std::string detail;
};

// Smallest number of grid steps before t_o at which the follower weakly
// prefers withdrawing to t_o over undercutting (arriving just before the
// leader); the undercut utility decreases strictly in the offset while
// the withdrawal utility is constant, so a single crossing exists and
// bisection finds it exactly.
inline long long sfg_grid_tipping_offset(const GameParams& params, const GridSpec& grid) {
  auto withdraw_weakly_best = [&](long long k) {
    double t1 = grid.time_at(k, params.t_o);
    double u_jb = utility2({Action::exact(t1), Action::just_before(t1)}, params);
    double u_to = utility2({Action::exact(t1), Action::exact(params.t_o)}, params);
    return u_to >= u_jb;
  };
  long long lo = 1, hi = grid.k_max;
  if (withdraw_weakly_best(lo)) return lo;
  while (hi - lo > 1) {
    long long mid = lo + (hi - lo) / 2;
    if (withdraw_weakly_best(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

inline SfgInstanceCheck check_sfg_instance(const GameParams& params, double fine_step) {
  GameParams p = params;
  p.w = 0.0;
  SfgInstanceCheck out;
  SpeResult solved = solve_sfg(p);
  out.branch = solved.label.path;
  bool coop_solver = out.branch == "SFG-coop";

  GridSpec unit = make_grid(p, 1.0);
  auto table = build_best_response_table(p, unit, /*add_just_before=*/true, BrAlgo::FullScan);
  auto lf = leader_favorable_outcomes(p, table);
  double maxmin = detail::maxmin_leader_utility(p, table);
  auto sup = supportable_outcomes(p, table, maxmin);
  out.prop1_ok = all_on_or_before(lf, p.t_o) && all_on_or_before(sup, p.t_o);

  bool coop_oracle = lf.size() == 1 && lf[0].t1 == Action::exact(p.t_o) &&
                     lf[0].t2 == Action::exact(p.t_o);
  out.threshold_ok = coop_solver == coop_oracle;
  if (!out.threshold_ok)
    out.detail = detail::describe_params(p) + " solver=" + out.branch +
                 " oracle=" + detail::describe_outcomes(lf);

  if (!coop_solver) {
    GridSpec fine = make_grid(p, fine_step);
    long long khat = sfg_grid_tipping_offset(p, fine);
    double formula_t1 = p.t_o - std::sqrt(p.delta_e() * p.beta2);
    double grid_t1 = fine.time_at(khat, p.t_o);
    if (std::abs(grid_t1 - formula_t1) > 2.0 * fine_step) {
      out.deter_time_ok = false;
      out.detail = detail::describe_params(p) + " grid_t1=" + std::to_string(grid_t1) +
                   " formula_t1=" + std::to_string(formula_t1);
    }
    // At the deterrence time both sides of the follower indifference are solo.
    double t1 = formula_t1;
    double lhs = utility2({Action::exact(t1), Action::just_before(t1)}, p);
    double rhs = utility2({Action::exact(t1), Action::exact(p.t_o)}, p);
    out.indifference_ok = std::abs(lhs - rhs) < 1e-9;
    double u1_deter = p.e1 - p.delta_e() * p.beta2 / p.beta1 - p.r;
    out.participation_ok = u1_deter > p.e2 - p.r;
  }
  return out;
}

struct SfgVerifyReport {
  size_t trials = 0;
  size_t threshold_mismatches = 0;
  size_t deter_time_mismatches = 0;
  size_t indifference_failures = 0;
  size_t participation_failures = 0;
  size_t prop1_violations = 0;
  std::map<std::string, size_t> branch_counts;
  std::string first_failure;
  double fine_step = 0.0;
};

inline SfgVerifyReport verify_sfg(std::uint64_t seed, size_t trials, double fine_step) {
  ParamGen gen{seed};
  SfgVerifyReport rep;
  rep.trials = trials;
  rep.fine_step = fine_step;
  for (size_t t = 0; t < trials; ++t) {
    GameParams p = gen.draw(t, 0.0);
    SfgInstanceCheck c = check_sfg_instance(p, fine_step);
    rep.branch_counts[c.branch]++;
    if (!c.threshold_ok) rep.threshold_mismatches++;
    if (!c.deter_time_ok) rep.deter_time_mismatches++;
    if (!c.indifference_ok) rep.indifference_failures++;
    if (!c.participation_ok) rep.participation_failures++;
    if (!c.prop1_ok) rep.prop1_violations++;
    if ((!c.threshold_ok || !c.deter_time_ok) && rep.first_failure.empty())
      rep.first_failure = "trial " + std::to_string(t) + ": " + c.detail;
  }
  return rep;
}

}  // namespace ffg
