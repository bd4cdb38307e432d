#pragma once

// Closed-form subgame-perfect equilibria of the continuous-time game:
// branch classification over the seven cases, the three tipping points
// from the follower indifference equations, and outcome construction.
//
// Types of equilibria:
//   Type 1  (t_o - sqrt(beta2*dE), t_o)                      flock
//   Type 2  (t_o - sqrt(beta2*(dE + r/2)), t_o)              no flock
//   Type 3  (t_o - (beta2*dE + 1)/2, t1 + 1)                 flock
// where dE = E1 - E2. Some branches admit no pure-strategy SPE; those
// return an empty outcome list with the witness inequalities recorded.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ffg/game.hpp"
#include "ffg/result_types.hpp"

namespace ffg {

namespace detail {
inline void require_unit_window(const GameParams& params, const char* who) {
  if (params.w != 1.0)
    throw std::invalid_argument(std::string(who) + ": closed-form results require w = 1");
}
}  // namespace detail

// Leader times at which the follower is exactly indifferent between
// undercutting (arriving just before the leader) and withdrawing.
struct TippingPoints {
  double t11 = 0.0;  // undercut vs t_o while still flocking with the leader
  double t12 = 0.0;  // undercut vs t_o, no flock
  double t13 = 0.0;  // undercut vs t1 + 1
};

inline TippingPoints tipping_points(const GameParams& params) {
  params.validate();
  detail::require_unit_window(params, "tipping_points");
  double d = params.delta_e();
  TippingPoints tp;
  tp.t11 = params.t_o - std::sqrt(params.beta2 * d);
  tp.t12 = params.t_o - std::sqrt(params.beta2 * (d + params.r / 2.0));
  tp.t13 = params.t_o - (params.beta2 * d + 1.0) / 2.0;
  return tp;
}

// The follower's best response to a committed leader time t1 <= t_o.
// Candidates: just before t1 (undercut), t1 + 1 if still no later than
// t_o (withdraw inside the flock), and t_o (withdraw at minimum cost).
// Every candidate within kEpsTie of the maximum is returned.
inline std::vector<std::pair<Action, double>> follower_best_response_ct(
    double t1, const GameParams& params) {
  params.validate();
  if (t1 > params.t_o)
    throw std::invalid_argument("follower_best_response_ct: t1 must not exceed t_o");
  std::vector<Action> candidates;
  candidates.push_back(Action::just_before(t1));
  if (t1 + 1.0 < params.t_o) candidates.push_back(Action::exact(t1 + 1.0));
  candidates.push_back(Action::exact(params.t_o));

  Action leader = Action::exact(t1);
  std::vector<std::pair<Action, double>> evaluated;
  double best = -std::numeric_limits<double>::infinity();
  for (const Action& a : candidates) {
    double u = utility2({leader, a}, params);
    evaluated.emplace_back(a, u);
    best = std::max(best, u);
  }
  std::vector<std::pair<Action, double>> out;
  for (const auto& [a, u] : evaluated)
    if (u >= best - kEpsTie) out.emplace_back(a, u);
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return arrival_order(x.first, y.first) < 0; });
  return out;
}

namespace detail {

struct CtConditions {
  double d = 0.0;           // territory gap
  double x = 0.0;           // d * beta2
  double y = 0.0;           // sqrt(2 r beta2) + 1
  double cond3_lhs = 0.0;   // 4 d beta1
  double cond3_rhs = 0.0;   // (d beta2 + 1)^2
  double cond2_lhs = 0.0;   // (d - r/2) beta1
  double cond2_rhs = 0.0;   // (d + r/2) beta2
  bool case1 = false;       // d <= 1/beta2
  bool boundary23 = false;  // x == y within tolerance
  bool below23 = false;     // x < y
  bool cond2 = false;       // type-2 leader participation
  bool cond3 = false;       // type-3 leader participation
};

inline CtConditions ct_conditions(const GameParams& p) {
  CtConditions c;
  c.d = p.delta_e();
  c.x = c.d * p.beta2;
  c.y = std::sqrt(2.0 * p.r * p.beta2) + 1.0;
  c.cond3_lhs = 4.0 * c.d * p.beta1;
  c.cond3_rhs = (c.d * p.beta2 + 1.0) * (c.d * p.beta2 + 1.0);
  c.cond2_lhs = (c.d - p.r / 2.0) * p.beta1;
  c.cond2_rhs = (c.d + p.r / 2.0) * p.beta2;
  c.case1 = c.x < 1.0 || nearly_equal(c.x, 1.0);
  c.boundary23 = nearly_equal(c.x, c.y);
  c.below23 = c.x < c.y;
  c.cond3 = c.cond3_lhs > c.cond3_rhs || nearly_equal(c.cond3_lhs, c.cond3_rhs);
  c.cond2 = c.cond2_lhs > c.cond2_rhs || nearly_equal(c.cond2_lhs, c.cond2_rhs);
  return c;
}

}  // namespace detail

inline CaseLabel classify_case_ct(const GameParams& params) {
  params.validate();
  detail::require_unit_window(params, "classify_case_ct");
  auto c = detail::ct_conditions(params);
  if (c.case1) return {GameKind::CT, "CT-1"};
  if (c.boundary23)
    return {GameKind::CT, (c.cond2 || c.cond3) ? "CT-2.3.a" : "CT-2.3.b"};
  if (c.below23) return {GameKind::CT, c.cond3 ? "CT-2.1.a" : "CT-2.1.b"};
  return {GameKind::CT, c.cond2 ? "CT-2.2.a" : "CT-2.2.b"};
}

inline SpeResult solve_ct(const GameParams& params) {
  params.validate();
  detail::require_unit_window(params, "solve_ct");
  auto c = detail::ct_conditions(params);
  auto tp = tipping_points(params);
  double resignation = params.e2 - params.r / 2.0;  // u1(t_o, just before t_o)

  SpeResult result;
  result.label = classify_case_ct(params);

  auto type1 = [&] { return make_outcome(Action::exact(tp.t11), Action::exact(params.t_o), SpeType::CT1, params); };
  auto type2 = [&] { return make_outcome(Action::exact(tp.t12), Action::exact(params.t_o), SpeType::CT2, params); };
  auto type3 = [&] { return make_outcome(Action::exact(tp.t13), Action::exact(tp.t13 + 1.0), SpeType::CT3, params); };

  const std::string& path = result.label.path;
  if (path == "CT-1") {
    result.outcomes.push_back(type1());
  } else if (path == "CT-2.1.a") {
    result.outcomes.push_back(type3());
  } else if (path == "CT-2.2.a") {
    result.outcomes.push_back(type2());
  } else if (path == "CT-2.3.a") {
    // At the boundary both tipping points apply; return every outcome
    // whose leader-participation condition holds.
    if (c.cond2) result.outcomes.push_back(type2());
    if (c.cond3) result.outcomes.push_back(type3());
  }
  std::sort(result.outcomes.begin(), result.outcomes.end(), outcome_less);

  auto& v = result.diagnostics.values;
  v["delta_e"] = c.d;
  v["tipping_t11"] = tp.t11;
  v["tipping_t12"] = tp.t12;
  v["tipping_t13"] = tp.t13;
  v["case_split_lhs"] = c.x;
  v["case_split_rhs"] = c.y;
  v["cond2_lhs"] = c.cond2_lhs;
  v["cond2_rhs"] = c.cond2_rhs;
  v["cond3_lhs"] = c.cond3_lhs;
  v["cond3_rhs"] = c.cond3_rhs;
  v["resignation_u1"] = resignation;
  v["u1_type1"] = utility1({Action::exact(tp.t11), Action::exact(params.t_o)}, params);
  v["u1_type2"] = utility1({Action::exact(tp.t12), Action::exact(params.t_o)}, params);
  if (params.beta2 * c.d >= 1.0)
    v["u1_type3"] = utility1({Action::exact(tp.t13), Action::exact(tp.t13 + 1.0)}, params);
  for (const auto& o : result.outcomes)
    if (nearly_equal(o.t1.limit_time() + 1.0, params.t_o))
      result.diagnostics.notes.push_back("t1 + 1 coincides with t_o within tolerance");
  for (const auto& wmsg : params.warnings()) result.diagnostics.notes.push_back(wmsg);
  return result;
}

// Executable form of the no-late-arrival property: both equilibrium
// arrivals are no later than t_o.
inline bool check_prop1_ct(const SpeOutcome& outcome, const GameParams& params) {
  return outcome.t1.limit_time() <= params.t_o && outcome.t2.limit_time() <= params.t_o;
}

}  // namespace ffg
