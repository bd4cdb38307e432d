#pragma once

// Closed-form subgame-perfect equilibria of the discrete-time game,
// where arrival times live on the unit grid t = t_o - k, k integer.
//
// Types of equilibria:
//   Type 1  (t_o, t_o)                  strict flock
//   Type 2  (t_o - 1, t_o)              flock
//   Type 3  (t_o - k*, t_o - k* + 1)    flock
//   Type 4  (t_o - k*, t_o)             no flock
//   Type 5  (t_o, t_o - 1)              flock, weaker agent first
// with the deterrence offset
//   k* = ceil(min(sqrt((dE + r/2) beta2), dE beta2 / 4 + 1)) - 1.
//
// The follower withdraws into the flock (t1 + 1) rather than to t_o
// exactly when k < sqrt(r beta2 / 2) + 1; that comparator is re-derived
// from u2(t_o-k, t_o-k+1) vs u2(t_o-k, t_o) and pinned by tests.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ffg/game.hpp"
#include "ffg/result_types.hpp"
#include "ffg/spe_continuous.hpp"

namespace ffg {

namespace detail {

// Ceiling with a snap: values within the relative condition tolerance of
// an integer are treated as that integer before rounding up, so that
// floating-point noise cannot shift k* by one.
inline long long ceil_snapped(double x) {
  double n = std::nearbyint(x);
  if (nearly_equal(x, n)) return static_cast<long long>(n);
  return static_cast<long long>(std::ceil(x));
}

}  // namespace detail

// Deterrence offset: the number of unit steps before t_o at which the
// follower stops undercutting the leader.
inline long long k_star(const GameParams& params) {
  params.validate();
  detail::require_unit_window(params, "k_star");
  double d = params.delta_e();
  double m = std::min(std::sqrt((d + params.r / 2.0) * params.beta2),
                      d * params.beta2 / 4.0 + 1.0);
  return detail::ceil_snapped(m) - 1;
}

// Follower's best response on the unit grid given leader time t1 = t_o - k1.
// Candidates: t1 - 1 (undercut), t1 + 1 if no later than t_o, and t_o.
inline std::vector<std::pair<Action, double>> follower_best_response_dt(
    double t1, const GameParams& params) {
  params.validate();
  std::vector<Action> candidates;
  candidates.push_back(Action::exact(t1 - 1.0));
  if (t1 + 1.0 < params.t_o) candidates.push_back(Action::exact(t1 + 1.0));
  candidates.push_back(Action::exact(params.t_o));

  Action leader = Action::exact(t1);
  double best = -std::numeric_limits<double>::infinity();
  std::vector<std::pair<Action, double>> evaluated;
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

struct DtConditions {
  double d = 0.0;
  double x = 0.0;            // d * beta2
  long long k = 0;           // k*
  double gate = 0.0;         // sqrt(r beta2 / 2) + 1
  double comp31 = 0.0;       // sqrt(d beta1)
  double comp32 = -1.0;      // sqrt((d - r/2) beta1), -1 when argument <= 0
  bool in31 = false;         // k* <= gate
  bool eq31 = false;         // k* == comp31 within tolerance
  bool eq32 = false;         // k* == comp32 within tolerance
};

inline DtConditions dt_conditions(const GameParams& p) {
  DtConditions c;
  c.d = p.delta_e();
  c.x = c.d * p.beta2;
  c.k = k_star(p);
  c.gate = std::sqrt(p.r * p.beta2 / 2.0) + 1.0;
  c.comp31 = std::sqrt(c.d * p.beta1);
  double arg32 = (c.d - p.r / 2.0) * p.beta1;
  c.comp32 = arg32 > 0.0 ? std::sqrt(arg32) : -1.0;
  double kd = static_cast<double>(c.k);
  c.in31 = kd < c.gate || nearly_equal(kd, c.gate);
  c.eq31 = nearly_equal(kd, c.comp31);
  c.eq32 = c.comp32 > 0.0 && nearly_equal(kd, c.comp32);
  return c;
}

}  // namespace detail

inline CaseLabel classify_case_dt(const GameParams& params) {
  params.validate();
  detail::require_unit_window(params, "classify_case_dt");
  auto c = detail::dt_conditions(params);
  if (c.x < 1.0 || nearly_equal(c.x, 1.0)) return {GameKind::DT, "DT-1"};
  if (c.x < 4.0 || nearly_equal(c.x, 4.0)) return {GameKind::DT, "DT-2"};
  double kd = static_cast<double>(c.k);
  if (c.in31) {
    if (c.eq31) return {GameKind::DT, "DT-3.1.c"};
    return {GameKind::DT, kd < c.comp31 ? "DT-3.1.a" : "DT-3.1.b"};
  }
  if (c.eq32) return {GameKind::DT, "DT-3.2.c"};
  return {GameKind::DT, kd < c.comp32 ? "DT-3.2.a" : "DT-3.2.b"};
}

inline SpeResult solve_dt(const GameParams& params) {
  params.validate();
  detail::require_unit_window(params, "solve_dt");
  auto c = detail::dt_conditions(params);
  double t_o = params.t_o;
  double tk = t_o - static_cast<double>(c.k);

  SpeResult result;
  result.label = classify_case_dt(params);

  auto add = [&](double a, double b, SpeType type) {
    result.outcomes.push_back(make_outcome(Action::exact(a), Action::exact(b), type, params));
  };

  const std::string& path = result.label.path;
  if (path == "DT-1") {
    add(t_o, t_o, SpeType::DT1);
  } else if (path == "DT-2") {
    add(t_o - 1.0, t_o, SpeType::DT2);
  } else if (path == "DT-3.1.a") {
    add(tk, tk + 1.0, SpeType::DT3);
  } else if (path == "DT-3.1.b") {
    add(t_o, t_o - 1.0, SpeType::DT5);
  } else if (path == "DT-3.1.c") {
    add(tk, tk + 1.0, SpeType::DT3);
    add(t_o, t_o - 1.0, SpeType::DT5);
  } else if (path == "DT-3.2.a") {
    add(tk, t_o, SpeType::DT4);
  } else if (path == "DT-3.2.b") {
    add(t_o, t_o - 1.0, SpeType::DT5);
  } else if (path == "DT-3.2.c") {
    add(tk, t_o, SpeType::DT4);
    add(t_o, t_o - 1.0, SpeType::DT5);
  }
  std::sort(result.outcomes.begin(), result.outcomes.end(), outcome_less);

  auto& v = result.diagnostics.values;
  v["delta_e"] = c.d;
  v["k_star"] = static_cast<double>(c.k);
  v["gate"] = c.gate;
  v["comp_31"] = c.comp31;
  v["comp_32"] = c.comp32;
  v["case_split"] = c.x;
  v["resignation_u1"] = params.e2 - params.r / 2.0;
  if (c.k >= 0) {
    v["u1_deter_flock"] = utility1({Action::exact(tk), Action::exact(tk + 1.0)}, params);
    v["u1_deter_solo"] = utility1({Action::exact(tk), Action::exact(t_o)}, params);
  }
  for (const auto& wmsg : params.warnings()) result.diagnostics.notes.push_back(wmsg);
  return result;
}

// Classify a rising sequence of territory gaps; past a computable
// threshold every label is DT-3.2.a (deterrence becomes the unique SPE).
inline std::vector<CaseLabel> limit_large_gap(const GameParams& params,
                                              const std::vector<double>& gaps) {
  params.validate();
  for (size_t i = 1; i < gaps.size(); ++i)
    if (!(gaps[i] > gaps[i - 1]))
      throw std::invalid_argument("limit_large_gap: gaps must be increasing");
  std::vector<CaseLabel> out;
  out.reserve(gaps.size());
  for (double g : gaps) {
    GameParams p = params;
    p.e1 = p.e2 + g;
    out.push_back(classify_case_dt(p));
  }
  return out;
}

}  // namespace ffg
