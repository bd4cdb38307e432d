#pragma once

// Two-agent strict-flocking game baseline (the w = 0 prior model).
// Exactly one SPE always exists: cooperation (t_o, t_o) when the
// territory gap is small, otherwise deterrence where the leader arrives
// at t_o - sqrt((E1 - E2) beta2) and the follower at t_o.
//
// The cooperation threshold dE <= r/2 is derived from the follower's
// indifference at (t_o, t_o) between staying (E2 - r/2) and undercutting
// in the limit (E1 - r, solo risk, since a limit arrival never strictly
// flocks); the w = 0 grid oracle validates it.

#include <cmath>

#include "ffg/game.hpp"
#include "ffg/result_types.hpp"

namespace ffg {

inline SpeResult solve_sfg(const GameParams& params) {
  params.validate();
  GameParams p = params;
  p.w = 0.0;  // window ignored; the SFG is the w = 0 game
  double d = p.delta_e();
  double threshold = p.r / 2.0;
  bool boundary = nearly_equal(d, threshold);
  bool cooperate = d < threshold || boundary;

  SpeResult result;
  result.label = {GameKind::SFG, cooperate ? "SFG-coop" : "SFG-deter"};
  if (cooperate) {
    result.outcomes.push_back(make_outcome(Action::exact(p.t_o), Action::exact(p.t_o),
                                           SpeType::SFG_COOP, p));
  } else {
    double t1 = p.t_o - std::sqrt(d * p.beta2);
    result.outcomes.push_back(
        make_outcome(Action::exact(t1), Action::exact(p.t_o), SpeType::SFG_DETER, p));
  }

  auto& v = result.diagnostics.values;
  v["delta_e"] = d;
  v["coop_threshold"] = threshold;
  v["deter_time"] = p.t_o - std::sqrt(d * p.beta2);
  v["u1_deter"] = p.e1 - d * p.beta2 / p.beta1 - p.r;
  v["resignation_u1"] = p.e2 - p.r;
  if (boundary)
    result.diagnostics.notes.push_back(
        "delta_e equals the cooperation threshold; boundary assigned to cooperation");
  for (const auto& wmsg : p.warnings()) result.diagnostics.notes.push_back(wmsg);
  return result;
}

}  // namespace ffg
