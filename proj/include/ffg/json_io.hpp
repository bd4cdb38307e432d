#pragma once

// JSON serialization. Parameter files are flat objects with keys beta1,
// beta2, E1, E2, r, t_o, w, c_o1, c_o2 (missing w defaults to 1, missing
// offsets to 0). Results serialize with the branch label, outcomes, and
// diagnostics; a just-before action serializes as {"just_before": t}.
// Floating-point values are rounded to 12 significant digits on emission
// so golden files stay stable.

#include <cstdio>
#include <cstdlib>
#include <string>

#include <json.hpp>

#include "ffg/game.hpp"
#include "ffg/result_types.hpp"

namespace ffg {

using json = nlohmann::json;

inline double round12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

inline json params_to_json(const GameParams& p) {
  return json{{"beta1", round12(p.beta1)}, {"beta2", round12(p.beta2)},
              {"E1", round12(p.e1)},       {"E2", round12(p.e2)},
              {"r", round12(p.r)},         {"t_o", round12(p.t_o)},
              {"w", round12(p.w)},         {"c_o1", round12(p.c_o1)},
              {"c_o2", round12(p.c_o2)}};
}

inline GameParams params_from_json(const json& j) {
  GameParams p;
  p.beta1 = j.at("beta1").get<double>();
  p.beta2 = j.at("beta2").get<double>();
  p.e1 = j.at("E1").get<double>();
  p.e2 = j.at("E2").get<double>();
  p.r = j.at("r").get<double>();
  p.t_o = j.at("t_o").get<double>();
  p.w = j.value("w", 1.0);
  p.c_o1 = j.value("c_o1", 0.0);
  p.c_o2 = j.value("c_o2", 0.0);
  return p;
}

inline json action_to_json(const Action& a) {
  if (a.is_exact()) return round12(a.t);
  return json{{"just_before", round12(a.t)}};
}

inline Action action_from_json(const json& j) {
  if (j.is_object()) return Action::just_before(j.at("just_before").get<double>());
  return Action::exact(j.get<double>());
}

inline json outcome_to_json(const SpeOutcome& o, const GameParams& params, bool discrete) {
  json j{{"t1", action_to_json(o.t1)},
         {"t2", action_to_json(o.t2)},
         {"type", to_string(o.type)},
         {"flock", to_string(o.flock)},
         {"u1", round12(o.u1)},
         {"u2", round12(o.u2)}};
  if (discrete) {
    j["k1"] = std::llround(params.t_o - o.t1.limit_time());
    j["k2"] = std::llround(params.t_o - o.t2.limit_time());
  }
  return j;
}

inline json result_to_json(const SpeResult& r, const GameParams& params) {
  bool discrete = r.label.game == GameKind::DT;
  json outcomes = json::array();
  for (const auto& o : r.outcomes) outcomes.push_back(outcome_to_json(o, params, discrete));
  json diag{{"condition_values", json::object()}};
  for (const auto& [k, v] : r.diagnostics.values) {
    if (k.rfind("tipping_", 0) == 0)
      diag["tipping_points"][k.substr(8)] = round12(v);
    else
      diag["condition_values"][k] = round12(v);
  }
  if (!r.diagnostics.notes.empty()) diag["notes"] = r.diagnostics.notes;
  return json{{"case", r.label.path},
              {"game", to_string(r.label.game)},
              {"t_o", round12(params.t_o)},
              {"outcomes", outcomes},
              {"diagnostics", diag}};
}

}  // namespace ffg
