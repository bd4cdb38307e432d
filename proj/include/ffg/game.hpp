#pragma once

// Core model types for the two-agent flock-formation game: parameters,
// arrival actions (including "arrive just before t" limit actions), and
// the utility function u_i = e_i - c_i - p_i.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ffg {

// Absolute tolerance for utility comparisons (tie detection).
inline constexpr double kEpsTie = 1e-9;
// Relative tolerance for detecting boundary equalities in case conditions.
inline constexpr double kEpsCond = 1e-9;

inline bool nearly_equal(double a, double b, double eps = kEpsCond) {
  return std::abs(a - b) <= eps * std::max({1.0, std::abs(a), std::abs(b)});
}

// Full parameter tuple for one game instance. Agent 1 is the stronger
// leader (beta1 > beta2), territory 1 the better one (e1 > e2).
struct GameParams {
  double beta1 = 0.0;  // strength of agent 1
  double beta2 = 0.0;  // strength of agent 2
  double e1 = 0.0;     // quality of the better territory
  double e2 = 0.0;     // quality of the worse territory
  double r = 0.0;      // nominal solo predation risk
  double t_o = 0.0;    // optimal arrival time
  double w = 1.0;      // flocking window width; 0 reserved for the SFG
  double c_o1 = 0.0;   // fixed travel-cost offset, agent 1
  double c_o2 = 0.0;   // fixed travel-cost offset, agent 2

  double delta_e() const { return e1 - e2; }

  void validate() const {
    if (!(beta2 > 0.0)) throw std::invalid_argument("invalid params: beta2 must be positive");
    if (!(beta1 > beta2)) throw std::invalid_argument("invalid params: beta1 > beta2 required");
    if (!(e2 > 0.0)) throw std::invalid_argument("invalid params: E2 must be positive");
    if (!(e1 > e2)) throw std::invalid_argument("invalid params: E1 > E2 required");
    if (!(r >= 0.0)) throw std::invalid_argument("invalid params: r must be nonnegative");
    if (!(w >= 0.0)) throw std::invalid_argument("invalid params: w must be nonnegative");
    if (!std::isfinite(t_o)) throw std::invalid_argument("invalid params: t_o must be finite");
  }

  // Accepted-but-degenerate settings, surfaced in result diagnostics.
  std::vector<std::string> warnings() const {
    std::vector<std::string> out;
    if (r == 0.0) out.push_back("degenerate: r = 0, flocking carries no benefit");
    return out;
  }
};

// An arrival time. JustBefore(t) stands for t - epsilon in the limit
// epsilon -> 0+; no epsilon is ever materialized.
struct Action {
  enum class Kind { Exact, JustBefore };

  Kind kind = Kind::Exact;
  double t = 0.0;

  static Action exact(double t) { return {Kind::Exact, t}; }
  static Action just_before(double t) { return {Kind::JustBefore, t}; }

  bool is_exact() const { return kind == Kind::Exact; }
  // The limit point; travel cost and window distances evaluate here.
  double limit_time() const { return t; }

  friend bool operator==(const Action&, const Action&) = default;
};

// Arrival order: JustBefore(t) is strictly earlier than Exact(t) and
// strictly later than any action with an earlier limit time.
// Returns <0 if a arrives first, >0 if b arrives first, 0 on an exact tie.
inline int arrival_order(const Action& a, const Action& b) {
  if (a.t < b.t) return -1;
  if (a.t > b.t) return 1;
  int ra = a.is_exact() ? 1 : 0;
  int rb = b.is_exact() ? 1 : 0;
  return ra - rb;
}

inline bool arrives_before(const Action& a, const Action& b) { return arrival_order(a, b) < 0; }

// Whether two arrivals form a flock under window w. For w = 0 the flock
// requires arriving at exactly the same time, so a limit action never
// flocks with anything. For w > 0 the window test uses the limit
// distance |t_a - t_b| <= w, boundary inclusive.
inline bool in_flock(const Action& a, const Action& b, double w) {
  if (w == 0.0) return a.is_exact() && b.is_exact() && a.t == b.t;
  return std::abs(a.limit_time() - b.limit_time()) <= w;
}

// Joint action profile; the leader's time must be an exact arrival.
struct ArrivalProfile {
  Action t1;  // agent 1 (leader), Exact only
  Action t2;  // agent 2 (follower), may be JustBefore

  void validate() const {
    if (!t1.is_exact())
      throw std::invalid_argument("profile: leader arrival must be an exact time");
  }
};

// Per-agent utility decomposition. total is always assembled as
// benefit - travel_cost - risk, in that expression order.
struct UtilityBreakdown {
  double benefit = 0.0;
  double travel_cost = 0.0;
  double risk = 0.0;
  double total = 0.0;
};

// Territory assignment: earlier arrival claims the better territory;
// on an exact tie the stronger agent (agent 1) claims it.
inline std::pair<double, double> assign_benefit(const ArrivalProfile& profile,
                                                const GameParams& params) {
  profile.validate();
  int ord = arrival_order(profile.t1, profile.t2);
  if (ord <= 0) return {params.e1, params.e2};
  return {params.e2, params.e1};
}

// c(t) = (t - t_o)^2 / beta + c_o; limit actions evaluate at the limit point.
inline double travel_cost(const Action& t, double beta, double t_o, double c_o = 0.0) {
  if (!(beta > 0.0)) throw std::invalid_argument("travel_cost: beta must be positive");
  double d = t.limit_time() - t_o;
  return d * d / beta + c_o;
}

// Each agent bears r/2 when the two arrivals form a flock, r otherwise.
inline std::pair<double, double> predation_risk(const ArrivalProfile& profile,
                                                const GameParams& params) {
  double p = in_flock(profile.t1, profile.t2, params.w) ? params.r / 2.0 : params.r;
  return {p, p};
}

inline std::pair<UtilityBreakdown, UtilityBreakdown> utility(const ArrivalProfile& profile,
                                                             const GameParams& params) {
  auto [b1, b2] = assign_benefit(profile, params);
  double c1 = travel_cost(profile.t1, params.beta1, params.t_o, params.c_o1);
  double c2 = travel_cost(profile.t2, params.beta2, params.t_o, params.c_o2);
  auto [p1, p2] = predation_risk(profile, params);
  UtilityBreakdown u1{b1, c1, p1, b1 - c1 - p1};
  UtilityBreakdown u2{b2, c2, p2, b2 - c2 - p2};
  return {u1, u2};
}

inline double utility1(const ArrivalProfile& profile, const GameParams& params) {
  return utility(profile, params).first.total;
}

inline double utility2(const ArrivalProfile& profile, const GameParams& params) {
  return utility(profile, params).second.total;
}

}  // namespace ffg
