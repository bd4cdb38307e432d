#pragma once

// Shared result vocabulary for the three solvers and the oracle:
// theorem-branch labels, equilibrium outcomes, and diagnostics.

#include <map>
#include <string>
#include <vector>

#include "ffg/game.hpp"

namespace ffg {

enum class GameKind { CT, DT, SFG };

inline const char* to_string(GameKind g) {
  switch (g) {
    case GameKind::CT: return "CT";
    case GameKind::DT: return "DT";
    case GameKind::SFG: return "SFG";
  }
  return "?";
}

// Branch code within a game, e.g. {DT, "DT-3.1.a"} or {SFG, "SFG-coop"}.
struct CaseLabel {
  GameKind game = GameKind::CT;
  std::string path;

  friend bool operator==(const CaseLabel&, const CaseLabel&) = default;
};

enum class SpeType { CT1, CT2, CT3, DT1, DT2, DT3, DT4, DT5, SFG_COOP, SFG_DETER };

inline const char* to_string(SpeType t) {
  switch (t) {
    case SpeType::CT1: return "CT1";
    case SpeType::CT2: return "CT2";
    case SpeType::CT3: return "CT3";
    case SpeType::DT1: return "DT1";
    case SpeType::DT2: return "DT2";
    case SpeType::DT3: return "DT3";
    case SpeType::DT4: return "DT4";
    case SpeType::DT5: return "DT5";
    case SpeType::SFG_COOP: return "SFG_COOP";
    case SpeType::SFG_DETER: return "SFG_DETER";
  }
  return "?";
}

enum class FlockKind { StrictFlock, Flock, NoFlock };

inline const char* to_string(FlockKind f) {
  switch (f) {
    case FlockKind::StrictFlock: return "StrictFlock";
    case FlockKind::Flock: return "Flock";
    case FlockKind::NoFlock: return "NoFlock";
  }
  return "?";
}

// StrictFlock means identical arrivals (same kind, same time); Flock means
// distinct arrivals within the window; NoFlock otherwise.
inline FlockKind classify_flock(const Action& t1, const Action& t2, double w) {
  if (t1 == t2) return FlockKind::StrictFlock;
  return in_flock(t1, t2, w) ? FlockKind::Flock : FlockKind::NoFlock;
}

struct SpeOutcome {
  Action t1;
  Action t2;
  SpeType type = SpeType::CT1;
  FlockKind flock = FlockKind::NoFlock;
  double u1 = 0.0;
  double u2 = 0.0;
};

// Ordering for deterministic outcome lists: by arrival of t1, then t2.
inline bool outcome_less(const SpeOutcome& a, const SpeOutcome& b) {
  int c = arrival_order(a.t1, b.t1);
  if (c != 0) return c < 0;
  return arrival_order(a.t2, b.t2) < 0;
}

// Named condition values, tipping points, and advisory notes carried
// alongside every result so non-existence is explainable, not opaque.
struct Diagnostics {
  std::map<std::string, double> values;
  std::vector<std::string> notes;
};

struct SpeResult {
  std::vector<SpeOutcome> outcomes;  // empty = no pure-strategy SPE
  CaseLabel label;
  Diagnostics diagnostics;
};

inline SpeOutcome make_outcome(const Action& t1, const Action& t2, SpeType type,
                               const GameParams& params) {
  ArrivalProfile profile{t1, t2};
  auto [u1, u2] = utility(profile, params);
  return SpeOutcome{t1, t2, type, classify_flock(t1, t2, params.w), u1.total, u2.total};
}

}  // namespace ffg
