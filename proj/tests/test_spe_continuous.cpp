#include "ffg/spe_continuous.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "ffg/oracle.hpp"
#include "ffg/param_gen.hpp"
#include "ffg/verify.hpp"

namespace ffg {
namespace {

GameParams make(double beta1, double beta2, double e1, double e2, double r = 2.0,
                double t_o = 10.0) {
  GameParams p;
  p.beta1 = beta1;
  p.beta2 = beta2;
  p.e1 = e1;
  p.e2 = e2;
  p.r = r;
  p.t_o = t_o;
  p.w = 1.0;
  return p;
}

// Leader-favorable value of committing to t1: the follower plays the
// best response that maximizes the leader's utility among its ties.
double leader_value(const GameParams& p, double t1) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& [a, u2] : follower_best_response_ct(t1, p))
    best = std::max(best, utility1({Action::exact(t1), a}, p));
  return best;
}

TEST(TippingPoints, ClosedForms) {
  auto tp1 = tipping_points(make(4.5, 4.0, 3.2, 3.0));
  EXPECT_NEAR(tp1.t11, 10.0 - std::sqrt(0.8), 1e-12);  // ~9.10557
  auto tp2 = tipping_points(make(4.5, 4.0, 5.0, 3.0));
  EXPECT_NEAR(tp2.t12, 10.0 - std::sqrt(12.0), 1e-12);  // ~6.53590
  auto tp3 = tipping_points(make(4.5, 4.0, 4.0, 3.0));
  EXPECT_DOUBLE_EQ(tp3.t13, 7.5);
}

TEST(TippingPoints, RejectsNonUnitWindow) {
  auto p = make(4.5, 4.0, 5.0, 3.0);
  p.w = 0.5;
  EXPECT_THROW(tipping_points(p), std::invalid_argument);
  EXPECT_THROW(solve_ct(p), std::invalid_argument);
  EXPECT_THROW(classify_case_ct(p), std::invalid_argument);
}

TEST(FollowerBestResponse, UndercutDominatesAtOptimalTime) {
  auto p = make(4.5, 4.0, 5.0, 3.0);
  auto br = follower_best_response_ct(10.0, p);
  ASSERT_EQ(br.size(), 1u);
  EXPECT_EQ(br[0].first, Action::just_before(10.0));
  EXPECT_NEAR(br[0].second, 4.0, 1e-12);
}

TEST(FollowerBestResponse, IndifferentAtFirstTippingPoint) {
  auto p = make(4.5, 4.0, 3.2, 3.0);
  double t1 = tipping_points(p).t11;
  auto br = follower_best_response_ct(t1, p);
  ASSERT_EQ(br.size(), 2u);
  EXPECT_EQ(br[0].first, Action::just_before(t1));
  EXPECT_EQ(br[1].first, Action::exact(10.0));
  EXPECT_NEAR(br[0].second, 2.0, 1e-9);
  EXPECT_NEAR(br[1].second, 2.0, 1e-9);
}

TEST(FollowerBestResponse, IndifferentAtThirdTippingPoint) {
  auto p = make(4.5, 4.0, 5.0, 4.0);  // gap 1, tipping at 7.5
  auto br = follower_best_response_ct(7.5, p);
  ASSERT_EQ(br.size(), 2u);
  EXPECT_EQ(br[0].first, Action::just_before(7.5));
  EXPECT_EQ(br[1].first, Action::exact(8.5));
  EXPECT_NEAR(br[0].second, 2.4375, 1e-12);
  EXPECT_NEAR(br[1].second, 2.4375, 1e-12);
}

TEST(FollowerBestResponse, RejectsLateLeader) {
  auto p = make(4.5, 4.0, 5.0, 3.0);
  EXPECT_THROW(follower_best_response_ct(10.5, p), std::invalid_argument);
}

TEST(Classify, BranchExamples) {
  EXPECT_EQ(classify_case_ct(make(4.5, 4.0, 3.2, 3.0)).path, "CT-1");
  EXPECT_EQ(classify_case_ct(make(4.5, 4.0, 4.0, 3.0)).path, "CT-2.1.b");
  EXPECT_EQ(classify_case_ct(make(40.0, 4.0, 5.0, 3.0)).path, "CT-2.2.a");
  EXPECT_EQ(classify_case_ct(make(10.0, 4.0, 4.0, 3.0)).path, "CT-2.1.a");
  EXPECT_EQ(classify_case_ct(make(4.5, 4.0, 5.0, 3.0)).path, "CT-2.2.b");
}

TEST(Solve, SmallGapFlockEquilibrium) {
  auto p = make(4.5, 4.0, 3.2, 3.0);
  auto res = solve_ct(p);
  EXPECT_EQ(res.label.path, "CT-1");
  ASSERT_EQ(res.outcomes.size(), 1u);
  const auto& o = res.outcomes[0];
  EXPECT_NEAR(o.t1.limit_time(), 9.1055728090000841, 1e-9);
  EXPECT_EQ(o.t2, Action::exact(10.0));
  EXPECT_EQ(o.type, SpeType::CT1);
  EXPECT_EQ(o.flock, FlockKind::Flock);
  EXPECT_TRUE(check_prop1_ct(o, p));
}

TEST(Solve, FlockedDeterrenceEquilibrium) {
  auto res = solve_ct(make(10.0, 4.0, 4.0, 3.0));
  EXPECT_EQ(res.label.path, "CT-2.1.a");
  ASSERT_EQ(res.outcomes.size(), 1u);
  EXPECT_EQ(res.outcomes[0].t1, Action::exact(7.5));
  EXPECT_EQ(res.outcomes[0].t2, Action::exact(8.5));
  EXPECT_EQ(res.outcomes[0].type, SpeType::CT3);
  EXPECT_EQ(res.outcomes[0].flock, FlockKind::Flock);
}

TEST(Solve, NonexistenceBranchIsEmptyNotAnError) {
  auto res = solve_ct(make(4.5, 4.0, 5.0, 3.0));
  EXPECT_EQ(res.label.path, "CT-2.2.b");
  EXPECT_TRUE(res.outcomes.empty());
  // Witness values are in the diagnostics.
  EXPECT_LT(res.diagnostics.values.at("cond2_lhs"), res.diagnostics.values.at("cond2_rhs"));
}

TEST(Solve, BoundaryCaseReturnsBothEquilibria) {
  // dE beta2 = sqrt(2 r beta2) + 1 exactly, with the type-2 participation
  // condition holding with equality; both tipping points coincide at 7.
  auto p = make(36.0, 4.0, 4.25, 3.0);
  auto res = solve_ct(p);
  EXPECT_EQ(res.label.path, "CT-2.3.a");
  ASSERT_EQ(res.outcomes.size(), 2u);
  EXPECT_EQ(res.outcomes[0].t1, Action::exact(7.0));
  EXPECT_EQ(res.outcomes[0].t2, Action::exact(8.0));
  EXPECT_EQ(res.outcomes[0].type, SpeType::CT3);
  EXPECT_EQ(res.outcomes[1].t1, Action::exact(7.0));
  EXPECT_EQ(res.outcomes[1].t2, Action::exact(10.0));
  EXPECT_EQ(res.outcomes[1].type, SpeType::CT2);
  EXPECT_DOUBLE_EQ(res.outcomes[0].u1, 3.0);
  EXPECT_DOUBLE_EQ(res.outcomes[1].u1, 2.0);
}

TEST(Solve, BoundaryCaseWithoutParticipationIsEmpty) {
  auto res = solve_ct(make(4.5, 4.0, 4.25, 3.0));
  EXPECT_EQ(res.label.path, "CT-2.3.b");
  EXPECT_TRUE(res.outcomes.empty());
}

TEST(Prop1, DetectsLateArrivals) {
  auto p = make(4.5, 4.0, 3.2, 3.0);
  SpeOutcome good = solve_ct(p).outcomes[0];
  EXPECT_TRUE(check_prop1_ct(good, p));
  SpeOutcome bad = good;
  bad.t1 = Action::exact(10.5);
  EXPECT_FALSE(check_prop1_ct(bad, p));
}

TEST(Invariants, RandomInstances) {
  ParamGen gen{2024};
  int solved = 0;
  for (std::uint64_t t = 0; t < 400; ++t) {
    GameParams p = gen.draw(t);
    SpeResult res = solve_ct(p);
    double resignation = p.e2 - p.r / 2.0;
    if (res.outcomes.empty()) {
      // Every applicable deterrence candidate pays strictly less than
      // resigning, which is exactly why no pure SPE exists.
      const auto& v = res.diagnostics.values;
      if (res.label.path == "CT-2.1.b" || res.label.path == "CT-2.3.b")
        EXPECT_LT(v.at("u1_type3"), resignation);
      if (res.label.path == "CT-2.2.b" || res.label.path == "CT-2.3.b")
        EXPECT_LT(v.at("u1_type2"), resignation);
      continue;
    }
    ++solved;
    for (const auto& o : res.outcomes) {
      EXPECT_TRUE(check_prop1_ct(o, p));
      // The stronger agent strictly leads.
      EXPECT_LT(arrival_order(o.t1, o.t2), 0);
      switch (o.type) {
        case SpeType::CT1:
          EXPECT_EQ(o.flock, FlockKind::Flock);
          EXPECT_EQ(o.t2, Action::exact(p.t_o));
          break;
        case SpeType::CT2:
          EXPECT_EQ(o.flock, FlockKind::NoFlock);
          EXPECT_GT(p.t_o - o.t1.limit_time(), 1.0);
          break;
        case SpeType::CT3:
          EXPECT_DOUBLE_EQ(o.t2.limit_time() - o.t1.limit_time(), 1.0);
          EXPECT_EQ(o.flock, FlockKind::Flock);
          break;
        default:
          FAIL() << "unexpected type";
      }
      // Follower optimality: t2 is among the follower's best responses.
      bool member = false;
      for (const auto& [a, u2] : follower_best_response_ct(o.t1.limit_time(), p))
        if (a == o.t2) member = true;
      EXPECT_TRUE(member);
    }
  }
  EXPECT_GT(solved, 50);  // the draw spans existence and non-existence
}

TEST(Invariants, IndifferenceResidualsBelow1em9) {
  ParamGen gen{77};
  for (std::uint64_t t = 0; t < 300; ++t) {
    TippingResiduals res = tipping_residuals(gen.draw(t));
    if (res.undercut_vs_to_flock >= 0.0) EXPECT_LT(res.undercut_vs_to_flock, 1e-9);
    EXPECT_LT(res.undercut_vs_to_solo, 1e-9);
    if (res.undercut_vs_plus1 >= 0.0) EXPECT_LT(res.undercut_vs_plus1, 1e-9);
  }
}

TEST(Invariants, NoProfitableLeaderDeviationSampled) {
  ParamGen gen{5150};
  SplitMix64 rng{99};
  for (std::uint64_t t = 0; t < 40; ++t) {
    GameParams p = gen.draw(t);
    SpeResult res = solve_ct(p);
    if (res.outcomes.empty()) continue;
    double span = static_cast<double>(choose_k_max(p, 1.0));
    for (const auto& o : res.outcomes) {
      for (int s = 0; s < 1000; ++s) {
        double t1 = p.t_o - rng.uniform(0.0, span);
        EXPECT_LE(leader_value(p, t1), o.u1 + 1e-9);
      }
    }
  }
}

}  // namespace
}  // namespace ffg
