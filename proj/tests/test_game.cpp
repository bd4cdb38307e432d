#include "ffg/game.hpp"

#include <gtest/gtest.h>

#include "ffg/json_io.hpp"
#include "ffg/param_gen.hpp"
#include "ffg/result_types.hpp"

namespace ffg {
namespace {

GameParams example_params() {
  GameParams p;
  p.beta1 = 4.5;
  p.beta2 = 4.0;
  p.e1 = 5.0;
  p.e2 = 3.0;
  p.r = 2.0;
  p.t_o = 10.0;
  p.w = 1.0;
  return p;
}

TEST(ArrivalOrder, LimitActionSitsJustBeforeItsTime) {
  Action jb = Action::just_before(10.0);
  EXPECT_LT(arrival_order(jb, Action::exact(10.0)), 0);
  EXPECT_GT(arrival_order(jb, Action::exact(9.5)), 0);
  EXPECT_EQ(arrival_order(jb, Action::just_before(10.0)), 0);
  EXPECT_EQ(arrival_order(Action::exact(7.0), Action::exact(7.0)), 0);
}

TEST(Benefit, EarlierArrivalTakesBetterTerritory) {
  auto p = example_params();
  auto [b1, b2] = assign_benefit({Action::exact(9.0), Action::exact(10.0)}, p);
  EXPECT_EQ(b1, 5.0);
  EXPECT_EQ(b2, 3.0);
}

TEST(Benefit, ExactTieGoesToStrongerAgent) {
  auto p = example_params();
  auto [b1, b2] = assign_benefit({Action::exact(10.0), Action::exact(10.0)}, p);
  EXPECT_EQ(b1, 5.0);
  EXPECT_EQ(b2, 3.0);
}

TEST(Benefit, FollowerLimitArrivalIsStrictlyEarlier) {
  auto p = example_params();
  auto [b1, b2] = assign_benefit({Action::exact(10.0), Action::just_before(10.0)}, p);
  EXPECT_EQ(b1, 3.0);
  EXPECT_EQ(b2, 5.0);
}

TEST(TravelCost, MinimumAtOptimalTime) {
  EXPECT_EQ(travel_cost(Action::exact(10.0), 3.7, 10.0), 0.0);
}

TEST(TravelCost, QuadraticPenalty) {
  EXPECT_DOUBLE_EQ(travel_cost(Action::exact(8.0), 4.0, 10.0), 1.0);
  EXPECT_DOUBLE_EQ(travel_cost(Action::just_before(8.0), 4.0, 10.0), 1.0);
  EXPECT_DOUBLE_EQ(travel_cost(Action::exact(8.0), 4.0, 10.0, 0.5), 1.5);
}

TEST(TravelCost, RejectsNonPositiveStrength) {
  EXPECT_THROW(travel_cost(Action::exact(9.0), 0.0, 10.0), std::invalid_argument);
  EXPECT_THROW(travel_cost(Action::exact(9.0), -1.0, 10.0), std::invalid_argument);
}

TEST(PredationRisk, HalvedInsideWindowInclusive) {
  auto p = example_params();
  auto inside = predation_risk({Action::exact(9.5), Action::exact(10.0)}, p);
  EXPECT_EQ(inside.first, 1.0);
  EXPECT_EQ(inside.second, 1.0);
  auto boundary = predation_risk({Action::exact(9.0), Action::exact(10.0)}, p);
  EXPECT_EQ(boundary.first, 1.0);
  auto outside = predation_risk({Action::exact(8.5), Action::exact(10.0)}, p);
  EXPECT_EQ(outside.first, 2.0);
  EXPECT_EQ(outside.second, 2.0);
}

TEST(PredationRisk, ZeroWindowRequiresExactSimultaneity) {
  auto p = example_params();
  p.w = 0.0;
  EXPECT_EQ(predation_risk({Action::exact(10.0), Action::exact(10.0)}, p).second, 1.0);
  EXPECT_EQ(predation_risk({Action::exact(10.0), Action::just_before(10.0)}, p).second, 2.0);
  EXPECT_EQ(predation_risk({Action::exact(9.0), Action::exact(10.0)}, p).second, 2.0);
}

TEST(Utility, HandEvaluatedExamples) {
  auto p = example_params();
  auto [a, b] = utility({Action::exact(9.0), Action::exact(10.0)}, p);
  EXPECT_NEAR(a.total, 5.0 - 1.0 / 4.5 - 1.0, 1e-12);  // 3.7778
  EXPECT_NEAR(b.total, 2.0, 1e-12);

  auto [c, d] = utility({Action::exact(10.0), Action::exact(10.0)}, p);
  EXPECT_DOUBLE_EQ(c.total, 4.0);
  EXPECT_DOUBLE_EQ(d.total, 2.0);

  auto [e, f] = utility({Action::exact(8.0), Action::exact(10.0)}, p);
  EXPECT_NEAR(e.total, 5.0 - 4.0 / 4.5 - 2.0, 1e-12);  // 2.1111
  EXPECT_NEAR(f.total, 1.0, 1e-12);
}

TEST(Utility, LeaderMustCommitToExactTime) {
  auto p = example_params();
  EXPECT_THROW(utility({Action::just_before(9.0), Action::exact(10.0)}, p),
               std::invalid_argument);
}

TEST(Utility, BreakdownReassemblesAndBenefitsPermute) {
  auto p = example_params();
  SplitMix64 rng{7};
  for (int i = 0; i < 2000; ++i) {
    Action t1 = Action::exact(rng.uniform(2.0, 12.0));
    Action t2 = rng.u01() < 0.3 ? Action::just_before(rng.uniform(2.0, 12.0))
                                : Action::exact(rng.uniform(2.0, 12.0));
    auto [u1, u2] = utility({t1, t2}, p);
    EXPECT_EQ(u1.total, u1.benefit - u1.travel_cost - u1.risk);
    EXPECT_EQ(u2.total, u2.benefit - u2.travel_cost - u2.risk);
    bool perm = (u1.benefit == p.e1 && u2.benefit == p.e2) ||
                (u1.benefit == p.e2 && u2.benefit == p.e1);
    EXPECT_TRUE(perm);
    EXPECT_EQ(u1.risk, u2.risk);
  }
}

TEST(Utility, TranslationInvariance) {
  auto p = example_params();
  SplitMix64 rng{11};
  for (int i = 0; i < 500; ++i) {
    double t1 = rng.uniform(4.0, 11.0);
    double t2 = rng.uniform(4.0, 11.0);
    double shift = rng.uniform(-50.0, 50.0);
    GameParams q = p;
    q.t_o += shift;
    auto [a, b] = utility({Action::exact(t1), Action::exact(t2)}, p);
    auto [c, d] = utility({Action::exact(t1 + shift), Action::exact(t2 + shift)}, q);
    EXPECT_NEAR(a.total, c.total, 1e-9);
    EXPECT_NEAR(b.total, d.total, 1e-9);
    EXPECT_EQ(a.benefit, c.benefit);
    EXPECT_EQ(a.risk, c.risk);
  }
}

TEST(Utility, WiderWindowNeverIncreasesRisk) {
  auto p = example_params();
  SplitMix64 rng{13};
  for (int i = 0; i < 500; ++i) {
    Action t1 = Action::exact(rng.uniform(5.0, 11.0));
    Action t2 = Action::exact(rng.uniform(5.0, 11.0));
    GameParams narrow = p, wide = p;
    narrow.w = rng.uniform(0.0, 2.0);
    wide.w = narrow.w + rng.uniform(0.0, 2.0);
    EXPECT_LE(predation_risk({t1, t2}, wide).first, predation_risk({t1, t2}, narrow).first);
  }
}

TEST(Params, InvariantsEnforced) {
  auto p = example_params();
  EXPECT_NO_THROW(p.validate());
  auto bad = p;
  bad.beta1 = p.beta2;  // must be strictly stronger
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = p;
  bad.beta2 = 0.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = p;
  bad.e1 = bad.e2;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = p;
  bad.e2 = -1.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = p;
  bad.r = -0.5;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Params, ZeroRiskAcceptedButFlagged) {
  auto p = example_params();
  p.r = 0.0;
  EXPECT_NO_THROW(p.validate());
  EXPECT_FALSE(p.warnings().empty());
}

TEST(Json, ParamsRoundTripAndDefaults) {
  auto p = example_params();
  p.c_o2 = 0.25;
  GameParams q = params_from_json(params_to_json(p));
  EXPECT_DOUBLE_EQ(q.beta1, p.beta1);
  EXPECT_DOUBLE_EQ(q.e1, p.e1);
  EXPECT_DOUBLE_EQ(q.c_o2, 0.25);

  json minimal{{"beta1", 2.0}, {"beta2", 1.0}, {"E1", 4.0},
               {"E2", 1.0},    {"r", 1.0},     {"t_o", 10.0}};
  GameParams m = params_from_json(minimal);
  EXPECT_EQ(m.w, 1.0);
  EXPECT_EQ(m.c_o1, 0.0);
  EXPECT_EQ(m.c_o2, 0.0);
}

TEST(Json, JustBeforeActionEncoding) {
  json j = action_to_json(Action::just_before(9.5));
  ASSERT_TRUE(j.is_object());
  EXPECT_DOUBLE_EQ(j.at("just_before").get<double>(), 9.5);
  Action a = action_from_json(j);
  EXPECT_EQ(a, Action::just_before(9.5));
  EXPECT_EQ(action_from_json(json(7.0)), Action::exact(7.0));
}

TEST(FlockLabel, ThreeWayClassification) {
  EXPECT_EQ(classify_flock(Action::exact(10.0), Action::exact(10.0), 1.0),
            FlockKind::StrictFlock);
  EXPECT_EQ(classify_flock(Action::exact(9.0), Action::exact(10.0), 1.0), FlockKind::Flock);
  EXPECT_EQ(classify_flock(Action::exact(8.0), Action::exact(10.0), 1.0), FlockKind::NoFlock);
  // A limit undercut is a flock, not a strict flock; never a flock at w = 0.
  EXPECT_EQ(classify_flock(Action::exact(10.0), Action::just_before(10.0), 1.0),
            FlockKind::Flock);
  EXPECT_EQ(classify_flock(Action::exact(10.0), Action::just_before(10.0), 0.0),
            FlockKind::NoFlock);
}

}  // namespace
}  // namespace ffg
