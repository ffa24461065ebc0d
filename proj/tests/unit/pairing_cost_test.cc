#include "crewrec/pairing_cost.h"

#include <random>

#include <gtest/gtest.h>

#include "support/fixtures.h"

namespace crewrec {
namespace {

using testing::leg;
using testing::regular;
using testing::reserve;
using testing::two_airport_instance;

// F1 AMS-RTM 08:00-09:00, F2 RTM-AMS 10:00-11:00, F3 AMS-RTM 12:00-13:00.
Instance shuttle() {
  Instance in = two_airport_instance({leg("F1", "AMS", "RTM", 480, 540),
                                      leg("F2", "RTM", "AMS", 600, 660),
                                      leg("F3", "AMS", "RTM", 720, 780)});
  in.copies = generate_copies(in.flights, 3, 5, in.costs);
  in.shifts = {ReserveShift{"S1", 360, 840}};
  CrewMember k = regular("K1", "AMS");
  k.original_pairing = std::vector<int>{0, 3};
  in.crew.push_back(k);
  in.crew.push_back(reserve("R1", "AMS", 0));
  return in;
}

TEST(PayAndCredit, ClampsAtMinimum) {
  const CostParams costs;
  EXPECT_DOUBLE_EQ(pay_and_credit(200, 400, costs), 360.0);
  EXPECT_DOUBLE_EQ(pay_and_credit(400, 480, costs), 400.0);
  EXPECT_DOUBLE_EQ(pay_and_credit(0, 0, costs), 360.0);
  EXPECT_DOUBLE_EQ(pay_and_credit(300, 800, costs), 500.0);
}

TEST(Penalty, MaximalAtThreshold) {
  EXPECT_DOUBLE_EQ(penalty_term(720, 720, 360, 4), 360.0);
  EXPECT_DOUBLE_EQ(penalty_term(600, 720, 360, 4), 0.0);
  EXPECT_DOUBLE_EQ(penalty_term(60, 30, 180, 2), 120.0);
  // Symmetric around the threshold.
  EXPECT_DOUBLE_EQ(penalty_term(700, 720, 360, 4),
                   penalty_term(740, 720, 360, 4));
}

TEST(Penalty, BreakdownOfTwoLegDuty) {
  const Instance in = shuttle();
  const Pairing p = make_pairing(in, 0, {0, 3});
  EXPECT_EQ(p.fly_time, 120);
  EXPECT_EQ(p.duty_span, 180);
  EXPECT_EQ(p.min_sit, 60);
  const auto pen = evaluate_penalty(in, p);
  EXPECT_DOUBLE_EQ(pen.threshold[0], 720.0);
  EXPECT_DOUBLE_EQ(pen.contribution[0], 0.0);
  EXPECT_DOUBLE_EQ(pen.contribution[2], 120.0);
  EXPECT_DOUBLE_EQ(pen.contribution[3], 0.0);
  EXPECT_DOUBLE_EQ(pen.total(), 120.0);
}

TEST(Penalty, SingleLegHasNoSitTerm) {
  const Instance in = shuttle();
  const Pairing p = make_pairing(in, 1, {0});
  EXPECT_EQ(p.min_sit, kNoConnection);
  EXPECT_DOUBLE_EQ(evaluate_penalty(in, p).contribution[2], 0.0);
}

TEST(Penalty, RestMeasuredToWindowEdge) {
  Instance in = shuttle();
  in.crew[0].latest_end = 700;
  const Pairing p = make_pairing(in, 0, {0, 3});
  // Ends at 660, window closes at 700: rest is 40 minutes above the minimum.
  EXPECT_EQ(rest_time(in, p), 640);
  EXPECT_DOUBLE_EQ(evaluate_penalty(in, p).contribution[3], 0.0);
  in.crew[0].latest_end = 665;
  EXPECT_DOUBLE_EQ(evaluate_penalty(in, make_pairing(in, 0, {0, 3})).contribution[3],
                   60.0);
}

TEST(PairingCost, FormulaCases) {
  PairingCostBreakdown b;
  b.pay_credit = 360;
  b.original = 360;
  EXPECT_DOUBLE_EQ(b.total(), 0.0);

  b = {};
  b.pay_credit = 400;
  b.original = 300;
  b.alter = 200;
  EXPECT_DOUBLE_EQ(b.total(), 300.0);

  b = {};
  b.pay_credit = 360;
  b.original = 500;
  b.retime = 2000;
  EXPECT_DOUBLE_EQ(b.total(), 2000.0);
}

TEST(PairingCost, UnchangedPublishedPairingIsFree) {
  const Instance in = shuttle();
  const Pairing p = make_pairing(in, 0, {0, 3});
  EXPECT_FALSE(p.altered);
  EXPECT_DOUBLE_EQ(pairing_cost(in, p, CostModel::kReliable).total(), 0.0);
  EXPECT_DOUBLE_EQ(pairing_cost(in, p, CostModel::kTraditional).total(), 0.0);
}

TEST(PairingCost, RetimedAlteredPairing) {
  const Instance in = shuttle();
  // F1 original, F2 five minutes late.
  const Pairing p = make_pairing(in, 0, {0, 5});
  EXPECT_TRUE(p.altered);
  ASSERT_EQ(p.retimed_legs, std::vector<int>{5});
  const auto b = pairing_cost(in, p, CostModel::kReliable);
  EXPECT_DOUBLE_EQ(b.retime, 2000.0);
  EXPECT_DOUBLE_EQ(b.alter, 200.0);
  // Sit is 65: the penalty drops by 10, below the baseline.
  EXPECT_DOUBLE_EQ(b.total(), 2200.0);
}

TEST(PairingCost, ReserveNeverPaysAlteration) {
  const Instance in = shuttle();
  const Pairing p = make_pairing(in, 1, {0, 3});
  EXPECT_TRUE(p.altered);
  const auto b = pairing_cost(in, p, CostModel::kReliable);
  EXPECT_DOUBLE_EQ(b.alter, 0.0);
  EXPECT_DOUBLE_EQ(b.total(), 360.0 + 120.0);
}

TEST(PairingCost, TraditionalModelChargesStandbyFee) {
  const Instance in = shuttle();
  const auto b =
      pairing_cost(in, make_pairing(in, 1, {0, 3}), CostModel::kTraditional);
  EXPECT_DOUBLE_EQ(b.penalty, 0.0);
  EXPECT_DOUBLE_EQ(b.reserve_fee, 360.0);
  EXPECT_DOUBLE_EQ(b.total(), 720.0);
}

TEST(PairingCost, TransportChargedPerAwayEndpoint) {
  Instance in = shuttle();
  in.crew[0].original_pairing.reset();
  const Pairing out_only = make_pairing(in, 0, {0});
  EXPECT_DOUBLE_EQ(transport_cost(in, out_only), 60.0);
  const Pairing both = make_pairing(in, 0, {3});
  EXPECT_DOUBLE_EQ(transport_cost(in, both), 60.0);
  const Pairing round = make_pairing(in, 0, {0, 3});
  EXPECT_DOUBLE_EQ(transport_cost(in, round), 0.0);
  EXPECT_DOUBLE_EQ(transport_cost(in, make_pairing(in, 1, {0})), 0.0);
}

TEST(PairingCost, GroundTravelExtendsDuty) {
  const Instance in = shuttle();
  const Pairing p = make_pairing(in, 1, {0});
  EXPECT_EQ(p.duty_start, 480);
  EXPECT_EQ(p.duty_end, 600);
  EXPECT_EQ(p.duty_span, 120);
}

TEST(Legality, PublishedPairingIsLegal) {
  const Instance in = shuttle();
  EXPECT_TRUE(is_legal(in, make_pairing(in, 0, {0, 3})));
}

TEST(Legality, ShortSitIsRejected) {
  Instance in = shuttle();
  in.flights[1].departure = 560;
  in.flights[1].arrival = 620;
  EXPECT_FALSE(is_legal(in, make_pairing(in, 0, {0, 3})));
}

TEST(Legality, BrokenLocationChainIsRejected) {
  const Instance in = shuttle();
  EXPECT_FALSE(is_legal(in, make_pairing(in, 1, {0, 6})));
}

TEST(Legality, LongDutyUsesLongFlyLimit) {
  Instance in = shuttle();
  in.rules.max_fly_long = 150;
  EXPECT_TRUE(is_legal(in, make_pairing(in, 1, {0, 3})));
  EXPECT_FALSE(is_legal(in, make_pairing(in, 1, {0, 3, 6})));
}

TEST(Legality, StandbyReserveFliesOnlyInShift) {
  Instance in = shuttle();
  in.shifts[0] = {"S1", 600, 900};
  EXPECT_FALSE(is_legal(in, make_pairing(in, 1, {0, 3})));
  EXPECT_TRUE(is_legal(in, make_pairing(in, 1, {6})));
}

TEST(Legality, DisruptedFlightIsRejected) {
  Instance in = shuttle();
  in.crew[0].unavailable_flights = {1};
  EXPECT_FALSE(is_legal(in, make_pairing(in, 0, {0, 3})));
}

TEST(Legality, EarlierStartLimitedByPublishedDuty) {
  Instance in = shuttle();
  in.crew[0].original_pairing = std::vector<int>{6};
  in.rules.max_earlier_start = 120;
  // Published duty starts at 12:00; 08:00 is four hours earlier.
  EXPECT_FALSE(is_legal(in, make_pairing(in, 0, {0, 3})));
  in.rules.max_earlier_start = 240;
  EXPECT_TRUE(is_legal(in, make_pairing(in, 0, {0, 3})));
}

TEST(Legality, WindowBoundsDuty) {
  Instance in = shuttle();
  in.crew[1].earliest_start = 500;
  EXPECT_FALSE(is_legal(in, make_pairing(in, 1, {0})));
}

TEST(PairingCost, NonnegativeOnRandomPairings) {
  Instance in = shuttle();
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> copy(0, static_cast<int>(in.copies.size()) - 1);
  std::uniform_int_distribution<int> len(0, 4);
  std::uniform_int_distribution<int> crew(0, 1);
  std::uniform_real_distribution<double> base(0.0, 2000.0);
  for (int trial = 0; trial < 10000; ++trial) {
    std::vector<int> legs(len(rng));
    for (int& c : legs) c = copy(rng);
    const int k = crew(rng);
    const Pairing p = make_pairing(in, k, legs);
    for (CostModel m : {CostModel::kReliable, CostModel::kTraditional}) {
      const auto b = pairing_cost(in, p, base(rng), m);
      ASSERT_GE(b.total(), 0.0);
      if (in.crew[k].is_reserve()) ASSERT_EQ(b.alter, 0.0);
    }
  }
}

}  // namespace
}  // namespace crewrec
