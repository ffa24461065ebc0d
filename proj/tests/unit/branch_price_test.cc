#include "crewrec/branch_price.h"

#include <gtest/gtest.h>

#include "support/fixtures.h"
#include "support/mip_oracle.h"
#include "support/random_instances.h"

namespace crewrec {
namespace {

using testing::leg;
using testing::regular;

FractionalView integral_view(const Instance& in) {
  FractionalView v;
  v.cancel.assign(in.flights.size(), 0.0);
  v.deadhead.assign(in.copies.size(), 0.0);
  return v;
}

Instance two_round_trips() {
  Instance in = testing::two_airport_instance(
      {leg("F1", "AMS", "RTM", 480, 540), leg("F2", "RTM", "AMS", 600, 660),
       leg("F3", "AMS", "RTM", 720, 780), leg("F4", "RTM", "AMS", 840, 900)});
  in.crew = {regular("K1", "AMS", 300, 1200), regular("K2", "AMS", 300, 1200)};
  in.crew[0].original_pairing = std::vector<int>{0, 1};
  in.crew[1].original_pairing = std::vector<int>{2, 3};
  return in;
}

TEST(SelectBranch, CancellationClosestToHalf) {
  const Instance in = two_round_trips();
  FractionalView v = integral_view(in);
  v.cancel[0] = 0.9;
  v.cancel[2] = 0.5;
  const BranchDecision d = select_branch(in, ColumnPool{}, v, 1e-6);
  EXPECT_EQ(d.kind, BranchDecision::Kind::kCancel);
  EXPECT_EQ(d.index, 2);
}

TEST(SelectBranch, TiesGoToLowestIndex) {
  const Instance in = two_round_trips();
  FractionalView v = integral_view(in);
  v.cancel[1] = 0.5;
  v.cancel[3] = 0.5;
  EXPECT_EQ(select_branch(in, ColumnPool{}, v, 1e-6).index, 1);
}

TEST(SelectBranch, DeadheadsBeforeFollowOns) {
  const Instance in = two_round_trips();
  ColumnPool pool;
  pool.add({make_pairing(in, 0, {0, 1}), 0.0});
  FractionalView v = integral_view(in);
  v.deadhead[1] = 0.3;
  v.pairings = {{0, 0.5}};
  EXPECT_EQ(select_branch(in, pool, v, 1e-6).kind, BranchDecision::Kind::kDeadhead);
}

TEST(SelectBranch, RyanFosterOnSingleFollowOn) {
  const Instance in = two_round_trips();
  ColumnPool pool;
  pool.add({make_pairing(in, 0, {0, 1}), 0.0});
  FractionalView v = integral_view(in);
  v.pairings = {{0, 0.5}};
  const BranchDecision d = select_branch(in, pool, v, 1e-6);
  EXPECT_EQ(d.kind, BranchDecision::Kind::kFollowOn);
  EXPECT_EQ(d.follow_on, (FollowOn{0, 1}));
  EXPECT_DOUBLE_EQ(d.score, 0.5);
}

TEST(SelectBranch, RyanFosterPrefersMostBalancedPair) {
  const Instance in = two_round_trips();
  ColumnPool pool;
  pool.add({make_pairing(in, 0, {0, 1}), 0.0});
  pool.add({make_pairing(in, 1, {2, 3}), 0.0});
  FractionalView v = integral_view(in);
  v.pairings = {{0, 0.3}, {1, 0.5}};
  const BranchDecision d = select_branch(in, pool, v, 1e-6);
  EXPECT_EQ(d.follow_on, (FollowOn{2, 3}));
}

TEST(SelectBranch, PairingFallbackWithoutFollowOns) {
  const Instance in = two_round_trips();
  ColumnPool pool;
  pool.add({make_pairing(in, 0, {0}), 0.0});
  pool.add({make_pairing(in, 1, {0}), 0.0});
  FractionalView v = integral_view(in);
  v.pairings = {{0, 0.5}, {1, 0.5}};
  const BranchDecision d = select_branch(in, pool, v, 1e-6);
  EXPECT_EQ(d.kind, BranchDecision::Kind::kPairing);
  EXPECT_EQ(d.index, 0);
}

TEST(SelectBranch, IntegralSolutionThrows) {
  const Instance in = two_round_trips();
  EXPECT_THROW(select_branch(in, ColumnPool{}, integral_view(in), 1e-6),
               std::invalid_argument);
}

TEST(BranchAndPrice, PublishedScheduleKeptWhenUndisrupted) {
  const Instance in = two_round_trips();
  const MasterSolution s = solve_rcrp(in, {ScheduleOption{}}, {});
  EXPECT_EQ(s.status, SolveStatus::kOptimal);
  EXPECT_NEAR(s.objective, 0.0, 1e-9);
  EXPECT_EQ(s.metrics.alterations, 0);
  EXPECT_EQ(s.metrics.cancellations, 0);
  ASSERT_NE(s.pairing_of(0), nullptr);
  EXPECT_EQ(s.pairing_of(0)->pairing.legs, (std::vector<int>{0, 1}));
}

TEST(BranchAndPrice, EveryoneDisruptedCancelsAll) {
  Instance in = two_round_trips();
  for (CrewMember& k : in.crew) k.unavailable_flights = {0, 1, 2, 3};
  const MasterSolution s = solve_rcrp(in, {ScheduleOption{}}, {});
  double cancel = 0.0;
  for (const FlightLeg& f : in.flights) cancel += f.cancel_cost;
  EXPECT_NEAR(s.objective, cancel, 1e-6);
  EXPECT_EQ(s.metrics.cancellations, 4);
  EXPECT_EQ(s.metrics.alterations, 0);
}

TEST(BranchAndPrice, TraditionalWithoutReservesCancels) {
  Instance in = two_round_trips();
  in.crew.pop_back();
  in.crew[0].unavailable_flights = {0};
  in.shifts = {ReserveShift{"S", 360, 900}};
  in.crew.push_back(testing::reserve("R1", "AMS", 0, 300, 1200));
  const MasterSolution s = solve_tcrp(in, 0, {});
  EXPECT_GE(s.metrics.cancellations, 1);
  EXPECT_EQ(s.metrics.reserves, 0);
}

TEST(BranchAndPrice, BudgetExhaustionReportsIncumbent) {
  std::mt19937_64 rng(5);
  const auto c = testing::random_small_case(rng);
  BranchPriceConfig config;
  config.node_budget = 0;
  const MasterSolution s = solve_rcrp(c.instance, c.schedules, config);
  EXPECT_EQ(s.status, SolveStatus::kBudgetExhausted);
  EXPECT_EQ(s.metrics.cancellations, static_cast<int>(c.instance.flights.size()));
}

// Checks a solution row by row against the integer model.
void expect_feasible(const Instance& in, const MasterSetup& setup,
                     const MasterSolution& s) {
  std::vector<int> crews_on(in.copies.size(), 0);
  int called = 0;
  for (const MasterColumn& col : s.pairings) {
    EXPECT_TRUE(is_legal(in, col.pairing));
    for (int c : col.pairing.legs) ++crews_on[c];
    if (in.crew[col.pairing.crew].in_standby_pool()) {
      ++called;
      if (setup.model == CostModel::kReliable) {
        ASSERT_TRUE(s.schedule.has_value());
        const auto& m = setup.schedules[*s.schedule].schedule.members;
        EXPECT_NE(std::ranges::find(m, col.pairing.crew), m.end());
      }
    }
  }
  if (setup.model == CostModel::kTraditional) EXPECT_LE(called, setup.reserve_limit);
  for (int f = 0; f < static_cast<int>(in.flights.size()); ++f) {
    const bool cancelled = std::ranges::find(s.cancelled, f) != s.cancelled.end();
    int operated = 0;
    for (int c : in.copies_of(f)) {
      EXPECT_LE(s.deadheads[c], crews_on[c]);
      operated += crews_on[c] - s.deadheads[c];
    }
    EXPECT_EQ(operated + (cancelled ? 1 : 0), 1) << "flight " << f;
  }
  EXPECT_NEAR(recompute_objective(in, setup, s), s.objective, 1e-6);
}

TEST(BranchAndPrice, MatchesBruteForceOracle) {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 25; ++trial) {
    const testing::SmallCase c = testing::random_small_case(rng);
    for (CostModel model : {CostModel::kReliable, CostModel::kTraditional}) {
      MasterSetup setup;
      setup.model = model;
      setup.schedules = c.schedules;
      setup.reserve_limit = c.reserve_limit;
      const auto oracle = testing::solve_by_enumeration(c.instance, setup);
      const MasterSolution s =
          model == CostModel::kReliable
              ? solve_rcrp(c.instance, c.schedules, {})
              : solve_tcrp(c.instance, c.reserve_limit, {});
      ASSERT_EQ(s.status, SolveStatus::kOptimal);
      EXPECT_NEAR(s.objective, oracle.objective, 1e-6)
          << "trial " << trial << " model " << static_cast<int>(model);
      expect_feasible(c.instance, setup, s);
    }
  }
}

}  // namespace
}  // namespace crewrec
