#include "crewrec/pulse.h"

#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "support/oracles.h"

namespace crewrec {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(Pulse, SingleArc) {
  PulseGraph g;
  g.add_node();
  g.add_node();
  g.add_arc(0, {1, -3.0, 0, -1});
  const auto res = pulse(g, nullptr, kInf, 720);
  ASSERT_TRUE(res.best);
  EXPECT_EQ(res.best->cost, -3.0);
  EXPECT_EQ(res.best->nodes, (std::vector<int>{0, 1}));
}

TEST(Pulse, KeepsIncumbentWhenNothingIsCheaper) {
  PulseGraph g;
  for (int i = 0; i < 3; ++i) g.add_node();
  g.sink = 2;
  g.add_arc(0, {1, 2.0, 0, -1});
  g.add_arc(1, {2, 1.0, 0, -1});
  const auto bounds = compute_bounds(g, 720, 60);
  EXPECT_FALSE(pulse(g, &bounds, 0.0, 720).best);
}

TEST(Pulse, RespectsFlyCap) {
  PulseGraph g;
  for (int i = 0; i < 3; ++i) g.add_node();
  g.sink = 2;
  g.add_arc(0, {2, 5.0, 0, -1});
  g.add_arc(0, {1, -10.0, 400, 7});
  g.add_arc(1, {2, 0.0, 400, 8});
  const auto res = pulse(g, nullptr, kInf, 720);
  ASSERT_TRUE(res.best);
  EXPECT_EQ(res.best->cost, 5.0);
  const auto wide = pulse(g, nullptr, kInf, 800);
  EXPECT_EQ(wide.best->cost, -10.0);
  EXPECT_EQ(wide.best->tags, (std::vector<int>{7, 8}));
  EXPECT_EQ(wide.best->fly, 800);
}

TEST(Bounds, UnreachableIsInfinite) {
  PulseGraph g;
  for (int i = 0; i < 3; ++i) g.add_node();
  g.sink = 2;
  g.add_arc(0, {2, 1.0, 0, -1});
  const auto b = compute_bounds(g, 720, 60);
  for (Minutes tau : b.grid) EXPECT_EQ(b.lookup(1, tau), kInf);
  EXPECT_EQ(b.lookup(0, 0), 1.0);
}

TEST(Bounds, NoBudgetLeftNeedsZeroFlyCompletion) {
  PulseGraph g;
  for (int i = 0; i < 4; ++i) g.add_node();
  g.sink = 3;
  g.add_arc(0, {3, 0.0, 60, -1});
  g.add_arc(1, {3, 2.0, 0, -1});
  const auto b = compute_bounds(g, 720, 60);
  EXPECT_EQ(b.lookup(0, 720), kInf);
  EXPECT_EQ(b.lookup(0, 660), 0.0);
  EXPECT_EQ(b.lookup(1, 720), 2.0);
  EXPECT_EQ(b.lookup(0, 721), kInf);
}

TEST(Bounds, GridRoundsDownAndEndsAtZero) {
  PulseGraph g;
  g.add_node();
  g.add_node();
  const auto b = compute_bounds(g, 100, 60);
  EXPECT_EQ(b.grid, (std::vector<Minutes>{100, 40, 0}));
}

TEST(Bounds, MonotoneInConsumedFlying) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const PulseGraph g = testing::random_dag(rng, 12);
    const auto b = compute_bounds(g, 720, 60);
    for (std::size_t r = 1; r < b.grid.size(); ++r) {
      for (int v = 0; v < g.num_nodes(); ++v) {
        EXPECT_LE(b.rows[r][v], b.rows[r - 1][v]);
      }
    }
  }
}

TEST(Pulse, MatchesExhaustiveEnumeration) {
  std::mt19937_64 rng(17);
  int compared = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 12);
    const PulseGraph g = testing::random_dag(rng, n);
    const Minutes cap = 30 * static_cast<Minutes>(rng() % 25);
    const auto oracle = testing::cheapest_path(g, cap);
    const auto b = compute_bounds(g, cap, 60);
    const auto with = pulse(g, &b, kInf, cap);
    const auto without = pulse(g, nullptr, kInf, cap);
    ASSERT_EQ(oracle.has_value(), with.best.has_value()) << trial;
    ASSERT_EQ(oracle.has_value(), without.best.has_value()) << trial;
    if (oracle) {
      EXPECT_EQ(with.best->cost, *oracle) << trial;
      EXPECT_EQ(without.best->cost, *oracle) << trial;
      EXPECT_LE(with.pulses, without.pulses);
      ++compared;
    }
  }
  EXPECT_GT(compared, 100);
}

TEST(PulseGraph, RejectsCycles) {
  PulseGraph g;
  g.add_node();
  g.add_node();
  g.add_arc(0, {1, 0.0, 0, -1});
  g.add_arc(1, {0, 0.0, 0, -1});
  EXPECT_THROW(g.topological_order(), std::invalid_argument);
}

}  // namespace
}  // namespace crewrec
