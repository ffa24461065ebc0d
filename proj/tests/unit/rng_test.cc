#include "crewrec/rng.h"

#include <gtest/gtest.h>

namespace crewrec {
namespace {

TEST(KeyOf, MatchesReferenceFnv1a) {
  static_assert(key_of("") == 0xcbf29ce484222325ULL);
  EXPECT_EQ(key_of("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(key_of("foobar"), 0x85944171f73967e8ULL);
}

TEST(CounterRng, DrawsArePureFunctionsOfTheKey) {
  const CounterRng rng(42);
  const double first = rng.uniform({3, 9});
  for (int i = 0; i < 100; ++i) (void)rng.uniform({static_cast<std::uint64_t>(i)});
  EXPECT_EQ(rng.uniform({3, 9}), first);
  EXPECT_NE(rng.uniform({9, 3}), first);
  EXPECT_NE(CounterRng(43).uniform({3, 9}), first);
}

TEST(CounterRng, StreamsDiffer) {
  const CounterRng rng(1);
  EXPECT_NE(rng.stream(0).bits({1}), rng.stream(1).bits({1}));
  EXPECT_EQ(rng.stream(5).bits({1}), rng.stream(5).bits({1}));
}

TEST(CounterRng, UniformMomentsAndEdges) {
  const CounterRng rng(7);
  constexpr int kDraws = 100'000;
  double sum = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    const double u = rng.uniform({static_cast<std::uint64_t>(i)});
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  // Standard error of the mean of U(0,1) is sqrt(1/12/n).
  EXPECT_NEAR(sum / kDraws, 0.5, 4 * 0.000913);
  EXPECT_FALSE(rng.bernoulli(0.0, {1}));
  EXPECT_TRUE(rng.bernoulli(1.0, {1}));
}

}  // namespace
}  // namespace crewrec
