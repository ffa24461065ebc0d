#include "crewrec/lp.h"

#include <random>
#include <sstream>

#include <gtest/gtest.h>

namespace crewrec {
namespace {

// Certifies optimality from the KKT conditions in the row orientation of the
// problem: primal feasibility, dual sign, dual feasibility, zero gap.
void expect_certified(const LpProblem& lp, const LpSolution& sol) {
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  std::vector<double> activity(lp.num_rows(), 0.0);
  for (int j = 0; j < lp.num_columns(); ++j) {
    EXPECT_GE(sol.primal[j], -1e-9);
    for (const LpEntry& e : lp.columns[j]) activity[e.row] += e.value * sol.primal[j];
  }
  double dual_obj = 0.0;
  for (int i = 0; i < lp.num_rows(); ++i) {
    const double y = sol.duals[i];
    switch (lp.senses[i]) {
      case RowSense::kLessEqual:
        EXPECT_LE(activity[i], lp.rhs[i] + 1e-7);
        EXPECT_LE(y, 1e-9);
        break;
      case RowSense::kGreaterEqual:
        EXPECT_GE(activity[i], lp.rhs[i] - 1e-7);
        EXPECT_GE(y, -1e-9);
        break;
      case RowSense::kEqual:
        EXPECT_NEAR(activity[i], lp.rhs[i], 1e-7);
        break;
    }
    EXPECT_NEAR(y * (activity[i] - lp.rhs[i]), 0.0, 1e-6);
    dual_obj += y * lp.rhs[i];
  }
  for (int j = 0; j < lp.num_columns(); ++j) {
    double d = lp.costs[j];
    for (const LpEntry& e : lp.columns[j]) d -= sol.duals[e.row] * e.value;
    EXPECT_GE(d, -1e-7) << "column " << j;
    EXPECT_NEAR(d * sol.primal[j], 0.0, 1e-6);
  }
  EXPECT_NEAR(dual_obj, sol.objective, 1e-6 * (1.0 + std::abs(sol.objective)));
}

TEST(DenseSimplex, SingleLowerBound) {
  LpProblem lp;
  const int r = lp.add_row(RowSense::kGreaterEqual, 1.0);
  lp.add_column(1.0, {{r, 1.0}});
  DenseSimplex simplex;
  const auto sol = simplex.solve(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_DOUBLE_EQ(sol.primal[0], 1.0);
  EXPECT_DOUBLE_EQ(sol.duals[0], 1.0);
  EXPECT_DOUBLE_EQ(sol.objective, 1.0);
}

TEST(DenseSimplex, BealeCyclingExampleTerminates) {
  LpProblem lp;
  const int r0 = lp.add_row(RowSense::kLessEqual, 0.0);
  const int r1 = lp.add_row(RowSense::kLessEqual, 0.0);
  const int r2 = lp.add_row(RowSense::kLessEqual, 1.0);
  lp.add_column(-0.75, {{r0, 0.25}, {r1, 0.5}});
  lp.add_column(20.0, {{r0, -8.0}, {r1, -12.0}});
  lp.add_column(-0.5, {{r0, -1.0}, {r1, -0.5}, {r2, 1.0}});
  lp.add_column(6.0, {{r0, 9.0}, {r1, 3.0}});
  SimplexOptions opts;
  opts.degenerate_streak = 1000000;  // plain Dantzig would cycle; cap instead
  opts.max_iterations = 200;
  DenseSimplex dantzig(opts);
  const auto capped = dantzig.solve(lp);
  DenseSimplex simplex;
  const auto sol = simplex.solve(lp);
  EXPECT_NEAR(sol.objective, -1.25, 1e-12);
  expect_certified(lp, sol);
  if (capped.status == LpStatus::kOptimal) {
    EXPECT_NEAR(capped.objective, -1.25, 1e-12);
  }
}

TEST(DenseSimplex, DetectsInfeasibility) {
  LpProblem lp;
  const int a = lp.add_row(RowSense::kLessEqual, 1.0);
  const int b = lp.add_row(RowSense::kGreaterEqual, 2.0);
  lp.add_column(1.0, {{a, 1.0}, {b, 1.0}});
  DenseSimplex simplex;
  EXPECT_EQ(simplex.solve(lp).status, LpStatus::kInfeasible);
}

TEST(DenseSimplex, DetectsUnboundedness) {
  LpProblem lp;
  const int a = lp.add_row(RowSense::kGreaterEqual, 1.0);
  lp.add_column(-1.0, {{a, 1.0}});
  DenseSimplex simplex;
  EXPECT_EQ(simplex.solve(lp).status, LpStatus::kUnbounded);
}

TEST(DenseSimplex, NegativeRightHandSideKeepsDualOrientation) {
  // min x  s.t.  -x <= -3  (x >= 3): dual of a <= row is nonpositive.
  LpProblem lp;
  const int r = lp.add_row(RowSense::kLessEqual, -3.0);
  lp.add_column(1.0, {{r, -1.0}});
  DenseSimplex simplex;
  const auto sol = simplex.solve(lp);
  EXPECT_DOUBLE_EQ(sol.primal[0], 3.0);
  EXPECT_DOUBLE_EQ(sol.duals[0], -1.0);
}

TEST(DenseSimplex, RedundantEqualityRows) {
  LpProblem lp;
  const int a = lp.add_row(RowSense::kEqual, 2.0);
  const int b = lp.add_row(RowSense::kEqual, 4.0);
  lp.add_column(1.0, {{a, 1.0}, {b, 2.0}});
  lp.add_column(3.0, {{a, 1.0}, {b, 2.0}});
  DenseSimplex simplex;
  const auto sol = simplex.solve(lp);
  EXPECT_NEAR(sol.objective, 2.0, 1e-12);
  expect_certified(lp, sol);
}

LpProblem random_feasible_lp(std::mt19937_64& rng, int m, int n) {
  std::uniform_real_distribution<double> coef(-3.0, 5.0);
  std::uniform_real_distribution<double> pos(0.0, 4.0);
  std::uniform_int_distribution<int> kind(0, 2);
  std::bernoulli_distribution dense(0.6);
  // Rows are built around a known nonnegative point so the LP is feasible.
  std::vector<double> x0(n);
  for (double& v : x0) v = pos(rng);
  std::vector<std::vector<double>> a(m, std::vector<double>(n, 0.0));
  for (auto& row : a) {
    for (double& v : row) v = dense(rng) ? coef(rng) : 0.0;
  }
  LpProblem lp;
  for (int i = 0; i < m; ++i) {
    double act = 0.0;
    for (int j = 0; j < n; ++j) act += a[i][j] * x0[j];
    switch (kind(rng)) {
      case 0: lp.add_row(RowSense::kLessEqual, act + pos(rng)); break;
      case 1: lp.add_row(RowSense::kGreaterEqual, act - pos(rng)); break;
      default: lp.add_row(RowSense::kEqual, act); break;
    }
  }
  // Nonnegative costs keep the problem bounded.
  for (int j = 0; j < n; ++j) {
    std::vector<LpEntry> col;
    for (int i = 0; i < m; ++i) {
      if (a[i][j] != 0.0) col.push_back({i, a[i][j]});
    }
    lp.add_column(pos(rng), col);
  }
  return lp;
}

TEST(DenseSimplex, RandomProblemsAreCertified) {
  std::mt19937_64 rng(2024);
  DenseSimplex simplex;
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 12);
    const int n = 1 + static_cast<int>(rng() % 16);
    const LpProblem lp = random_feasible_lp(rng, m, n);
    SCOPED_TRACE(trial);
    expect_certified(lp, simplex.solve(lp));
  }
}

TEST(DenseSimplex, WarmStartAfterAddingColumns) {
  std::mt19937_64 rng(7);
  DenseSimplex simplex;
  for (int trial = 0; trial < 50; ++trial) {
    LpProblem lp = random_feasible_lp(rng, 8, 10);
    LpProblem head = lp;
    head.costs.resize(5);
    head.columns.resize(5);
    head.column_names.resize(5);
    const auto first = simplex.solve(head);
    if (first.status != LpStatus::kOptimal) continue;
    const auto warm = simplex.solve(lp, first.basis);
    const auto cold = simplex.solve(lp);
    ASSERT_EQ(warm.status, LpStatus::kOptimal);
    EXPECT_NEAR(warm.objective, cold.objective, 1e-7);
    expect_certified(lp, warm);
  }
}

TEST(DenseSimplex, WarmStartAfterAddingRows) {
  std::mt19937_64 rng(9);
  DenseSimplex simplex;
  for (int trial = 0; trial < 50; ++trial) {
    const LpProblem lp = random_feasible_lp(rng, 8, 10);
    LpProblem head = lp;
    head.senses.resize(5);
    head.rhs.resize(5);
    head.row_names.resize(5);
    for (auto& col : head.columns) {
      std::erase_if(col, [](const LpEntry& e) { return e.row >= 5; });
    }
    const auto first = simplex.solve(head);
    ASSERT_EQ(first.status, LpStatus::kOptimal);
    const auto warm = simplex.solve(lp, first.basis);
    const auto cold = simplex.solve(lp);
    ASSERT_EQ(warm.status, cold.status);
    if (cold.status == LpStatus::kOptimal) {
      EXPECT_NEAR(warm.objective, cold.objective, 1e-7);
    }
  }
}

TEST(DenseSimplex, Deterministic) {
  std::mt19937_64 rng(11);
  const LpProblem lp = random_feasible_lp(rng, 10, 14);
  DenseSimplex simplex;
  const auto a = simplex.solve(lp);
  const auto b = simplex.solve(lp);
  EXPECT_EQ(a.primal, b.primal);
  EXPECT_EQ(a.duals, b.duals);
}

TEST(LpFormat, WritesSections) {
  LpProblem lp;
  const int r = lp.add_row(RowSense::kGreaterEqual, 1.0, "cover_F1");
  lp.add_column(2.5, {{r, 1.0}}, "x_K1_0");
  lp.add_column(-1.0, {{r, -1.0}}, "y_0");
  std::ostringstream out;
  write_lp_format(lp, out);
  EXPECT_EQ(out.str(),
            "Minimize\n obj: 2.5 x_K1_0 - 1 y_0\nSubject To\n"
            " cover_F1: 1 x_K1_0 - 1 y_0 >= 1\nEnd\n");
}

}  // namespace
}  // namespace crewrec
