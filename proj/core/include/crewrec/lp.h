// Copyright 2026 The crewrec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Linear programs of the form  min c'x  s.t.  rows,  x >= 0.

#ifndef CREWREC_LP_H_
#define CREWREC_LP_H_

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace crewrec {

enum class RowSense { kLessEqual, kGreaterEqual, kEqual };

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* to_string(LpStatus status);

struct LpEntry {
  int row = -1;
  double value = 0.0;
};

struct LpProblem {
  std::vector<RowSense> senses;
  std::vector<double> rhs;
  std::vector<std::string> row_names;
  std::vector<double> costs;
  std::vector<std::vector<LpEntry>> columns;
  std::vector<std::string> column_names;

  int num_rows() const { return static_cast<int>(rhs.size()); }
  int num_columns() const { return static_cast<int>(costs.size()); }

  int add_row(RowSense sense, double rhs_value, std::string name = {});
  // Entries must reference existing rows; duplicates are summed.
  int add_column(double cost, std::vector<LpEntry> entries,
                 std::string name = {});
};

// A basic variable: a structural column, the slack of a row, or the
// artificial of a row. Used to warm-start a solve after columns were added.
struct BasisEntry {
  enum class Kind { kColumn, kSlack, kArtificial };
  Kind kind = Kind::kColumn;
  int index = -1;

  friend bool operator==(const BasisEntry&, const BasisEntry&) = default;
};

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> primal;
  // One per row, in the row's original orientation: <= rows have duals <= 0,
  // >= rows duals >= 0, equality rows are free.
  std::vector<double> duals;
  std::vector<double> reduced_costs;
  std::vector<BasisEntry> basis;
  int iterations = 0;
};

class LpSolver {
 public:
  virtual ~LpSolver() = default;
  // `warm` may be empty. When it names a basis of a problem with the same
  // leading rows and a prefix of the columns, the solve starts from it.
  virtual LpSolution solve(const LpProblem& problem,
                           const std::vector<BasisEntry>& warm) = 0;
  LpSolution solve(const LpProblem& problem) { return solve(problem, {}); }
};

struct SimplexOptions {
  double optimality_tolerance = 1e-9;
  double feasibility_tolerance = 1e-9;
  double pivot_tolerance = 1e-9;
  int max_iterations = 200000;
  int refactor_interval = 64;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int degenerate_streak = 32;
};

// Revised simplex with an explicit dense basis inverse. Dantzig pricing,
// Bland's rule after a streak of degenerate pivots.
class DenseSimplex final : public LpSolver {
 public:
  explicit DenseSimplex(SimplexOptions options = {}) : options_(options) {}
  using LpSolver::solve;
  LpSolution solve(const LpProblem& problem,
                   const std::vector<BasisEntry>& warm) override;

 private:
  SimplexOptions options_;
};

// CPLEX LP text format, for inspection with external solvers.
void write_lp_format(const LpProblem& problem, std::ostream& out);

}  // namespace crewrec

#endif  // CREWREC_LP_H_
