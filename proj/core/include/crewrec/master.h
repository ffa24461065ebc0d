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

// Restricted master problem of the recovery set-covering model and its
// column generation loop.
//
// Variables: z_f cancels flight f, y_w counts deadheads on copy w, u_t
// selects reserve schedule t (reliable model only), x_p selects pairing p.
// Rows, per family:
//   cover      per flight     sum a x - sum y + z = 1
//   deadhead   per copy       y - sum a x <= 0
//   capacity   per flight     sum y + M z <= M
//   pair       per conflict   sum a x - y (both copies) <= 1
//   crew       per crew       sum x <= 1 (= 1 with an idle column)
//   reserve    per pool crew  sum x - sum_{t releasing k} u <= 0
//   schedule   one            sum u <= 1
//   limit      one            sum_{pool crew} x <= n (traditional model)
//   follow-on  per required   sum_{p using it} x >= 1
//   bound      per branching fix on a single variable

#ifndef CREWREC_MASTER_H_
#define CREWREC_MASTER_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "crewrec/instance.h"
#include "crewrec/lp.h"
#include "crewrec/pairing_cost.h"
#include "crewrec/pricing.h"
#include "crewrec/reserve_eval.h"

namespace crewrec {

struct ScheduleOption {
  ReserveSchedule schedule;
  double shortfall = 0.0;
  double cost = 0.0;
};

struct MasterSetup {
  CostModel model = CostModel::kReliable;
  // Candidate reserve schedules with their cost (reliable model).
  std::vector<ScheduleOption> schedules;
  // Maximum number of pool reserves called (traditional model).
  int reserve_limit = 0;
};

struct MasterColumn {
  Pairing pairing;
  double cost = 0.0;
};

// Columns generated so far, shared across branch-and-bound nodes.
class ColumnPool {
 public:
  // Returns the new id, or -1 when an identical column exists.
  int add(MasterColumn column);
  int size() const { return static_cast<int>(columns_.size()); }
  const MasterColumn& operator[](int id) const { return columns_[id]; }
  const std::vector<MasterColumn>& columns() const { return columns_; }

 private:
  std::vector<MasterColumn> columns_;
  std::map<std::pair<int, std::vector<int>>, int> index_;
};

struct VariableBound {
  int index = -1;
  RowSense sense = RowSense::kLessEqual;
  double value = 0.0;

  friend bool operator==(const VariableBound&, const VariableBound&) = default;
};

// Branching decisions active at a node. Pairing bounds index the pool.
struct NodeConstraints {
  BranchState pricing;
  std::vector<VariableBound> cancel;
  std::vector<VariableBound> deadhead;
  std::vector<VariableBound> schedule;
  std::vector<VariableBound> pairing;
};

// Whether pool column `column` may appear at a node.
bool column_allowed(const Instance& instance, const MasterColumn& column,
                    int pool_id, const NodeConstraints& node);

struct RowLayout {
  int cover = 0;
  int deadhead = 0;
  int capacity = 0;
  int pair = 0;
  int crew = 0;
  int reserve = 0;
  int schedule = -1;
  int reserve_limit = -1;
  int follow_on = 0;
  int bounds = 0;
  int end = 0;
  // Row of the schedule-consistency constraint per crew member, or -1.
  std::vector<int> reserve_row;
};

struct MasterLp {
  LpProblem lp;
  RowLayout rows;
  int cancel_col = 0;
  int deadhead_col = 0;
  int schedule_col = 0;
  // One idle column per crew member with a nonzero idle cost, whose crew
  // row is then an equality.
  int idle_col = 0;
  std::vector<int> idle_crew;
  int artificial_col = 0;
  int num_artificial = 0;
  int pairing_col = 0;
  // Pool id of each pairing column, in LP order.
  std::vector<int> pool_ids;
  // Phase one minimises the artificials with all other costs zeroed.
  bool phase_one = false;
};

MasterLp build_master(const Instance& instance, const MasterSetup& setup,
                      const ColumnPool& pool, const NodeConstraints& node,
                      bool phase_one);

void append_column(MasterLp& master, const Instance& instance,
                   const MasterSetup& setup, const NodeConstraints& node,
                   const MasterColumn& column, int pool_id);

// Row duals mapped onto the pricing families.
DualValues extract_duals(const MasterLp& master, const LpSolution& solution,
                         const Instance& instance,
                         const NodeConstraints& node);

struct ColumnGenerationOptions {
  PricingOptions pricing;
  int max_iterations = 10000;
};

struct ColumnGenerationResult {
  // kOptimal, or kInfeasible when the node admits no solution.
  LpStatus status = LpStatus::kInfeasible;
  MasterLp master;
  LpSolution solution;
  DualValues duals;
  int iterations = 0;
  int generated = 0;
  std::vector<double> objective_trace;
};

// Solves the node LP to optimality over all pairings. Throws
// std::runtime_error when the iteration cap is reached.
ColumnGenerationResult column_generation(const Instance& instance,
                                         const MasterSetup& setup,
                                         ColumnPool& pool,
                                         const NodeConstraints& node,
                                         LpSolver& solver,
                                         const ColumnGenerationOptions& options);

}  // namespace crewrec

#endif  // CREWREC_MASTER_H_
