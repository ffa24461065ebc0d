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

// Branch-and-price for the recovery problem. Nodes are explored best bound
// first; every node re-runs column generation over the shared column pool.
// Branching order: cancellations, deadheads, follow-on pairs, reserve
// schedules, and single pairings as a last resort.

#ifndef CREWREC_BRANCH_PRICE_H_
#define CREWREC_BRANCH_PRICE_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "crewrec/instance.h"
#include "crewrec/lp.h"
#include "crewrec/master.h"

namespace crewrec {

struct BranchPriceConfig {
  ColumnGenerationOptions column_generation;
  std::int64_t node_budget = 10000;
  double time_budget_seconds = 600.0;
  double integrality_tolerance = 1e-6;
  // Relative gap at which the incumbent is declared optimal.
  double gap_tolerance = 1e-6;
};

// One variable family of a fractional LP solution to branch on.
struct BranchDecision {
  enum class Kind { kCancel, kDeadhead, kFollowOn, kSchedule, kPairing };
  Kind kind = Kind::kCancel;
  // Flight, copy, schedule or pool column; unused for follow-ons.
  int index = -1;
  FollowOn follow_on;
  double value = 0.0;
  double score = 0.0;
};

// Value of a variable in a node LP solution.
struct FractionalView {
  std::vector<double> cancel;     // per flight
  std::vector<double> deadhead;   // per copy
  std::vector<double> schedule;   // per schedule option
  std::vector<std::pair<int, double>> pairings;  // (pool id, x) with x > 0
};

FractionalView fractional_view(const MasterLp& master,
                               const LpSolution& solution);

// The most infeasible variable of the highest-priority fractional family.
// Throws std::invalid_argument when the solution is integral.
BranchDecision select_branch(const Instance& instance, const ColumnPool& pool,
                             const FractionalView& view, double tolerance);

bool is_integral(const Instance& instance, const ColumnPool& pool,
                 const FractionalView& view, double tolerance);

// Counts reported per solve, in the order of the experiment tables.
// `costs` is the operating cost of the crew plan: pay-and-credit and
// transport of every selected pairing plus deadheads at the base rate. It
// leaves out penalties, alteration and re-timing charges, cancellations and
// reserve charges, so the two recovery models report comparable figures.
struct SolutionMetrics {
  int alterations = 0;
  int retimings = 0;
  int reserves = 0;
  int cancellations = 0;
  double penalty = 0.0;
  double shortfall = 0.0;
  double costs = 0.0;
};

enum class SolveStatus { kOptimal, kBudgetExhausted };

const char* to_string(SolveStatus status);

struct MasterSolution {
  SolveStatus status = SolveStatus::kOptimal;
  CostModel model = CostModel::kReliable;
  // Selected pairings with their costs, in crew order.
  std::vector<MasterColumn> pairings;
  std::vector<int> deadheads;   // per copy
  std::vector<int> cancelled;   // flight indices
  std::optional<int> schedule;  // selected schedule option
  double objective = 0.0;
  double lower_bound = 0.0;
  double gap = 0.0;
  std::int64_t nodes = 0;
  std::int64_t columns = 0;
  std::int64_t lp_solves = 0;
  SolutionMetrics metrics;

  // Pairing flown by crew member `crew`, or nullptr.
  const MasterColumn* pairing_of(int crew) const;
};

// Objective of an integral solution recomputed from its parts.
double recompute_objective(const Instance& instance, const MasterSetup& setup,
                           const MasterSolution& solution);

SolutionMetrics compute_metrics(const Instance& instance,
                                const MasterSetup& setup,
                                const MasterSolution& solution);

MasterSolution branch_and_price(const Instance& instance,
                                const MasterSetup& setup, LpSolver& solver,
                                const BranchPriceConfig& config);

// Reliable model with the given candidate reserve schedules.
MasterSolution solve_rcrp(const Instance& instance,
                          std::vector<ScheduleOption> schedules,
                          BranchPriceConfig config);

// Traditional model calling at most `reserve_limit` pool reserves.
MasterSolution solve_tcrp(const Instance& instance, int reserve_limit,
                          BranchPriceConfig config);

}  // namespace crewrec

#endif  // CREWREC_BRANCH_PRICE_H_
