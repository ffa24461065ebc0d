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

// Tracking-period experiment loop. Disruptions arrive at a few checkpoints
// before the execution day; after each one the schedule is recovered and
// republished, and a last round of disruptions on the day itself is
// recovered with the traditional model.
//
// The published schedule lives in the instance itself: `original_pairing`
// holds each member's current duty, `standby_shift` marks reserves still in
// the on-call pool and `unavailable_flights` accumulates disruptions.

#ifndef CREWREC_SIMULATION_H_
#define CREWREC_SIMULATION_H_

#include <cstdint>
#include <string>
#include <vector>

#include "crewrec/branch_price.h"
#include "crewrec/instance.h"
#include "crewrec/reserve_eval.h"
#include "crewrec/rng.h"

namespace crewrec {

struct ScenarioConfig {
  std::string name = "scenario";
  // Fractions of the tracking period at which the schedule is updated,
  // strictly increasing and ending at 1.
  std::vector<double> checkpoints = {1.0};
  // Disruption probability per checkpoint.
  std::vector<double> disruption_probabilities = {0.1};
  // Disruption probability on the execution day. Also the per-departure
  // probability of reserve demand when pricing reserve schedules.
  double execution_probability = 0.06;
  std::uint64_t seed = 1;
  std::string instance_path;
  CostModel tracking_model = CostModel::kReliable;
  CostModel execution_model = CostModel::kTraditional;
  // Cap on the number of candidate reserve schedules.
  std::int64_t schedule_cap = 100'000;
  // Copy generation applied whenever the flight list changes.
  int copies = 5;
  Minutes copy_interval = 5;
  Minutes min_turnaround = 30;
  BranchPriceConfig solver;
  // Wall-clock times are left at zero unless enabled, so that reports of
  // equal seeds compare byte for byte.
  bool record_time = false;

  // Throws std::invalid_argument on a malformed scenario.
  void check() const;
};

struct Disruption {
  int crew = -1;
  int flight = -1;

  friend bool operator==(const Disruption&, const Disruption&) = default;
};

struct TrackingState {
  Instance instance;
  // Standby headcount per shift of the pool still on call, and its cost
  // baseline c^s * shortfall.
  ReserveSchedule reserve_schedule;
  double shortfall = 0.0;
  double baseline = 0.0;
  // Crew indices disrupted so far, sorted.
  std::vector<int> disrupted_crew;
  // Ids of flights cancelled so far; they are removed from the instance.
  std::vector<std::string> cancelled_flights;
  int round = 0;
};

// One recovery round. `model` names the tracking-phase model of the run, so
// execution-day rows of both arms stay apart although both are recovered
// with the same model.
struct MetricsRow {
  std::string instance;
  std::string phase;
  int round = 0;
  std::string model;
  int alterations = 0;
  int retimings = 0;
  int reserves = 0;
  int cancellations = 0;
  double penalty = 0.0;
  double shortfall = 0.0;
  double costs = 0.0;
  double time = 0.0;

  friend bool operator==(const MetricsRow&, const MetricsRow&) = default;
};

const char* model_label(CostModel model);

// Demand on the standby pool: each departure from a crew base needs a
// reserve with the scenario's execution-day probability.
PeriodGrid reserve_grid(const Instance& instance, double probability);

// Fresh state for a published instance: every reserve with a standby shift
// is on call and the baseline is the cost of that full pool.
TrackingState initial_state(Instance instance, const ScenarioConfig& scenario);

// Each leg of a published pairing that departs the member's home base is
// lost independently with probability `probability`. Draws are keyed by
// round and flight id only: runs that recovered differently still lose the
// crew of the same flights.
std::vector<Disruption> sample_disruptions(const TrackingState& state,
                                           double probability,
                                           const CounterRng& rng, int round);

// A disrupted member cannot fly on the execution day at all: every flight
// is marked unavailable, so its duty has to be covered by others.
void apply_disruptions(TrackingState& state, const std::vector<Disruption>& lost);

// A reserve in the pool falls sick: it leaves the pool for good and the
// baseline follows the smaller pool.
// Throws std::invalid_argument unless `crew` is on call.
void withdraw_reserve(TrackingState& state, int crew, const ScenarioConfig& scenario);

// Recovers the current state with `model`, returning the solution found
// within the solver budget.
MasterSolution recover(const TrackingState& state, CostModel model,
                       const ScenarioConfig& scenario);

// Makes `solution` the published schedule: operated copies become the
// flights' new times, cancelled flights are dropped and reserves that fly
// leave the pool.
void publish(TrackingState& state, const MasterSolution& solution,
             const ScenarioConfig& scenario);

struct TrackingResult {
  TrackingState state;
  std::vector<MetricsRow> rows;
  // kBudgetExhausted when any round stopped on the solver budget; the
  // incumbent of that round was published and the run carried on.
  SolveStatus status = SolveStatus::kOptimal;
};

TrackingResult run_tracking(const Instance& instance, const ScenarioConfig& scenario);

MetricsRow run_execution_day(TrackingState& state, const ScenarioConfig& scenario,
                             SolveStatus* status = nullptr);

// Tracking followed by the execution day.
TrackingResult run_scenario(const Instance& instance, const ScenarioConfig& scenario);

}  // namespace crewrec

#endif  // CREWREC_SIMULATION_H_
