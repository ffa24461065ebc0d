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

// Expected-shortfall evaluation of reserve-crew schedules.
//
// The number of on-duty, unused reserves is modelled as a Markov chain over
// the periods delimited by reserve shift starts and ends. Each period applies
// three transitions in order: reserves whose shift ended leave (assuming the
// earliest-finisher-first assignment policy), reserves whose shift starts
// join, and random demand consumes reserves. The shortfall of a period is
// E[(demand - available)^+] measured after the first two transitions.
//
// The chain tracks counts only. It is exact when shifts are FIFO-ordered
// (a shift that starts later never ends earlier) and every period has a
// positive probability of zero demand; `simulate_eff` is the reference for
// other layouts.

#ifndef CREWREC_RESERVE_EVAL_H_
#define CREWREC_RESERVE_EVAL_H_

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "crewrec/instance.h"

namespace crewrec {

// Probability mass function over {0, ..., upper_bound()}.
struct DemandModel {
  std::vector<double> pmf = {1.0};

  int upper_bound() const { return static_cast<int>(pmf.size()) - 1; }
  double mean() const;
  // Throws std::invalid_argument unless entries are nonnegative and sum to 1
  // within 1e-12.
  void check() const;

  static DemandModel binomial(int trials, double probability);
  static DemandModel none() { return {}; }
};

struct Period {
  Minutes start = 0;
  Minutes end = 0;
  std::vector<int> shifts_ending;    // shifts with end == start
  std::vector<int> shifts_starting;  // shifts with start == start
  DemandModel demand;
};

struct PeriodGrid {
  std::vector<Minutes> boundaries;
  std::vector<Period> periods;
  std::vector<ReserveShift> shifts;
  int num_shifts = 0;
};

// Demand of each period is binomial over the flights departing one of the
// `hubs` during that period.
struct BinomialDemand {
  double probability = 0.0;
  std::vector<std::string> hubs;
};

// One explicit pmf per period, in period order.
struct ExplicitDemand {
  std::vector<DemandModel> pmfs;
};

using DemandSpec = std::variant<BinomialDemand, ExplicitDemand>;

// Throws std::invalid_argument when `shifts` is empty, a flight departs
// outside the grid, or an explicit pmf list has the wrong length.
PeriodGrid build_periods(std::span<const ReserveShift> shifts,
                         std::span<const FlightLeg> flights,
                         const DemandSpec& demand);

struct ReserveSchedule {
  // Standby headcount per shift.
  std::vector<int> headcounts;
  // Crew indices of the pool reserves this schedule releases for flying.
  std::vector<int> members;

  int total() const;
};

// Maximum number of reserves simultaneously on duty over the grid.
int max_available(const ReserveSchedule& schedule, const PeriodGrid& grid);

using StateDistribution = std::vector<double>;

constexpr double kPositiveMass = 1e-12;

// Largest state carrying more than kPositiveMass probability.
int max_positive_state(const StateDistribution& dist);

// Reserves of ending shifts leave. States above `e_bar_prev - h_ending`
// collapse onto it; lower states are unchanged.
StateDistribution transition_end(const StateDistribution& dist, int h_ending,
                                 int e_bar_prev);

// `h_starting` reserves join; states that would exceed `n_max` stay put.
StateDistribution transition_start(const StateDistribution& dist,
                                   int h_starting, int n_max);

// Demand x moves state i to i - x; demand >= i empties the pool.
StateDistribution transition_demand(const StateDistribution& dist,
                                    const DemandModel& demand);

// E[(demand - available)^+] for the distribution seen by the demand.
double shortfall_period(const StateDistribution& dist,
                        const DemandModel& demand);

struct ScheduleEvaluation {
  double total_shortfall = 0.0;
  std::vector<double> period_shortfall;
  // Distribution at the end of each period.
  std::vector<StateDistribution> period_states;
};

ScheduleEvaluation evaluate_schedule(const ReserveSchedule& schedule,
                                     const PeriodGrid& grid);

// c_theta = unit * shortfall - baseline.
double schedule_cost(double total_shortfall, double baseline, double unit);
double schedule_cost(const ReserveSchedule& schedule, const PeriodGrid& grid,
                     double baseline, double unit);

// A pool reserve and the shift it stands by on.
struct PoolMember {
  int crew = -1;
  int shift = -1;
};

// Largest m with sum_{i<=m} C(pool_size, i) <= cap.
int max_called_members(int pool_size, std::int64_t cap);

// All schedules that release at most `max_called_members(pool.size(), cap)`
// pool members. Each schedule's headcounts are the pool headcounts minus the
// released members. Ordered by released-set size, then lexicographically.
std::vector<ReserveSchedule> enumerate_schedules(std::span<const PoolMember> pool,
                                                 int num_shifts,
                                                 std::int64_t cap);

struct ShortfallEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

// Monte Carlo replay of the day that tracks every reserve individually and
// serves demand with the on-duty reserve whose shift ends first.
ShortfallEstimate simulate_eff(const ReserveSchedule& schedule,
                               const PeriodGrid& grid, int replications,
                               std::uint64_t seed);

}  // namespace crewrec

#endif  // CREWREC_RESERVE_EVAL_H_
