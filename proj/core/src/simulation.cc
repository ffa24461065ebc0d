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

#include "crewrec/simulation.h"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>

namespace crewrec {
namespace {

std::vector<PoolMember> standby_pool(const Instance& in) {
  std::vector<PoolMember> pool;
  for (int k = 0; k < static_cast<int>(in.crew.size()); ++k) {
    if (in.crew[k].in_standby_pool()) pool.push_back({k, *in.crew[k].standby_shift});
  }
  return pool;
}

ReserveSchedule standby_schedule(const Instance& in) {
  ReserveSchedule s;
  s.headcounts.assign(in.shifts.size(), 0);
  for (const PoolMember& m : standby_pool(in)) ++s.headcounts[m.shift];
  return s;
}

double standby_shortfall(const Instance& in, double probability) {
  if (in.shifts.empty()) return 0.0;
  return evaluate_schedule(standby_schedule(in), reserve_grid(in, probability))
      .total_shortfall;
}

void refresh_pool(TrackingState& state, const ScenarioConfig& scenario) {
  state.reserve_schedule = standby_schedule(state.instance);
  state.shortfall = standby_shortfall(state.instance, scenario.execution_probability);
  state.baseline = state.instance.costs.shortfall_unit_cost * state.shortfall;
}

// Replaces the flight list and regenerates copies. `duties` gives each crew
// member's pairing as indices into `flights`; published pairings are mapped
// onto the original copies.
void reindex(Instance& in, std::vector<FlightLeg> flights,
             const std::vector<std::vector<int>>& duties,
             const std::vector<int>& flight_map, const ScenarioConfig& scenario) {
  for (CrewMember& k : in.crew) {
    std::vector<int> kept;
    for (int f : k.unavailable_flights) {
      if (flight_map[f] >= 0) kept.push_back(flight_map[f]);
    }
    k.unavailable_flights = std::move(kept);
  }
  in.flights = std::move(flights);
  rebuild_copies(in, scenario.copies, scenario.copy_interval, scenario.min_turnaround);
  for (std::size_t k = 0; k < in.crew.size(); ++k) {
    std::vector<int> legs;
    for (int f : duties[k]) legs.push_back(in.original_copy(f));
    in.crew[k].original_pairing = std::move(legs);
  }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

MetricsRow make_row(const TrackingState& state, const MasterSolution& solution,
                    const ScenarioConfig& scenario, const char* phase, int round,
                    double seconds) {
  const SolutionMetrics& m = solution.metrics;
  MetricsRow row;
  row.instance = scenario.name;
  row.phase = phase;
  row.round = round;
  row.model = model_label(scenario.tracking_model);
  row.alterations = m.alterations;
  row.retimings = m.retimings;
  row.reserves = m.reserves;
  row.cancellations = m.cancellations;
  row.penalty = m.penalty;
  row.shortfall = state.shortfall;
  row.costs = m.costs;
  row.time = scenario.record_time ? seconds : 0.0;
  return row;
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
  }
}

}  // namespace

void ScenarioConfig::check() const {
  if (checkpoints.empty()) throw std::invalid_argument("scenario has no checkpoints");
  double previous = 0.0;
  for (double c : checkpoints) {
    if (!(c > previous && c <= 1.0)) {
      throw std::invalid_argument("checkpoints must increase strictly within (0, 1]");
    }
    previous = c;
  }
  if (checkpoints.back() != 1.0) {
    throw std::invalid_argument("the last checkpoint must be 1");
  }
  if (disruption_probabilities.size() != checkpoints.size()) {
    throw std::invalid_argument("one disruption probability per checkpoint is required");
  }
  for (double p : disruption_probabilities) check_probability(p, "disruption probability");
  check_probability(execution_probability, "execution-day probability");
  if (schedule_cap < 1) throw std::invalid_argument("schedule cap must be positive");
  if (copies <= 0 || copies % 2 == 0) {
    throw std::invalid_argument("copy count must be a positive odd number");
  }
  if (copy_interval <= 0) throw std::invalid_argument("copy interval must be positive");
}

const char* model_label(CostModel model) {
  return model == CostModel::kReliable ? "RCRP" : "TCRP";
}

PeriodGrid reserve_grid(const Instance& instance, double probability) {
  return build_periods(instance.shifts, instance.flights,
                       BinomialDemand{probability, instance.crew_bases()});
}

TrackingState initial_state(Instance instance, const ScenarioConfig& scenario) {
  scenario.check();
  TrackingState state;
  std::vector<std::vector<int>> duties;
  for (const CrewMember& k : instance.crew) {
    std::vector<int> flights;
    if (k.original_pairing) {
      for (int c : *k.original_pairing) flights.push_back(instance.copies[c].flight);
    }
    duties.push_back(std::move(flights));
  }
  std::vector<int> identity(instance.flights.size());
  for (std::size_t f = 0; f < identity.size(); ++f) identity[f] = static_cast<int>(f);
  std::vector<FlightLeg> flights = instance.flights;
  reindex(instance, std::move(flights), duties, identity, scenario);
  state.instance = std::move(instance);
  refresh_pool(state, scenario);
  return state;
}

std::vector<Disruption> sample_disruptions(const TrackingState& state,
                                           double probability,
                                           const CounterRng& rng, int round) {
  check_probability(probability, "disruption probability");
  const Instance& in = state.instance;
  std::vector<Disruption> lost;
  for (int k = 0; k < static_cast<int>(in.crew.size()); ++k) {
    const CrewMember& member = in.crew[k];
    if (!member.original_pairing) continue;
    for (int c : *member.original_pairing) {
      const FlightLeg& f = in.flight_of(c);
      if (f.origin != member.home_base) continue;
      const bool hit =
          rng.bernoulli(probability, {static_cast<std::uint64_t>(round), key_of(f.id)});
      if (hit) lost.push_back({k, in.copies[c].flight});
    }
  }
  return lost;
}

void apply_disruptions(TrackingState& state, const std::vector<Disruption>& lost) {
  const int flights = static_cast<int>(state.instance.flights.size());
  for (const Disruption& d : lost) {
    auto& banned = state.instance.crew.at(d.crew).unavailable_flights;
    banned.resize(flights);
    std::iota(banned.begin(), banned.end(), 0);
    state.disrupted_crew.push_back(d.crew);
  }
  std::ranges::sort(state.disrupted_crew);
  const auto dup = std::ranges::unique(state.disrupted_crew);
  state.disrupted_crew.erase(dup.begin(), dup.end());
}

void withdraw_reserve(TrackingState& state, int crew, const ScenarioConfig& scenario) {
  CrewMember& member = state.instance.crew.at(crew);
  if (!member.in_standby_pool()) throw std::invalid_argument("crew member is not on call");
  member.standby_shift.reset();
  member.unavailable_flights.resize(state.instance.flights.size());
  std::iota(member.unavailable_flights.begin(), member.unavailable_flights.end(), 0);
  auto& disrupted = state.disrupted_crew;
  const auto at = std::ranges::lower_bound(disrupted, crew);
  if (at == disrupted.end() || *at != crew) disrupted.insert(at, crew);
  refresh_pool(state, scenario);
}

MasterSolution recover(const TrackingState& state, CostModel model,
                       const ScenarioConfig& scenario) {
  const Instance& in = state.instance;
  const std::vector<PoolMember> pool = standby_pool(in);
  if (model == CostModel::kTraditional) {
    const int limit = max_called_members(static_cast<int>(pool.size()), scenario.schedule_cap);
    return solve_tcrp(in, limit, scenario.solver);
  }
  std::vector<ScheduleOption> options;
  if (in.shifts.empty()) {
    options.push_back(ScheduleOption{});
  } else {
    const PeriodGrid grid = reserve_grid(in, scenario.execution_probability);
    for (ReserveSchedule& theta : enumerate_schedules(
             pool, static_cast<int>(in.shifts.size()), scenario.schedule_cap)) {
      const double shortfall = evaluate_schedule(theta, grid).total_shortfall;
      const double cost =
          schedule_cost(shortfall, state.baseline, in.costs.shortfall_unit_cost);
      options.push_back(ScheduleOption{std::move(theta), shortfall, cost});
    }
  }
  return solve_rcrp(in, std::move(options), scenario.solver);
}

void publish(TrackingState& state, const MasterSolution& solution,
             const ScenarioConfig& scenario) {
  Instance& in = state.instance;
  std::vector<int> crews_on(in.copies.size(), 0);
  for (const MasterColumn& col : solution.pairings) {
    for (int c : col.pairing.legs) ++crews_on[c];
  }
  std::vector<bool> cancelled(in.flights.size(), false);
  for (int f : solution.cancelled) cancelled[f] = true;

  std::vector<FlightLeg> flights;
  std::vector<int> flight_map(in.flights.size(), -1);
  for (int f = 0; f < static_cast<int>(in.flights.size()); ++f) {
    if (cancelled[f]) {
      state.cancelled_flights.push_back(in.flights[f].id);
      continue;
    }
    FlightLeg leg = in.flights[f];
    for (int c : in.copies_of(f)) {
      const int dh = c < static_cast<int>(solution.deadheads.size()) ? solution.deadheads[c] : 0;
      if (crews_on[c] - dh >= 1) {
        leg.departure = in.copy_departure(c);
        leg.arrival = in.copy_arrival(c);
        break;
      }
    }
    flight_map[f] = static_cast<int>(flights.size());
    flights.push_back(std::move(leg));
  }

  std::vector<std::vector<int>> duties(in.crew.size());
  for (int k = 0; k < static_cast<int>(in.crew.size()); ++k) {
    const MasterColumn* col = solution.pairing_of(k);
    if (!col) continue;
    for (int c : col->pairing.legs) duties[k].push_back(flight_map[in.copies[c].flight]);
    if (!duties[k].empty()) in.crew[k].standby_shift.reset();
  }
  reindex(in, std::move(flights), duties, flight_map, scenario);
  refresh_pool(state, scenario);
  ++state.round;
}

TrackingResult run_tracking(const Instance& instance, const ScenarioConfig& scenario) {
  TrackingResult result;
  result.state = initial_state(instance, scenario);
  const CounterRng rng(scenario.seed);
  for (std::size_t j = 0; j < scenario.checkpoints.size(); ++j) {
    TrackingState& state = result.state;
    apply_disruptions(state, sample_disruptions(state, scenario.disruption_probabilities[j],
                                                rng, static_cast<int>(j)));
    const auto started = std::chrono::steady_clock::now();
    const MasterSolution solution = recover(state, scenario.tracking_model, scenario);
    const double seconds = seconds_since(started);
    if (solution.status == SolveStatus::kBudgetExhausted) {
      result.status = SolveStatus::kBudgetExhausted;
    }
    publish(state, solution, scenario);
    result.rows.push_back(
        make_row(state, solution, scenario, "tracking", static_cast<int>(j) + 1, seconds));
  }
  return result;
}

MetricsRow run_execution_day(TrackingState& state, const ScenarioConfig& scenario,
                             SolveStatus* status) {
  const CounterRng rng(scenario.seed);
  const int round = static_cast<int>(scenario.checkpoints.size());
  apply_disruptions(state,
                    sample_disruptions(state, scenario.execution_probability, rng, round));
  const auto started = std::chrono::steady_clock::now();
  const MasterSolution solution = recover(state, scenario.execution_model, scenario);
  const double seconds = seconds_since(started);
  if (status) *status = solution.status;
  publish(state, solution, scenario);
  return make_row(state, solution, scenario, "execution", round + 1, seconds);
}

TrackingResult run_scenario(const Instance& instance, const ScenarioConfig& scenario) {
  TrackingResult result = run_tracking(instance, scenario);
  SolveStatus status = SolveStatus::kOptimal;
  result.rows.push_back(run_execution_day(result.state, scenario, &status));
  if (status == SolveStatus::kBudgetExhausted) result.status = status;
  return result;
}

}  // namespace crewrec
