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

#ifndef CREWREC_INSTANCE_H_
#define CREWREC_INSTANCE_H_

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace crewrec {

// Minutes from midnight of the execution day. Values above 1440 denote the
// following calendar day.
using Minutes = int;

struct FlightLeg {
  std::string id;
  std::string origin;
  std::string destination;
  Minutes departure = 0;
  Minutes arrival = 0;
  std::string aircraft_id;
  double cancel_cost = 1'000'000.0;
  double retime_cost = 2000.0;

  Minutes duration() const { return arrival - departure; }
};

// A re-timed variant of a flight. Copy 0 is always the published time.
struct FlightCopy {
  int flight = -1;
  int copy_index = 0;
  Minutes departure_shift = 0;
  double deadhead_cost = 0.0;

  bool is_original() const { return copy_index == 0; }
};

// Unordered pair of copy indices stored with copy_a < copy_b.
struct IncompatiblePair {
  int copy_a = -1;
  int copy_b = -1;

  friend bool operator==(const IncompatiblePair&,
                         const IncompatiblePair&) = default;
  friend auto operator<=>(const IncompatiblePair&,
                          const IncompatiblePair&) = default;
};

enum class CrewKind { kRegular, kReserve };

struct CrewMember {
  std::string id;
  CrewKind kind = CrewKind::kRegular;
  std::string home_base;
  Minutes earliest_start = 0;
  Minutes latest_end = 1440;
  // Cost of the published pairing. Only used when `original_pairing` is
  // absent; otherwise the solver prices the published pairing itself.
  double original_pairing_cost = 0.0;
  // Published pairing as copy indices, in flying order.
  std::optional<std::vector<int>> original_pairing;
  // Standby shift for reserves that are still in the on-call pool. A reserve
  // that already received a pairing in an earlier recovery round has none.
  std::optional<int> standby_shift;
  // Flights this member can no longer operate (crew-induced disruptions).
  std::vector<int> unavailable_flights;

  bool is_reserve() const { return kind == CrewKind::kReserve; }
  bool in_standby_pool() const { return is_reserve() && standby_shift; }
};

struct ReserveShift {
  std::string id;
  Minutes start = 0;
  Minutes end = 0;
};

struct DutyRules {
  Minutes max_fly_long = 9 * 60;
  Minutes max_fly_short = 12 * 60;
  Minutes max_duty_long = 11 * 60;
  Minutes max_duty_short = 13 * 60;
  Minutes min_sit = 30;
  Minutes min_rest = 10 * 60;
  // Duties with at least this many legs are long; fewer legs are short.
  int long_duty_leg_threshold = 3;
  Minutes max_earlier_start = 120;

  bool is_long(int legs) const { return legs >= long_duty_leg_threshold; }
  Minutes max_fly(int legs) const {
    return is_long(legs) ? max_fly_long : max_fly_short;
  }
  Minutes max_duty(int legs) const {
    return is_long(legs) ? max_duty_long : max_duty_short;
  }
};

struct CostParams {
  double pay_credit_min = 360.0;
  double duty_time_ratio = 5.0 / 8.0;
  double transport_cost = 60.0;
  double alter_cost = 200.0;
  double shortfall_unit_cost = 2500.0;
  double tcrp_reserve_cost = 360.0;
  double deadhead_cost = 250.0;
  // Index i pairs with characteristic i: fly time, duty span, sit time, rest.
  std::array<double, 4> penalty_caps = {360.0, 360.0, 180.0, 120.0};
  std::array<double, 4> penalty_slopes = {4.0, 4.0, 2.0, 12.0};
  // Coefficient of the cancellation variable in the deadhead-capacity row.
  // Unset means the crew count, which bounds the deadheads on any flight.
  std::optional<double> big_m;
};

struct Instance {
  std::vector<FlightLeg> flights;
  std::vector<FlightCopy> copies;
  std::vector<IncompatiblePair> incompatible;
  std::vector<CrewMember> crew;
  std::vector<ReserveShift> shifts;
  DutyRules rules;
  CostParams costs;
  // Ground network: airports and a symmetric travel-time matrix in minutes.
  // Negative entries mean no ground connection.
  std::vector<std::string> airports;
  std::vector<std::vector<Minutes>> travel_times;

  Minutes copy_departure(int copy) const;
  Minutes copy_arrival(int copy) const;
  const FlightLeg& flight_of(int copy) const {
    return flights[copies[copy].flight];
  }
  // Copy indices of flight f, ordered by copy_index.
  std::vector<int> copies_of(int flight) const;
  int original_copy(int flight) const;

  // Ground travel time between two airports, or nullopt when there is no
  // ground link. Zero for identical airports.
  std::optional<Minutes> travel_time(const std::string& from,
                                     const std::string& to) const;

  int find_flight(const std::string& id) const;
  int find_crew(const std::string& id) const;

  double effective_big_m() const;
  // Home bases of all crew, sorted and unique.
  std::vector<std::string> crew_bases() const;
};

// Returns one human-readable entry per violated invariant, ordered by
// (type, id). An empty result means the instance is well-formed.
std::vector<std::string> validate(const Instance& instance);

// Copies at departure shifts -interval*(count/2) .. +interval*(count/2).
// Copy 0 is the original; the remaining copies alternate -1,+1,-2,+2 steps.
// Throws std::invalid_argument for an even or non-positive count.
std::vector<FlightCopy> generate_copies(std::span<const FlightLeg> flights,
                                        int count, Minutes interval,
                                        const CostParams& costs);

// An incompatibility rule decides whether two copies may not both be
// operated. Rules are combined with logical or.
using IncompatibilityRule =
    std::function<bool(const Instance&, int copy_a, int copy_b)>;

// Copies of distinct flights flown by the same aircraft whose block times
// overlap or leave less than `min_turnaround` between them.
IncompatibilityRule same_aircraft_rule(Minutes min_turnaround);

std::vector<IncompatiblePair> build_incompatibilities(
    const Instance& instance, std::span<const IncompatibilityRule> rules);

// Regenerates copies and the incompatibility set with the default policy.
void rebuild_copies(Instance& instance, int count, Minutes interval,
                    Minutes min_turnaround);

}  // namespace crewrec

#endif  // CREWREC_INSTANCE_H_
