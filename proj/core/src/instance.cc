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

#include "crewrec/instance.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace crewrec {

Minutes Instance::copy_departure(int copy) const {
  const FlightCopy& c = copies[copy];
  return flights[c.flight].departure + c.departure_shift;
}

Minutes Instance::copy_arrival(int copy) const {
  const FlightCopy& c = copies[copy];
  return flights[c.flight].arrival + c.departure_shift;
}

std::vector<int> Instance::copies_of(int flight) const {
  std::vector<int> out;
  for (int c = 0; c < static_cast<int>(copies.size()); ++c) {
    if (copies[c].flight == flight) out.push_back(c);
  }
  std::sort(out.begin(), out.end(), [&](int a, int b) {
    return copies[a].copy_index < copies[b].copy_index;
  });
  return out;
}

int Instance::original_copy(int flight) const {
  for (int c = 0; c < static_cast<int>(copies.size()); ++c) {
    if (copies[c].flight == flight && copies[c].is_original()) return c;
  }
  return -1;
}

std::optional<Minutes> Instance::travel_time(const std::string& from,
                                             const std::string& to) const {
  if (from == to) return 0;
  auto index_of = [&](const std::string& a) -> int {
    auto it = std::find(airports.begin(), airports.end(), a);
    return it == airports.end() ? -1 : static_cast<int>(it - airports.begin());
  };
  const int i = index_of(from);
  const int j = index_of(to);
  if (i < 0 || j < 0) return std::nullopt;
  const Minutes t = travel_times[i][j];
  if (t < 0) return std::nullopt;
  return t;
}

int Instance::find_flight(const std::string& id) const {
  for (int f = 0; f < static_cast<int>(flights.size()); ++f) {
    if (flights[f].id == id) return f;
  }
  return -1;
}

int Instance::find_crew(const std::string& id) const {
  for (int k = 0; k < static_cast<int>(crew.size()); ++k) {
    if (crew[k].id == id) return k;
  }
  return -1;
}

double Instance::effective_big_m() const {
  if (costs.big_m) return *costs.big_m;
  return std::max<double>(1.0, static_cast<double>(crew.size()));
}

std::vector<std::string> Instance::crew_bases() const {
  std::set<std::string> bases;
  for (const CrewMember& k : crew) bases.insert(k.home_base);
  return {bases.begin(), bases.end()};
}

std::vector<std::string> validate(const Instance& instance) {
  // Keyed by (type rank, id) so the output order is deterministic.
  std::multimap<std::pair<int, std::string>, std::string> found;
  auto add = [&](int rank, const std::string& id, const std::string& what) {
    found.emplace(std::make_pair(rank, id), what);
  };

  std::set<std::string> flight_ids;
  for (const FlightLeg& f : instance.flights) {
    if (!flight_ids.insert(f.id).second) {
      add(0, f.id, "flight " + f.id + ": duplicate id");
    }
    if (f.arrival <= f.departure) {
      add(0, f.id, "flight " + f.id + ": arrival not after departure");
    }
    if (f.origin == f.destination) {
      add(0, f.id, "flight " + f.id + ": origin equals destination");
    }
    if (f.cancel_cost < 0 || f.retime_cost < 0) {
      add(0, f.id, "flight " + f.id + ": negative cost");
    }
  }

  const int num_flights = static_cast<int>(instance.flights.size());
  std::vector<int> originals(num_flights, 0);
  std::set<std::pair<int, int>> copy_keys;
  for (int c = 0; c < static_cast<int>(instance.copies.size()); ++c) {
    const FlightCopy& copy = instance.copies[c];
    const std::string id = "copy#" + std::to_string(c);
    if (copy.flight < 0 || copy.flight >= num_flights) {
      add(1, id, id + ": references missing flight");
      continue;
    }
    if (copy.copy_index < 0) add(1, id, id + ": negative copy index");
    if (copy.copy_index == 0) {
      ++originals[copy.flight];
      if (copy.departure_shift != 0) {
        add(1, id, id + ": original copy with nonzero shift");
      }
    }
    if (!copy_keys.insert({copy.flight, copy.copy_index}).second) {
      add(1, id, id + ": duplicate copy index for flight");
    }
  }
  for (int f = 0; f < num_flights; ++f) {
    if (originals[f] != 1) {
      add(0, instance.flights[f].id,
          "flight " + instance.flights[f].id + ": needs exactly one original copy");
    }
  }

  const int num_copies = static_cast<int>(instance.copies.size());
  for (const IncompatiblePair& p : instance.incompatible) {
    std::ostringstream id;
    id << "pair(" << p.copy_a << "," << p.copy_b << ")";
    if (p.copy_a < 0 || p.copy_b < 0 || p.copy_a >= num_copies ||
        p.copy_b >= num_copies) {
      add(2, id.str(), id.str() + ": references missing copy");
    } else if (p.copy_a >= p.copy_b) {
      add(2, id.str(), id.str() + ": not in canonical order");
    }
  }

  std::set<std::string> crew_ids;
  for (const CrewMember& k : instance.crew) {
    const std::string id = "crew " + k.id;
    if (!crew_ids.insert(k.id).second) add(3, k.id, id + ": duplicate id");
    if (k.earliest_start >= k.latest_end) {
      add(3, k.id, id + ": earliest start not before latest end");
    }
    if (k.original_pairing_cost < 0) add(3, k.id, id + ": negative cost");
    if (k.original_pairing) {
      for (int c : *k.original_pairing) {
        if (c < 0 || c >= num_copies) {
          add(3, k.id, id + ": original pairing references missing copy");
          break;
        }
      }
    }
    if (k.standby_shift) {
      if (!k.is_reserve()) {
        add(3, k.id, id + ": regular crew with standby shift");
      } else if (*k.standby_shift < 0 ||
                 *k.standby_shift >= static_cast<int>(instance.shifts.size())) {
        add(3, k.id, id + ": standby shift out of range");
      } else if (k.original_pairing && !k.original_pairing->empty()) {
        add(3, k.id, id + ": standby reserve with a published pairing");
      }
    }
    for (int f : k.unavailable_flights) {
      if (f < 0 || f >= num_flights) {
        add(3, k.id, id + ": unavailable flight out of range");
        break;
      }
    }
  }

  for (const ReserveShift& s : instance.shifts) {
    if (s.end <= s.start) {
      add(4, s.id, "shift " + s.id + ": end not after start");
    }
  }

  const DutyRules& r = instance.rules;
  if (r.max_fly_long <= 0 || r.max_fly_short <= 0 || r.max_duty_long <= 0 ||
      r.max_duty_short <= 0 || r.min_sit <= 0 || r.min_rest <= 0 ||
      r.long_duty_leg_threshold <= 0 || r.max_earlier_start <= 0) {
    add(5, "rules", "rules: all duty limits must be positive");
  }

  const CostParams& cp = instance.costs;
  bool negative = cp.pay_credit_min < 0 || cp.duty_time_ratio < 0 ||
                  cp.transport_cost < 0 || cp.alter_cost < 0 ||
                  cp.shortfall_unit_cost < 0 || cp.tcrp_reserve_cost < 0 ||
                  cp.deadhead_cost < 0 || (cp.big_m && *cp.big_m < 0);
  for (int i = 0; i < 4; ++i) {
    negative = negative || cp.penalty_caps[i] < 0 || cp.penalty_slopes[i] < 0;
  }
  if (negative) add(6, "costs", "costs: parameters must be nonnegative");

  const std::size_t n = instance.airports.size();
  bool square = instance.travel_times.size() == n;
  for (const auto& row : instance.travel_times) square = square && row.size() == n;
  if (!square) {
    add(7, "travel", "travel: matrix must be square over the airport list");
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      if (instance.travel_times[i][i] != 0) {
        add(7, "travel", "travel: nonzero diagonal at " + instance.airports[i]);
      }
      for (std::size_t j = i + 1; j < n; ++j) {
        if (instance.travel_times[i][j] != instance.travel_times[j][i]) {
          add(7, "travel", "travel: asymmetric entry " + instance.airports[i] +
                               "-" + instance.airports[j]);
        }
      }
    }
  }

  std::vector<std::string> out;
  out.reserve(found.size());
  for (auto& [key, what] : found) out.push_back(what);
  return out;
}

std::vector<FlightCopy> generate_copies(std::span<const FlightLeg> flights,
                                        int count, Minutes interval,
                                        const CostParams& costs) {
  if (count < 1 || count % 2 == 0) {
    throw std::invalid_argument("copy count must be a positive odd number");
  }
  if (interval <= 0) {
    throw std::invalid_argument("copy interval must be positive");
  }
  std::vector<FlightCopy> out;
  out.reserve(flights.size() * count);
  for (int f = 0; f < static_cast<int>(flights.size()); ++f) {
    for (int i = 0; i < count; ++i) {
      // 0, -1, +1, -2, +2, ...
      const int step = (i + 1) / 2;
      const int sign = (i % 2 == 1) ? -1 : 1;
      FlightCopy c;
      c.flight = f;
      c.copy_index = i;
      c.departure_shift = sign * step * interval;
      // Deadheading on a re-timed copy refunds the re-timing cost charged to
      // the deadheader's pairing.
      c.deadhead_cost = costs.deadhead_cost -
                        (i == 0 ? 0.0 : flights[f].retime_cost);
      out.push_back(c);
    }
  }
  return out;
}

IncompatibilityRule same_aircraft_rule(Minutes min_turnaround) {
  return [min_turnaround](const Instance& inst, int a, int b) {
    const FlightCopy& ca = inst.copies[a];
    const FlightCopy& cb = inst.copies[b];
    if (ca.flight == cb.flight) return false;
    const FlightLeg& fa = inst.flights[ca.flight];
    const FlightLeg& fb = inst.flights[cb.flight];
    if (fa.aircraft_id.empty() || fa.aircraft_id != fb.aircraft_id) {
      return false;
    }
    const Minutes dep_a = inst.copy_departure(a);
    const Minutes arr_a = inst.copy_arrival(a);
    const Minutes dep_b = inst.copy_departure(b);
    const Minutes arr_b = inst.copy_arrival(b);
    const bool a_then_b = arr_a + min_turnaround <= dep_b;
    const bool b_then_a = arr_b + min_turnaround <= dep_a;
    return !(a_then_b || b_then_a);
  };
}

std::vector<IncompatiblePair> build_incompatibilities(
    const Instance& instance, std::span<const IncompatibilityRule> rules) {
  std::vector<IncompatiblePair> out;
  const int n = static_cast<int>(instance.copies.size());
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (const IncompatibilityRule& rule : rules) {
        if (rule(instance, a, b)) {
          out.push_back({a, b});
          break;
        }
      }
    }
  }
  return out;
}

void rebuild_copies(Instance& instance, int count, Minutes interval,
                    Minutes min_turnaround) {
  // Published pairings reference copies by index; remember them by
  // (flight, shift) so they survive the regeneration.
  auto remember = [&](const std::vector<int>& legs) {
    std::vector<std::pair<int, Minutes>> keyed;
    for (int c : legs) {
      keyed.emplace_back(instance.copies[c].flight,
                         instance.copies[c].departure_shift);
    }
    return keyed;
  };
  std::vector<std::optional<std::vector<std::pair<int, Minutes>>>> saved;
  for (const CrewMember& k : instance.crew) {
    if (k.original_pairing) {
      saved.emplace_back(remember(*k.original_pairing));
    } else {
      saved.emplace_back(std::nullopt);
    }
  }

  instance.copies =
      generate_copies(instance.flights, count, interval, instance.costs);
  const std::array<IncompatibilityRule, 1> rules = {
      same_aircraft_rule(min_turnaround)};
  instance.incompatible = build_incompatibilities(instance, rules);

  for (std::size_t k = 0; k < instance.crew.size(); ++k) {
    if (!saved[k]) continue;
    std::vector<int> legs;
    for (auto [flight, shift] : *saved[k]) {
      int match = instance.original_copy(flight);
      for (int c : instance.copies_of(flight)) {
        if (instance.copies[c].departure_shift == shift) match = c;
      }
      legs.push_back(match);
    }
    instance.crew[k].original_pairing = std::move(legs);
  }
}

}  // namespace crewrec
