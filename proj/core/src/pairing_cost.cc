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

#include "crewrec/pairing_cost.h"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <stdexcept>

namespace crewrec {
namespace {

// Ground travel used to reach the first leg and return after the last one.
// Unreachable links count as zero here; legality reports them separately.
Minutes travel_or_zero(const Instance& instance, const std::string& from,
                       const std::string& to) {
  return instance.travel_time(from, to).value_or(0);
}

}  // namespace

Pairing make_pairing(const Instance& instance, int crew,
                     std::vector<int> legs) {
  if (crew < 0 || crew >= static_cast<int>(instance.crew.size())) {
    throw std::out_of_range(fmt::format("crew index {} out of range", crew));
  }
  const CrewMember& member = instance.crew[crew];
  Pairing p;
  p.crew = crew;
  p.legs = std::move(legs);
  for (int c : p.legs) {
    if (c < 0 || c >= static_cast<int>(instance.copies.size())) {
      throw std::out_of_range(fmt::format("copy index {} out of range", c));
    }
  }
  if (member.original_pairing) {
    p.altered = p.legs != *member.original_pairing;
  } else {
    p.altered = !p.legs.empty();
  }
  if (p.legs.empty()) return p;

  for (std::size_t i = 0; i < p.legs.size(); ++i) {
    const int c = p.legs[i];
    p.fly_time += instance.flight_of(c).duration();
    if (!instance.copies[c].is_original()) p.retimed_legs.push_back(c);
    if (i > 0) {
      p.min_sit = std::min(p.min_sit, instance.copy_departure(c) -
                                          instance.copy_arrival(p.legs[i - 1]));
    }
  }
  p.start_base = instance.flight_of(p.legs.front()).origin;
  p.end_base = instance.flight_of(p.legs.back()).destination;
  p.duty_start = instance.copy_departure(p.legs.front()) -
                 travel_or_zero(instance, member.home_base, p.start_base);
  p.duty_end = instance.copy_arrival(p.legs.back()) +
               travel_or_zero(instance, p.end_base, member.home_base);
  p.duty_span = p.duty_end - p.duty_start;
  return p;
}

Minutes rest_time(const Instance& instance, const Pairing& pairing) {
  if (pairing.empty()) return kNoConnection;
  const CrewMember& member = instance.crew[pairing.crew];
  const Minutes before = pairing.duty_start - member.earliest_start;
  const Minutes after = member.latest_end - pairing.duty_end;
  return instance.rules.min_rest + std::min(before, after);
}

std::vector<std::string> legality_violations(const Instance& instance,
                                             const Pairing& pairing) {
  std::vector<std::string> out;
  if (pairing.empty()) return out;
  const CrewMember& member = instance.crew[pairing.crew];
  const DutyRules& rules = instance.rules;
  const int n = static_cast<int>(pairing.legs.size());

  for (int i = 1; i < n; ++i) {
    const int prev = pairing.legs[i - 1];
    const int next = pairing.legs[i];
    if (instance.flight_of(prev).destination != instance.flight_of(next).origin) {
      out.push_back(fmt::format("leg {}: departs {} but previous leg arrives at {}",
                                i, instance.flight_of(next).origin,
                                instance.flight_of(prev).destination));
    }
    const Minutes sit = instance.copy_departure(next) - instance.copy_arrival(prev);
    if (sit < rules.min_sit) {
      out.push_back(fmt::format("leg {}: sit time {} below minimum {}", i, sit,
                                rules.min_sit));
    }
  }
  if (pairing.fly_time > rules.max_fly(n)) {
    out.push_back(fmt::format("fly time {} exceeds {}", pairing.fly_time,
                              rules.max_fly(n)));
  }
  if (pairing.duty_span > rules.max_duty(n)) {
    out.push_back(fmt::format("duty span {} exceeds {}", pairing.duty_span,
                              rules.max_duty(n)));
  }
  if (!instance.travel_time(member.home_base, pairing.start_base)) {
    out.push_back(fmt::format("no ground link from {} to {}", member.home_base,
                              pairing.start_base));
  }
  if (!instance.travel_time(pairing.end_base, member.home_base)) {
    out.push_back(fmt::format("no ground link from {} to {}", pairing.end_base,
                              member.home_base));
  }
  if (pairing.duty_start < member.earliest_start) {
    out.push_back(fmt::format("duty starts at {} before rest ends at {}",
                              pairing.duty_start, member.earliest_start));
  }
  if (pairing.duty_end > member.latest_end) {
    out.push_back(fmt::format("duty ends at {} after {}", pairing.duty_end,
                              member.latest_end));
  }
  if (member.original_pairing && !member.original_pairing->empty()) {
    const Pairing published =
        make_pairing(instance, pairing.crew, *member.original_pairing);
    if (pairing.duty_start < published.duty_start - rules.max_earlier_start) {
      out.push_back(fmt::format(
          "duty starts at {}, more than {} before the published {}",
          pairing.duty_start, rules.max_earlier_start, published.duty_start));
    }
  }
  if (member.standby_shift) {
    const ReserveShift& shift = instance.shifts[*member.standby_shift];
    for (int c : pairing.legs) {
      const Minutes dep = instance.copy_departure(c);
      if (dep < shift.start || dep > shift.end) {
        out.push_back(fmt::format("copy#{} departs at {} outside shift {}", c,
                                  dep, shift.id));
      }
    }
  }
  for (int c : pairing.legs) {
    const int f = instance.copies[c].flight;
    if (std::ranges::find(member.unavailable_flights, f) !=
        member.unavailable_flights.end()) {
      out.push_back(fmt::format("crew {} cannot operate flight {}", member.id,
                                instance.flights[f].id));
    }
  }
  return out;
}

double pay_and_credit(Minutes fly_time, Minutes duty_span,
                      const CostParams& costs) {
  return std::max({static_cast<double>(fly_time),
                   costs.duty_time_ratio * duty_span, costs.pay_credit_min});
}

double pay_and_credit(const Pairing& pairing, const CostParams& costs) {
  return pay_and_credit(pairing.fly_time, pairing.duty_span, costs);
}

double penalty_term(double observed, double threshold, double cap,
                    double slope) {
  return std::max(0.0, cap - slope * std::abs(observed - threshold));
}

PenaltyEvaluation evaluate_penalty(const Instance& instance,
                                   const Pairing& pairing) {
  PenaltyEvaluation e;
  if (pairing.empty()) return e;
  const DutyRules& rules = instance.rules;
  const CostParams& costs = instance.costs;
  const int n = static_cast<int>(pairing.legs.size());
  e.observed = {static_cast<double>(pairing.fly_time),
                static_cast<double>(pairing.duty_span),
                static_cast<double>(pairing.min_sit),
                static_cast<double>(rest_time(instance, pairing))};
  e.threshold = {static_cast<double>(rules.max_fly(n)),
                 static_cast<double>(rules.max_duty(n)),
                 static_cast<double>(rules.min_sit),
                 static_cast<double>(rules.min_rest)};
  for (int i = 0; i < 4; ++i) {
    // A single-leg pairing has no connection to be fragile.
    if (i == 2 && pairing.min_sit == kNoConnection) continue;
    e.contribution[i] = penalty_term(e.observed[i], e.threshold[i],
                                     costs.penalty_caps[i],
                                     costs.penalty_slopes[i]);
  }
  return e;
}

double transport_cost(const Instance& instance, const Pairing& pairing) {
  const CrewMember& member = instance.crew[pairing.crew];
  if (pairing.empty() || member.is_reserve()) return 0.0;
  double tc = 0.0;
  if (pairing.start_base != member.home_base) tc += instance.costs.transport_cost;
  if (pairing.end_base != member.home_base) tc += instance.costs.transport_cost;
  return tc;
}

double PairingCostBreakdown::total() const {
  return std::max(pay_credit + transport + penalty - original, 0.0) + retime +
         alter + reserve_fee;
}

bool published_duty_broken(const Instance& instance, int crew) {
  const CrewMember& member = instance.crew[crew];
  if (!member.original_pairing) return false;
  return std::ranges::any_of(*member.original_pairing, [&](int c) {
    return std::ranges::find(member.unavailable_flights, instance.copies[c].flight) !=
           member.unavailable_flights.end();
  });
}

double idle_cost(const Instance& instance, int crew) {
  const CrewMember& member = instance.crew[crew];
  if (member.is_reserve() || !member.original_pairing ||
      member.original_pairing->empty() || published_duty_broken(instance, crew)) {
    return 0.0;
  }
  return instance.costs.alter_cost;
}

double original_cost(const Instance& instance, int crew, CostModel model) {
  const CrewMember& member = instance.crew[crew];
  if (!member.original_pairing || member.original_pairing->empty()) {
    return member.original_pairing_cost;
  }
  const Pairing p = make_pairing(instance, crew, *member.original_pairing);
  double c = pay_and_credit(p, instance.costs) + transport_cost(instance, p);
  if (model == CostModel::kReliable) c += penalty(instance, p);
  return c;
}

PairingCostBreakdown pairing_cost(const Instance& instance,
                                  const Pairing& pairing, double original,
                                  CostModel model) {
  const CrewMember& member = instance.crew[pairing.crew];
  PairingCostBreakdown b;
  b.original = original;
  b.pay_credit = pay_and_credit(pairing, instance.costs);
  b.transport = transport_cost(instance, pairing);
  if (model == CostModel::kReliable) b.penalty = penalty(instance, pairing);
  for (int c : pairing.retimed_legs) b.retime += instance.flight_of(c).retime_cost;
  if (!member.is_reserve() && pairing.altered) b.alter = instance.costs.alter_cost;
  if (model == CostModel::kTraditional && member.in_standby_pool() &&
      !pairing.empty()) {
    b.reserve_fee = instance.costs.tcrp_reserve_cost;
  }
  return b;
}

}  // namespace crewrec
