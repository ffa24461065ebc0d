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

#include "crewrec/synthetic.h"

#include <algorithm>
#include <array>
#include <fmt/format.h>
#include <stdexcept>

#include "crewrec/pairing_cost.h"
#include "crewrec/rng.h"

namespace crewrec {
namespace {

constexpr std::array kOutstations = {"LHR", "CDG", "FRA", "BCN", "CPH", "ZRH"};

// Shift windows by shift count; later shifts start and end later. They
// overlap widely, so that most duties can be flown from more than one shift.
std::vector<ReserveShift> staggered_shifts(int count) {
  switch (count) {
    case 1: return {{"day", 300, 1380}};
    case 2: return {{"early", 300, 1020}, {"late", 600, 1380}};
    case 3: return {{"early", 300, 900}, {"mid", 480, 1140}, {"late", 720, 1380}};
  }
  throw std::invalid_argument("synthetic instances support one to three shifts");
}

}  // namespace

Instance make_synthetic_instance(const SyntheticConfig& config) {
  if (config.aircraft <= 0 || config.round_trips_per_aircraft <= 0) {
    throw std::invalid_argument("aircraft and round trips must be positive");
  }
  const CounterRng rng(config.seed);
  std::uint64_t draw = 0;
  // Integer in [lo, hi] in steps of `step`.
  auto pick = [&](int lo, int hi, int step = 1) {
    const auto n = static_cast<std::uint64_t>((hi - lo) / step + 1);
    return lo + step * static_cast<int>(rng.bits({draw++}) % n);
  };

  Instance in;
  in.airports.push_back("AMS");
  for (const char* a : kOutstations) in.airports.push_back(a);
  const std::size_t n = in.airports.size();
  in.travel_times.assign(n, std::vector<Minutes>(n, -1));
  for (std::size_t i = 0; i < n; ++i) in.travel_times[i][i] = 0;
  in.shifts = staggered_shifts(static_cast<int>(config.reserves_per_shift.size()));

  // Flights of each round trip, in flying order.
  std::vector<std::vector<int>> trips;
  std::vector<int> trip_aircraft;
  for (int a = 0; a < config.aircraft; ++a) {
    const std::string tail = fmt::format("PH-{:c}", static_cast<char>('A' + a));
    Minutes t = 360 + pick(0, 360, 15);
    for (int r = 0; r < config.round_trips_per_aircraft; ++r) {
      const std::string away = kOutstations[pick(0, kOutstations.size() - 1)];
      const Minutes block = pick(55, 120, 5);
      const Minutes turn = pick(35, 60, 5);
      const int out = static_cast<int>(in.flights.size());
      in.flights.push_back({fmt::format("{}{}o", tail.substr(3), r + 1), "AMS", away,
                            t, t + block, tail});
      t += block + turn;
      in.flights.push_back({fmt::format("{}{}i", tail.substr(3), r + 1), away, "AMS",
                            t, t + block, tail});
      t += block + pick(40, 90, 5);
      trips.push_back({out, out + 1});
      trip_aircraft.push_back(a);
    }
  }
  for (FlightLeg& f : in.flights) {
    if (f.departure > in.shifts.back().end) {
      throw std::invalid_argument("synthetic flight departs after the last shift");
    }
  }
  rebuild_copies(in, config.copies, config.copy_interval, config.min_turnaround);

  // Regular crew: either one member flies all trips of an aircraft, or each
  // trip gets its own member. Their availability hugs the published duty, as
  // for crew with other duties on adjacent days, so a lost leg usually takes
  // a reserve rather than a swap.
  int next_crew = 0;
  auto add_regular = [&](std::vector<int> flights) {
    CrewMember k;
    k.id = fmt::format("K{:02}", ++next_crew);
    k.home_base = "AMS";
    k.earliest_start = 0;
    k.latest_end = 1439;
    std::vector<int> legs;
    for (int f : flights) legs.push_back(in.original_copy(f));
    k.original_pairing = legs;
    in.crew.push_back(std::move(k));
    const int id = static_cast<int>(in.crew.size()) - 1;
    const Pairing duty = make_pairing(in, id, legs);
    in.crew[id].earliest_start = std::max<Minutes>(0, duty.duty_start - pick(30, 90, 15));
    in.crew[id].latest_end = std::min<Minutes>(1439, duty.duty_end + pick(30, 90, 15));
  };
  for (int a = 0; a < config.aircraft; ++a) {
    std::vector<int> all;
    std::vector<std::vector<int>> own;
    for (std::size_t t = 0; t < trips.size(); ++t) {
      if (trip_aircraft[t] != a) continue;
      all.insert(all.end(), trips[t].begin(), trips[t].end());
      own.push_back(trips[t]);
    }
    bool single = pick(0, 1) == 1;
    if (single) {
      add_regular(all);
      if (!is_legal(in, make_pairing(in, static_cast<int>(in.crew.size()) - 1,
                                     *in.crew.back().original_pairing))) {
        in.crew.pop_back();
        --next_crew;
        single = false;
      }
    }
    if (!single) {
      for (auto& t : own) add_regular(t);
    }
  }

  // Reserves in a seeded order, so that solvers indifferent between them
  // do not always favour the same shift.
  std::vector<int> reserve_shifts;
  for (std::size_t s = 0; s < config.reserves_per_shift.size(); ++s) {
    for (int i = 0; i < config.reserves_per_shift[s]; ++i) {
      reserve_shifts.push_back(static_cast<int>(s));
    }
  }
  for (std::size_t i = reserve_shifts.size(); i > 1; --i) {
    std::swap(reserve_shifts[i - 1], reserve_shifts[pick(0, static_cast<int>(i) - 1)]);
  }
  for (std::size_t i = 0; i < reserve_shifts.size(); ++i) {
    const ReserveShift& s = in.shifts[reserve_shifts[i]];
    CrewMember r;
    r.id = fmt::format("R{:02}", i + 1);
    r.kind = CrewKind::kReserve;
    r.home_base = "AMS";
    r.standby_shift = reserve_shifts[i];
    r.earliest_start = s.start;
    r.latest_end = std::min<Minutes>(s.end + 240, 1439);
    r.original_pairing = std::vector<int>{};
    // Standing by already earns the minimum guarantee.
    r.original_pairing_cost = in.costs.pay_credit_min;
    in.crew.push_back(std::move(r));
  }
  return in;
}

}  // namespace crewrec
