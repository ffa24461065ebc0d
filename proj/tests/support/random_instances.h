// Small random recovery instances for oracle comparisons: round trips from
// two ground-linked bases, a few regular crew with published pairings, some
// of whom can no longer fly one of their legs, and standby reserves.

#ifndef CREWREC_TESTS_SUPPORT_RANDOM_INSTANCES_H_
#define CREWREC_TESTS_SUPPORT_RANDOM_INSTANCES_H_

#include <random>
#include <vector>

#include "crewrec/master.h"
#include "crewrec/reserve_eval.h"
#include "support/fixtures.h"

namespace crewrec::testing {

struct SmallCase {
  Instance instance;
  std::vector<ScheduleOption> schedules;
  int reserve_limit = 0;
};

inline SmallCase random_small_case(std::mt19937_64& rng) {
  auto uniform = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  SmallCase out;
  Instance& in = out.instance;
  in.airports = {"AMS", "RTM", "LHR", "CDG"};
  in.travel_times = {{0, 60, -1, -1}, {60, 0, -1, -1}, {-1, -1, 0, -1}, {-1, -1, -1, 0}};
  const char* bases[] = {"AMS", "RTM"};
  const char* outstations[] = {"LHR", "CDG"};

  const int trips = uniform(1, 3);
  std::vector<std::string> trip_base;
  for (int t = 0; t < trips; ++t) {
    const std::string base = bases[uniform(0, 1)];
    const std::string away = outstations[uniform(0, 1)];
    // Later trips tend to leave around when the previous one returns, so
    // re-timing by a copy interval can make or break a connection.
    const Minutes dep = t == 0 || uniform(0, 2) == 0
                            ? 360 + 15 * uniform(0, 32)
                            : in.flights.back().arrival + 15 * uniform(0, 4);
    const Minutes block = 50 + 5 * uniform(0, 10);
    const Minutes turn = 30 + 5 * uniform(0, 12);
    const std::string tail = "PH-" + std::to_string(t);
    in.flights.push_back(leg("T" + std::to_string(t) + "o", base, away, dep, dep + block, tail));
    in.flights.push_back(leg("T" + std::to_string(t) + "i", away, base,
                             dep + block + turn, dep + 2 * block + turn, tail));
    trip_base.push_back(base);
  }
  // Cheap cancellations make the trade-offs with penalties and reserves real.
  for (FlightLeg& f : in.flights) {
    f.cancel_cost = 200.0 + 100.0 * uniform(0, 20);
    f.retime_cost = 50.0 * uniform(1, 12);
  }
  const int copies = uniform(0, 1) == 0 ? 1 : 3;
  in.copies = generate_copies(in.flights, copies, 15, in.costs);
  const std::array rules = {same_aircraft_rule(30)};
  in.incompatible = build_incompatibilities(in, rules);

  const int regulars = uniform(1, 3);
  for (int k = 0; k < regulars; ++k) {
    in.crew.push_back(regular("K" + std::to_string(k), bases[uniform(0, 1)], 300, 1260));
  }
  // Publish each trip with a crew member of that base who can still take it.
  for (int t = 0; t < trips; ++t) {
    for (int k = 0; k < regulars; ++k) {
      CrewMember& member = in.crew[k];
      if (member.home_base != trip_base[t]) continue;
      std::vector<int> legs = member.original_pairing.value_or(std::vector<int>{});
      legs.push_back(in.copies_of(2 * t)[0]);
      legs.push_back(in.copies_of(2 * t + 1)[0]);
      std::ranges::sort(legs, {}, [&](int c) { return in.copy_departure(c); });
      if (!is_legal(in, make_pairing(in, k, legs))) continue;
      member.original_pairing = legs;
      break;
    }
  }
  for (CrewMember& member : in.crew) {
    if (member.original_pairing && uniform(0, 1) == 1) {
      const auto& legs = *member.original_pairing;
      member.unavailable_flights = {
          in.copies[legs[uniform(0, static_cast<int>(legs.size()) - 1)]].flight};
    }
  }

  const int shifts = uniform(1, 2);
  in.shifts.push_back(ReserveShift{"S0", 360, 780});
  if (shifts == 2) in.shifts.push_back(ReserveShift{"S1", 600, 1080});
  const int reserves = uniform(1, 4 - regulars > 2 ? 2 : 4 - regulars);
  std::vector<PoolMember> pool;
  for (int r = 0; r < reserves; ++r) {
    const int shift = uniform(0, shifts - 1);
    pool.push_back({static_cast<int>(in.crew.size()), shift});
    in.crew.push_back(reserve("R" + std::to_string(r), "AMS", shift, 300, 1260));
  }

  for (ReserveSchedule& s : enumerate_schedules(pool, shifts, 1000)) {
    const double cost = s.members.empty() ? 0.0 : 40.0 * uniform(0, 15);
    out.schedules.push_back(ScheduleOption{std::move(s), 0.0, cost});
  }
  out.reserve_limit = uniform(0, reserves);
  return out;
}

}  // namespace crewrec::testing

#endif  // CREWREC_TESTS_SUPPORT_RANDOM_INSTANCES_H_
