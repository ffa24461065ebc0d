// Small hand-built instances shared by the unit tests.

#ifndef CREWREC_TESTS_SUPPORT_FIXTURES_H_
#define CREWREC_TESTS_SUPPORT_FIXTURES_H_

#include <string>
#include <vector>

#include "crewrec/instance.h"

namespace crewrec::testing {

inline FlightLeg leg(std::string id, std::string from, std::string to,
                     Minutes dep, Minutes arr, std::string aircraft = "") {
  FlightLeg f;
  f.id = std::move(id);
  f.origin = std::move(from);
  f.destination = std::move(to);
  f.departure = dep;
  f.arrival = arr;
  f.aircraft_id = std::move(aircraft);
  return f;
}

inline CrewMember regular(std::string id, std::string base, Minutes from = 0,
                          Minutes to = 1440) {
  CrewMember k;
  k.id = std::move(id);
  k.home_base = std::move(base);
  k.earliest_start = from;
  k.latest_end = to;
  return k;
}

inline CrewMember reserve(std::string id, std::string base, int shift,
                          Minutes from = 0, Minutes to = 1440) {
  CrewMember k = regular(std::move(id), std::move(base), from, to);
  k.kind = CrewKind::kReserve;
  k.standby_shift = shift;
  return k;
}

// AMS <-> RTM with a 60 minute ground link; copies are originals only.
inline Instance two_airport_instance(std::vector<FlightLeg> flights) {
  Instance in;
  in.flights = std::move(flights);
  in.airports = {"AMS", "RTM"};
  in.travel_times = {{0, 60}, {60, 0}};
  in.copies = generate_copies(in.flights, 1, 5, in.costs);
  return in;
}

// Five-flight schedule, flights re-timed by five minutes either way, and a
// reserve at AMS available from 06:00 who must be home by 15:30.
inline Instance example_schedule() {
  Instance in;
  in.flights = {leg("F1", "AMS", "ALC", 395, 555), leg("F2", "ALC", "AMS", 590, 750),
                leg("F3", "RTM", "BCN", 420, 540), leg("F4", "BCN", "AMS", 570, 690),
                leg("F5", "AMS", "GRQ", 740, 785)};
  in.airports = {"AMS", "RTM", "GRQ", "ALC", "BCN"};
  in.travel_times = {{0, 60, 150, -1, -1},
                     {60, 0, 200, -1, -1},
                     {150, 200, 0, -1, -1},
                     {-1, -1, -1, 0, -1},
                     {-1, -1, -1, -1, 0}};
  in.copies = generate_copies(in.flights, 3, 5, in.costs);
  in.shifts = {ReserveShift{"early", 360, 900}};
  in.crew.push_back(reserve("R1", "AMS", 0, 360, 930));
  return in;
}

// Copy of `flight` shifted by `shift` minutes.
inline int copy_at(const Instance& in, int flight, Minutes shift) {
  for (int c : in.copies_of(flight)) {
    if (in.copies[c].departure_shift == shift) return c;
  }
  return -1;
}

}  // namespace crewrec::testing

#endif  // CREWREC_TESTS_SUPPORT_FIXTURES_H_
