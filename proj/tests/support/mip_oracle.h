// Brute-force optimum of the integer recovery model: every combination of at
// most one legal pairing per crew member, with the cheapest consistent
// cancellation, deadhead and reserve-schedule completion.

#ifndef CREWREC_TESTS_SUPPORT_MIP_ORACLE_H_
#define CREWREC_TESTS_SUPPORT_MIP_ORACLE_H_

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "crewrec/master.h"
#include "support/oracles.h"

namespace crewrec::testing {

struct OracleResult {
  double objective = std::numeric_limits<double>::infinity();
  // Chosen pairing per crew member; empty legs when idle.
  std::vector<std::vector<int>> legs;
  std::int64_t combinations = 0;
};

namespace detail {

// Cheapest cost of flights, deadheads and pair rows given how many crew
// members sit on each copy; +inf when no choice of operated copies obeys
// the incompatibility rows.
inline double flight_completion(const Instance& in,
                                const std::vector<int>& crews_on) {
  const int num_flights = static_cast<int>(in.flights.size());
  std::vector<std::vector<int>> options(num_flights);
  double fixed = 0.0;
  for (int f = 0; f < num_flights; ++f) {
    int total = 0;
    for (int c : in.copies_of(f)) {
      total += crews_on[c];
      fixed += crews_on[c] * in.copies[c].deadhead_cost;
    }
    if (total == 0) {
      fixed += in.flights[f].cancel_cost;
      continue;
    }
    if (total - 1 > in.effective_big_m()) return std::numeric_limits<double>::infinity();
    for (int c : in.copies_of(f)) {
      if (crews_on[c] > 0) options[f].push_back(c);
    }
  }
  // Choose the operated copy per flight; the others deadhead.
  std::vector<char> operated(in.copies.size(), 0);
  double best = std::numeric_limits<double>::infinity();
  std::function<void(int, double)> choose = [&](int f, double refund) {
    if (f == num_flights) {
      for (const IncompatiblePair& p : in.incompatible) {
        if (operated[p.copy_a] + operated[p.copy_b] > 1) return;
      }
      best = std::min(best, fixed - refund);
      return;
    }
    if (options[f].empty()) return choose(f + 1, refund);
    for (int c : options[f]) {
      operated[c] = 1;
      choose(f + 1, refund + in.copies[c].deadhead_cost);
      operated[c] = 0;
    }
  };
  choose(0, 0.0);
  return best;
}

}  // namespace detail

inline OracleResult solve_by_enumeration(const Instance& in,
                                         const MasterSetup& setup) {
  const int num_crew = static_cast<int>(in.crew.size());
  std::vector<std::vector<MasterColumn>> choices(num_crew);
  for (int k = 0; k < num_crew; ++k) {
    for (Pairing& p : all_pairings(in, k)) {
      const double c = pairing_cost(in, p, setup.model).total();
      choices[k].push_back({std::move(p), c});
    }
  }

  OracleResult out;
  std::vector<int> crews_on(in.copies.size(), 0);
  std::vector<int> pick(num_crew, -1);
  std::vector<int> called;  // pool reserves flying

  const auto reserve_cost = [&]() -> std::optional<double> {
    if (setup.model == CostModel::kTraditional) {
      if (static_cast<int>(called.size()) > setup.reserve_limit) return std::nullopt;
      return 0.0;
    }
    std::optional<double> best;
    if (called.empty()) best = 0.0;  // no schedule selected
    for (const ScheduleOption& o : setup.schedules) {
      const auto& m = o.schedule.members;
      const bool covers = std::ranges::all_of(called, [&](int k) {
        return std::ranges::find(m, k) != m.end();
      });
      if (covers && (!best || o.cost < *best)) best = o.cost;
    }
    return best;
  };

  std::function<void(int, double)> visit = [&](int k, double cost) {
    if (k == num_crew) {
      ++out.combinations;
      const auto r = reserve_cost();
      if (!r) return;
      const double total = cost + *r + detail::flight_completion(in, crews_on);
      if (total < out.objective) {
        out.objective = total;
        out.legs.assign(num_crew, {});
        for (int j = 0; j < num_crew; ++j) {
          if (pick[j] >= 0) out.legs[j] = choices[j][pick[j]].pairing.legs;
        }
      }
      return;
    }
    visit(k + 1, cost + idle_cost(in, k));
    const bool pool_reserve = in.crew[k].in_standby_pool();
    for (int i = 0; i < static_cast<int>(choices[k].size()); ++i) {
      const MasterColumn& col = choices[k][i];
      for (int c : col.pairing.legs) ++crews_on[c];
      if (pool_reserve) called.push_back(k);
      pick[k] = i;
      visit(k + 1, cost + col.cost);
      pick[k] = -1;
      if (pool_reserve) called.pop_back();
      for (int c : col.pairing.legs) --crews_on[c];
    }
  };
  visit(0, 0.0);
  return out;
}

}  // namespace crewrec::testing

#endif  // CREWREC_TESTS_SUPPORT_MIP_ORACLE_H_
