// Brute-force references used to check the optimizing code paths.

#ifndef CREWREC_TESTS_SUPPORT_ORACLES_H_
#define CREWREC_TESTS_SUPPORT_ORACLES_H_

#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "crewrec/instance.h"
#include "crewrec/pairing_cost.h"
#include "crewrec/pulse.h"

namespace crewrec::testing {

// Cheapest source-sink path with total flying <= cap, by full enumeration.
inline std::optional<double> cheapest_path(const PulseGraph& g, Minutes cap) {
  std::optional<double> best;
  std::function<void(int, double, Minutes)> dfs = [&](int v, double cost,
                                                      Minutes fly) {
    if (v == g.sink) {
      if (!best || cost < *best) best = cost;
      return;
    }
    for (const PulseArc& a : g.out[v]) {
      if (fly + a.fly <= cap) dfs(a.head, cost + a.cost, fly + a.fly);
    }
  };
  dfs(g.source, 0.0, 0);
  return best;
}

// Random DAG on `n` nodes (source 0, sink n-1) with integer arc costs.
inline PulseGraph random_dag(std::mt19937_64& rng, int n) {
  PulseGraph g;
  for (int i = 0; i < n; ++i) g.add_node();
  g.source = 0;
  g.sink = n - 1;
  std::uniform_int_distribution<int> cost(-10, 10);
  std::uniform_int_distribution<int> fly(0, 6);
  std::bernoulli_distribution keep(0.35);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (keep(rng)) g.add_arc(u, {v, double(cost(rng)), fly(rng) * 30, -1});
    }
  }
  return g;
}

// Every legal nonempty pairing of crew member `crew`, in lexicographic
// order of copy indices.
inline std::vector<Pairing> all_pairings(const Instance& in, int crew,
                                         int max_legs = 6) {
  std::vector<Pairing> out;
  const int n = static_cast<int>(in.copies.size());
  std::vector<int> legs;
  std::function<void()> dfs = [&] {
    if (!legs.empty()) {
      Pairing p = make_pairing(in, crew, legs);
      if (is_legal(in, p)) out.push_back(std::move(p));
      if (static_cast<int>(legs.size()) >= max_legs) return;
    }
    for (int c = 0; c < n; ++c) {
      if (!legs.empty()) {
        const int last = legs.back();
        if (in.copies[c].flight == in.copies[last].flight) continue;
        if (in.flight_of(c).origin != in.flight_of(last).destination) continue;
        if (in.copy_departure(c) < in.copy_arrival(last) + in.rules.min_sit) continue;
      }
      legs.push_back(c);
      dfs();
      legs.pop_back();
    }
  };
  dfs();
  return out;
}

}  // namespace crewrec::testing

#endif  // CREWREC_TESTS_SUPPORT_ORACLES_H_
