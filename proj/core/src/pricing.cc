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

#include "crewrec/pricing.h"

#include <algorithm>
#include <atomic>
#include <thread>

namespace crewrec {
namespace {

double at(const std::vector<double>& v, int i) {
  return i < static_cast<int>(v.size()) ? v[i] : 0.0;
}

// Linear reduced cost of every copy's flight arc.
std::vector<double> copy_costs(const Instance& instance,
                               const DualValues& duals, bool with_costs) {
  std::vector<double> cost(instance.copies.size());
  for (int c = 0; c < static_cast<int>(instance.copies.size()); ++c) {
    const FlightCopy& copy = instance.copies[c];
    const bool retimed = with_costs && !copy.is_original();
    cost[c] = (retimed ? instance.flights[copy.flight].retime_cost : 0.0) -
              at(duals.flight, copy.flight) + at(duals.copy, c);
  }
  for (int i = 0; i < static_cast<int>(instance.incompatible.size()); ++i) {
    const double g = at(duals.pair, i);
    cost[instance.incompatible[i].copy_a] -= g;
    cost[instance.incompatible[i].copy_b] -= g;
  }
  return cost;
}

bool is_forbidden(const BranchState& branch, int from_flight, int to_flight) {
  return std::ranges::find(branch.forbidden_follow_ons,
                           FollowOn{from_flight, to_flight}) !=
         branch.forbidden_follow_ons.end();
}

double follow_on_reward(const BranchState& branch, const DualValues& duals,
                        int from_flight, int to_flight) {
  double r = 0.0;
  for (int i = 0; i < static_cast<int>(branch.required_follow_ons.size()); ++i) {
    if (branch.required_follow_ons[i] == FollowOn{from_flight, to_flight}) {
      r += at(duals.follow_on, i);
    }
  }
  return r;
}

void add_copy_nodes(const Instance& instance, PulseGraph& g) {
  g.out.assign(2 + 2 * instance.copies.size(), {});
  g.source = kSourceNode;
  g.sink = kSinkNode;
}

// Flight arcs for `usable` copies and connection arcs between them.
void add_flight_and_connection_arcs(const Instance& instance,
                                    const std::vector<char>& usable,
                                    const std::vector<double>& cost,
                                    const BranchState& branch,
                                    const DualValues& duals, PulseGraph& g) {
  const int n = static_cast<int>(instance.copies.size());
  for (int c = 0; c < n; ++c) {
    if (!usable[c]) continue;
    g.add_arc(departure_node(c), {arrival_node(c), cost[c],
                                  instance.flight_of(c).duration(), c});
  }
  for (int c = 0; c < n; ++c) {
    if (!usable[c]) continue;
    const FlightCopy& from = instance.copies[c];
    const std::string& at_airport = instance.flight_of(c).destination;
    const Minutes ready = instance.copy_arrival(c) + instance.rules.min_sit;
    for (int d = 0; d < n; ++d) {
      if (!usable[d]) continue;
      const FlightCopy& to = instance.copies[d];
      if (to.flight == from.flight) continue;
      if (instance.flight_of(d).origin != at_airport) continue;
      if (instance.copy_departure(d) < ready) continue;
      if (is_forbidden(branch, from.flight, to.flight)) continue;
      g.add_arc(arrival_node(c),
                {departure_node(d),
                 -follow_on_reward(branch, duals, from.flight, to.flight), 0, -1});
    }
  }
}

bool contains(const std::vector<int>& v, int x) {
  return std::ranges::find(v, x) != v.end();
}

}  // namespace

DualValues DualValues::zero(const Instance& instance,
                            const BranchState& branch) {
  DualValues d;
  d.flight.assign(instance.flights.size(), 0.0);
  d.copy.assign(instance.copies.size(), 0.0);
  d.pair.assign(instance.incompatible.size(), 0.0);
  d.crew.assign(instance.crew.size(), 0.0);
  d.reserve.assign(instance.crew.size(), 0.0);
  d.follow_on.assign(branch.required_follow_ons.size(), 0.0);
  return d;
}

double arc_reduced_cost(const Instance& instance, int copy,
                        const DualValues& duals) {
  const FlightCopy& c = instance.copies[copy];
  double r = (c.is_original() ? 0.0 : instance.flights[c.flight].retime_cost) -
             at(duals.flight, c.flight) + at(duals.copy, copy);
  for (int i = 0; i < static_cast<int>(instance.incompatible.size()); ++i) {
    const IncompatiblePair& p = instance.incompatible[i];
    if (p.copy_a == copy || p.copy_b == copy) r -= at(duals.pair, i);
  }
  return r;
}

double seed_reduced_cost(const Instance& instance, int crew,
                         const DualValues& duals, CostModel model) {
  double r = -at(duals.crew, crew);
  if (instance.crew[crew].in_standby_pool()) {
    if (model == CostModel::kReliable) {
      r -= at(duals.reserve, crew);
    } else {
      r -= duals.reserve_limit;
    }
  }
  return r;
}

double pairing_reduced_cost(const Instance& instance, const Pairing& pairing,
                            double cost, const DualValues& duals,
                            const BranchState& branch, CostModel model) {
  double r = cost + seed_reduced_cost(instance, pairing.crew, duals, model);
  for (int c : pairing.legs) {
    const FlightCopy& copy = instance.copies[c];
    r -= at(duals.flight, copy.flight);
    r += at(duals.copy, c);
  }
  for (int i = 0; i < static_cast<int>(instance.incompatible.size()); ++i) {
    const IncompatiblePair& p = instance.incompatible[i];
    const auto uses = [&](int c) {
      return static_cast<int>(std::ranges::count(pairing.legs, c));
    };
    r -= at(duals.pair, i) * (uses(p.copy_a) + uses(p.copy_b));
  }
  for (std::size_t i = 1; i < pairing.legs.size(); ++i) {
    r -= follow_on_reward(branch, duals, instance.copies[pairing.legs[i - 1]].flight,
                          instance.copies[pairing.legs[i]].flight);
  }
  return r;
}

PulseGraph build_family_graph(const Instance& instance,
                              const BranchState& branch,
                              const DualValues& duals, bool with_costs) {
  PulseGraph g;
  add_copy_nodes(instance, g);
  const std::vector<char> usable(instance.copies.size(), 1);
  add_flight_and_connection_arcs(instance, usable,
                                 copy_costs(instance, duals, with_costs),
                                 branch, duals, g);
  for (int c = 0; c < static_cast<int>(instance.copies.size()); ++c) {
    g.add_arc(kSourceNode, {departure_node(c), 0.0, 0, -1});
    g.add_arc(arrival_node(c), {kSinkNode, 0.0, 0, -1});
  }
  g.add_arc(kSourceNode, {kSinkNode, 0.0, 0, -1});
  return g;
}

PulseGraph build_crew_graph(const Instance& instance, int crew,
                            const BranchState& branch,
                            const DualValues& duals, bool with_costs) {
  const CrewMember& member = instance.crew[crew];
  const DutyRules& rules = instance.rules;
  PulseGraph g;
  add_copy_nodes(instance, g);
  const int n = static_cast<int>(instance.copies.size());

  std::vector<char> usable(n, 0);
  for (int c = 0; c < n; ++c) {
    const Minutes dep = instance.copy_departure(c);
    if (contains(member.unavailable_flights, instance.copies[c].flight)) continue;
    if (member.standby_shift) {
      const ReserveShift& s = instance.shifts[*member.standby_shift];
      if (dep < s.start || dep > s.end) continue;
    }
    usable[c] = 1;
  }
  add_flight_and_connection_arcs(instance, usable,
                                 copy_costs(instance, duals, with_costs),
                                 branch, duals, g);

  std::optional<Minutes> published_start;
  if (member.original_pairing && !member.original_pairing->empty()) {
    published_start = make_pairing(instance, crew, *member.original_pairing).duty_start;
  }
  for (int c = 0; c < n; ++c) {
    if (!usable[c]) continue;
    const FlightLeg& f = instance.flight_of(c);
    if (const auto out = instance.travel_time(member.home_base, f.origin)) {
      const Minutes start = instance.copy_departure(c) - *out;
      const bool early_ok =
          !published_start || start >= *published_start - rules.max_earlier_start;
      if (start >= member.earliest_start && early_ok) {
        g.add_arc(kSourceNode, {departure_node(c), 0.0, 0, -1});
      }
    }
    if (const auto back = instance.travel_time(f.destination, member.home_base)) {
      if (instance.copy_arrival(c) + *back <= member.latest_end) {
        g.add_arc(arrival_node(c), {kSinkNode, 0.0, 0, -1});
      }
    }
  }
  g.add_arc(kSourceNode, {kSinkNode, 0.0, 0, -1});
  return g;
}

std::optional<PricedColumn> price_crew(const Instance& instance, int crew,
                                       const DualValues& duals,
                                       const BranchState& branch,
                                       const PricingOptions& options,
                                       const BoundMatrix* bounds,
                                       std::int64_t* pulses) {
  if (contains(branch.fixed_crew, crew)) return std::nullopt;
  const CrewMember& member = instance.crew[crew];
  const DutyRules& rules = instance.rules;
  const bool with_costs = !options.feasibility_only;
  const PulseGraph g = build_crew_graph(instance, crew, branch, duals, with_costs);
  const double original = original_cost(instance, crew, options.model);
  const Minutes fly_cap = std::max(rules.max_fly_long, rules.max_fly_short);

  PulseHooks hooks;
  // Limits a partial duty can still satisfy once more legs are added.
  hooks.extend_ok = [&](const PulsePath& path) {
    if (!is_arrival_node(path.nodes.back()) || path.tags.empty()) return true;
    const int legs = static_cast<int>(path.tags.size());
    const bool long_now = rules.is_long(legs);
    const Minutes fly_limit =
        long_now ? rules.max_fly_long : std::max(rules.max_fly_long, rules.max_fly_short);
    const Minutes duty_limit =
        long_now ? rules.max_duty_long
                 : std::max(rules.max_duty_long, rules.max_duty_short);
    if (path.fly > fly_limit) return false;
    const int first = path.tags.front();
    const Minutes start =
        instance.copy_departure(first) -
        instance.travel_time(member.home_base, instance.flight_of(first).origin).value_or(0);
    return instance.copy_arrival(path.tags.back()) - start <= duty_limit;
  };
  hooks.complete = [&](const PulsePath& path) -> std::optional<double> {
    if (path.tags.empty()) return std::nullopt;
    for (const ForbiddenPairing& f : branch.forbidden_pairings) {
      if (f.crew == crew && f.legs == path.tags) return std::nullopt;
    }
    const Pairing p = make_pairing(instance, crew, path.tags);
    if (!is_legal(instance, p)) return std::nullopt;
    if (!with_costs) return 0.0;
    const PairingCostBreakdown b = pairing_cost(instance, p, original, options.model);
    return b.total() - b.retime;
  };

  const PulseResult res =
      pulse(g, options.use_bounds ? bounds : nullptr, -options.tolerance, fly_cap,
            hooks, seed_reduced_cost(instance, crew, duals, options.model));
  if (pulses) *pulses += res.pulses;
  if (!res.best) return std::nullopt;
  PricedColumn col;
  col.pairing = make_pairing(instance, crew, res.best->tags);
  col.cost = pairing_cost(instance, col.pairing, original, options.model).total();
  col.reduced_cost = res.best->cost;
  return col;
}

PricingResult price_all(const Instance& instance, const DualValues& duals,
                        const BranchState& branch,
                        const PricingOptions& options) {
  const DutyRules& rules = instance.rules;
  std::optional<BoundMatrix> bounds;
  if (options.use_bounds) {
    bounds = compute_bounds(build_family_graph(instance, branch, duals,
                                               !options.feasibility_only),
                            std::max(rules.max_fly_long, rules.max_fly_short),
                            options.bound_step);
  }
  const int num_crew = static_cast<int>(instance.crew.size());
  std::vector<std::optional<PricedColumn>> found(num_crew);
  std::vector<std::int64_t> pulses(num_crew, 0);
  auto work = [&](int k) {
    found[k] = price_crew(instance, k, duals, branch, options,
                          bounds ? &*bounds : nullptr, &pulses[k]);
  };
  const int workers = std::clamp(options.workers, 1, std::max(1, num_crew));
  if (workers == 1) {
    for (int k = 0; k < num_crew; ++k) work(k);
  } else {
    std::atomic<int> next{0};
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int k = next++; k < num_crew; k = next++) work(k);
      });
    }
  }
  PricingResult result;
  for (int k = 0; k < num_crew; ++k) {
    result.pulses += pulses[k];
    if (found[k]) result.columns.push_back(std::move(*found[k]));
  }
  return result;
}

}  // namespace crewrec
