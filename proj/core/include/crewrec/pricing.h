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

// Column generation pricing: per-crew pairing graphs and the search for the
// pairing of most negative reduced cost.
//
// Graph nodes: 0 is the source, 1 the sink, and every flight copy c owns a
// departure node 2 + 2c and an arrival node 3 + 2c joined by its flight arc.

#ifndef CREWREC_PRICING_H_
#define CREWREC_PRICING_H_

#include <compare>
#include <vector>

#include "crewrec/instance.h"
#include "crewrec/pairing_cost.h"
#include "crewrec/pulse.h"

namespace crewrec {

// Flight `to` immediately following flight `from` in one pairing.
struct FollowOn {
  int from = -1;
  int to = -1;

  friend bool operator==(const FollowOn&, const FollowOn&) = default;
  friend auto operator<=>(const FollowOn&, const FollowOn&) = default;
};

struct ForbiddenPairing {
  int crew = -1;
  std::vector<int> legs;
};

// Branching decisions that shape the pricing graphs.
struct BranchState {
  std::vector<FollowOn> forbidden_follow_ons;
  // Each required follow-on adds a row "pairings using it >= 1"; its dual
  // rewards the matching connection arcs.
  std::vector<FollowOn> required_follow_ons;
  std::vector<ForbiddenPairing> forbidden_pairings;
  // Crew members whose pairing is fixed; they are not priced.
  std::vector<int> fixed_crew;
};

// Duals of the restricted master, one entry per row of each family. Rows
// that do not exist (e.g. the reserve row of a regular crew member) are 0.
struct DualValues {
  std::vector<double> flight;       // cover rows, free
  std::vector<double> copy;         // deadhead rows, <= 0
  std::vector<double> pair;         // incompatibility rows, <= 0
  std::vector<double> crew;         // one pairing per crew, <= 0
  std::vector<double> reserve;      // schedule consistency, <= 0
  double reserve_limit = 0.0;       // traditional model reserve cap, <= 0
  std::vector<double> follow_on;    // required follow-ons, >= 0

  static DualValues zero(const Instance& instance, const BranchState& branch);
};

inline constexpr int kSourceNode = 0;
inline constexpr int kSinkNode = 1;
inline int departure_node(int copy) { return 2 + 2 * copy; }
inline int arrival_node(int copy) { return 3 + 2 * copy; }
inline bool is_arrival_node(int node) { return node >= 2 && node % 2 == 1; }
inline int copy_of_node(int node) { return (node - 2) / 2; }

// Reduced-cost contribution of flying copy `copy`: its re-timing cost minus
// the duals of every row the copy appears in.
double arc_reduced_cost(const Instance& instance, int copy,
                        const DualValues& duals);

// Constant part of a crew member's reduced cost.
double seed_reduced_cost(const Instance& instance, int crew,
                         const DualValues& duals, CostModel model);

// Reduced cost of an explicit pairing with cost `cost`, recomputed row by row.
double pairing_reduced_cost(const Instance& instance, const Pairing& pairing,
                            double cost, const DualValues& duals,
                            const BranchState& branch, CostModel model);

// Crew-independent graph over all copies; any departure may start the duty
// and any arrival may end it.
// With `with_costs` false the pairing costs count as zero, as when pricing
// for feasibility.
PulseGraph build_family_graph(const Instance& instance,
                              const BranchState& branch,
                              const DualValues& duals, bool with_costs = true);

// Pricing graph of one crew member: copies the member may fly, the source
// and sink arcs its duty window and ground links allow, and a stay-home arc.
PulseGraph build_crew_graph(const Instance& instance, int crew,
                            const BranchState& branch, const DualValues& duals,
                            bool with_costs = true);

struct PricingOptions {
  CostModel model = CostModel::kReliable;
  Minutes bound_step = 60;
  double tolerance = 1e-6;
  int workers = 1;
  bool use_bounds = true;
  // Price every pairing at zero cost, leaving only the duals. Used to
  // restore feasibility of a master whose branching rows cannot be met.
  bool feasibility_only = false;
};

struct PricedColumn {
  Pairing pairing;
  double cost = 0.0;
  double reduced_cost = 0.0;
};

struct PricingResult {
  std::vector<PricedColumn> columns;
  std::int64_t pulses = 0;
};

// Cheapest pairing of one crew member, if its reduced cost is below
// -tolerance.
std::optional<PricedColumn> price_crew(const Instance& instance, int crew,
                                       const DualValues& duals,
                                       const BranchState& branch,
                                       const PricingOptions& options,
                                       const BoundMatrix* bounds,
                                       std::int64_t* pulses = nullptr);

// One column per crew member with a negative reduced cost, in crew order.
PricingResult price_all(const Instance& instance, const DualValues& duals,
                        const BranchState& branch,
                        const PricingOptions& options);

}  // namespace crewrec

#endif  // CREWREC_PRICING_H_
