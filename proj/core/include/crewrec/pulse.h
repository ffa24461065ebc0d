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

// Depth-first resource-constrained shortest path search ("pulse") over an
// acyclic graph, pruned with precomputed completion bounds indexed by the
// flying time already consumed.

#ifndef CREWREC_PULSE_H_
#define CREWREC_PULSE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "crewrec/instance.h"

namespace crewrec {

struct PulseArc {
  int head = -1;
  double cost = 0.0;
  Minutes fly = 0;
  // Flight copy flown along the arc, or -1 for ground and connection arcs.
  int tag = -1;
};

struct PulseGraph {
  std::vector<std::vector<PulseArc>> out;
  int source = 0;
  int sink = 1;

  int num_nodes() const { return static_cast<int>(out.size()); }
  int add_node();
  void add_arc(int tail, PulseArc arc);
  // Throws std::invalid_argument if the graph has a cycle.
  std::vector<int> topological_order() const;
};

// b(v, tau): lower bound on the cost of any path from v to the sink when
// tau minutes of flying are already consumed. Rows follow the grid
// cap, cap - step, ..., down to 0.
struct BoundMatrix {
  std::vector<Minutes> grid;
  std::vector<std::vector<double>> rows;

  // Largest grid row with tau <= consumed; +inf beyond the cap.
  double lookup(int node, Minutes consumed) const;
  Minutes cap() const { return grid.empty() ? 0 : grid.front(); }
};

// Bounds over `graph` ignoring every resource except flying time.
// Unreachable entries are +inf.
BoundMatrix compute_bounds(const PulseGraph& graph, Minutes fly_cap,
                           Minutes step);

struct PulsePath {
  std::vector<int> nodes;
  std::vector<int> tags;
  double cost = 0.0;
  Minutes fly = 0;
};

struct PulseHooks {
  // Called after each extension; false discards the partial path.
  std::function<bool(const PulsePath&)> extend_ok;
  // Called on reaching the sink; returns the extra nonnegative cost of the
  // complete path, or nullopt to reject it.
  std::function<std::optional<double>(const PulsePath&)> complete;
};

struct PulseResult {
  std::optional<PulsePath> best;
  std::int64_t pulses = 0;
};

// Finds the cheapest source-sink path strictly below `incumbent` whose total
// flying stays within `fly_cap`. `start_cost` seeds the path cost. With
// `bounds` null no bound pruning is done.
PulseResult pulse(const PulseGraph& graph, const BoundMatrix* bounds,
                  double incumbent, Minutes fly_cap, const PulseHooks& hooks = {},
                  double start_cost = 0.0);

}  // namespace crewrec

#endif  // CREWREC_PULSE_H_
