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

#include "crewrec/pulse.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace crewrec {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

int PulseGraph::add_node() {
  out.emplace_back();
  return num_nodes() - 1;
}

void PulseGraph::add_arc(int tail, PulseArc arc) {
  if (tail < 0 || tail >= num_nodes() || arc.head < 0 ||
      arc.head >= num_nodes()) {
    throw std::out_of_range("arc endpoint out of range");
  }
  out[tail].push_back(arc);
}

std::vector<int> PulseGraph::topological_order() const {
  std::vector<int> indeg(num_nodes(), 0);
  for (const auto& arcs : out) {
    for (const PulseArc& a : arcs) ++indeg[a.head];
  }
  std::vector<int> order;
  order.reserve(num_nodes());
  for (int v = 0; v < num_nodes(); ++v) {
    if (indeg[v] == 0) order.push_back(v);
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const PulseArc& a : out[order[i]]) {
      if (--indeg[a.head] == 0) order.push_back(a.head);
    }
  }
  if (static_cast<int>(order.size()) != num_nodes()) {
    throw std::invalid_argument("pulse graph has a cycle");
  }
  return order;
}

double BoundMatrix::lookup(int node, Minutes consumed) const {
  if (grid.empty() || consumed > grid.front()) return kInf;
  // Grid is descending; the first value <= consumed is the row to use.
  const auto it = std::find_if(grid.begin(), grid.end(),
                               [consumed](Minutes g) { return g <= consumed; });
  return rows[it - grid.begin()][node];
}

BoundMatrix compute_bounds(const PulseGraph& graph, Minutes fly_cap,
                           Minutes step) {
  if (step <= 0) throw std::invalid_argument("bound step must be positive");
  if (fly_cap < 0) throw std::invalid_argument("fly cap must be nonnegative");
  BoundMatrix b;
  for (Minutes tau = fly_cap; tau >= 0; tau -= step) b.grid.push_back(tau);
  if (b.grid.back() != 0) b.grid.push_back(0);

  std::vector<int> order = graph.topological_order();
  std::reverse(order.begin(), order.end());
  b.rows.assign(b.grid.size(), std::vector<double>(graph.num_nodes(), kInf));
  // Rows for larger consumption are filled first; an arc from row tau reads
  // the row of tau + fly rounded down, which is either an earlier row or the
  // current row at a node later in topological order.
  for (std::size_t r = 0; r < b.grid.size(); ++r) {
    const Minutes tau = b.grid[r];
    std::vector<double>& row = b.rows[r];
    for (int v : order) {
      if (v == graph.sink) {
        row[v] = 0.0;
        continue;
      }
      double best = kInf;
      for (const PulseArc& a : graph.out[v]) {
        const Minutes next = tau + a.fly;
        if (next > fly_cap) continue;
        const double tail = b.lookup(a.head, next);
        best = std::min(best, a.cost + tail);
      }
      row[v] = best;
    }
  }
  return b;
}

namespace {

class Pulser {
 public:
  Pulser(const PulseGraph& graph, const BoundMatrix* bounds, double incumbent,
         Minutes fly_cap, const PulseHooks& hooks)
      : g_(graph), bounds_(bounds), best_cost_(incumbent), cap_(fly_cap),
        hooks_(hooks), sorted_(graph.num_nodes()) {
    for (int v = 0; v < g_.num_nodes(); ++v) {
      auto& idx = sorted_[v];
      idx.resize(g_.out[v].size());
      std::iota(idx.begin(), idx.end(), 0);
      std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return g_.out[v][a].cost < g_.out[v][b].cost;
      });
    }
  }

  PulseResult run(double start_cost) {
    path_.nodes = {g_.source};
    path_.cost = start_cost;
    visit(g_.source);
    return {std::move(best_), pulses_};
  }

 private:
  void visit(int v) {
    ++pulses_;
    if (v == g_.sink) {
      double extra = 0.0;
      if (hooks_.complete) {
        const auto e = hooks_.complete(path_);
        if (!e) return;
        extra = *e;
      }
      const double total = path_.cost + extra;
      if (total < best_cost_) {
        best_cost_ = total;
        best_ = path_;
        best_->cost = total;
      }
      return;
    }
    if (bounds_ && path_.cost + bounds_->lookup(v, path_.fly) >= best_cost_) {
      return;
    }
    for (int i : sorted_[v]) {
      const PulseArc& a = g_.out[v][i];
      if (path_.fly + a.fly > cap_) continue;
      const double cost_before = path_.cost;
      path_.nodes.push_back(a.head);
      if (a.tag >= 0) path_.tags.push_back(a.tag);
      path_.cost += a.cost;
      path_.fly += a.fly;
      if (!hooks_.extend_ok || hooks_.extend_ok(path_)) visit(a.head);
      path_.fly -= a.fly;
      path_.cost = cost_before;
      if (a.tag >= 0) path_.tags.pop_back();
      path_.nodes.pop_back();
    }
  }

  const PulseGraph& g_;
  const BoundMatrix* bounds_;
  double best_cost_;
  Minutes cap_;
  const PulseHooks& hooks_;
  std::vector<std::vector<int>> sorted_;
  PulsePath path_;
  std::optional<PulsePath> best_;
  std::int64_t pulses_ = 0;
};

}  // namespace

PulseResult pulse(const PulseGraph& graph, const BoundMatrix* bounds,
                  double incumbent, Minutes fly_cap, const PulseHooks& hooks,
                  double start_cost) {
  if (graph.source < 0 || graph.source >= graph.num_nodes() ||
      graph.sink < 0 || graph.sink >= graph.num_nodes()) {
    throw std::invalid_argument("pulse graph lacks a source or sink");
  }
  Pulser p(graph, bounds, incumbent, fly_cap, hooks);
  return p.run(start_cost);
}

}  // namespace crewrec
