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

#include "crewrec/branch_price.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>

namespace crewrec {
namespace {

double distance_to_integer(double v) { return std::abs(v - std::round(v)); }

// Sum of x over pairings flying flight `to` right after flight `from`.
std::map<FollowOn, double> follow_on_sums(const Instance& instance,
                                          const ColumnPool& pool,
                                          const FractionalView& view) {
  std::map<FollowOn, double> sums;
  for (const auto& [id, x] : view.pairings) {
    const auto& legs = pool[id].pairing.legs;
    for (std::size_t i = 1; i < legs.size(); ++i) {
      sums[{instance.copies[legs[i - 1]].flight, instance.copies[legs[i]].flight}] += x;
    }
  }
  return sums;
}

// Most fractional entry of `values`, lowest index on ties.
std::optional<BranchDecision> most_fractional(const std::vector<double>& values,
                                              BranchDecision::Kind kind,
                                              double tolerance) {
  std::optional<BranchDecision> best;
  for (int i = 0; i < static_cast<int>(values.size()); ++i) {
    const double d = distance_to_integer(values[i]);
    if (d <= tolerance) continue;
    if (!best || d > best->score) {
      best = BranchDecision{kind, i, {}, values[i], d};
    }
  }
  return best;
}

struct Node {
  NodeConstraints constraints;
  double bound = 0.0;
  std::int64_t id = 0;
  int depth = 0;
};

struct WorseBound {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

std::vector<Node> children(const Node& parent, const BranchDecision& d,
                           const ColumnPool& pool) {
  Node down = parent;
  Node up = parent;
  const double lo = std::floor(d.value);
  const double hi = std::ceil(d.value);
  switch (d.kind) {
    case BranchDecision::Kind::kCancel:
      down.constraints.cancel.push_back({d.index, RowSense::kLessEqual, lo});
      up.constraints.cancel.push_back({d.index, RowSense::kGreaterEqual, hi});
      break;
    case BranchDecision::Kind::kDeadhead:
      down.constraints.deadhead.push_back({d.index, RowSense::kLessEqual, lo});
      up.constraints.deadhead.push_back({d.index, RowSense::kGreaterEqual, hi});
      break;
    case BranchDecision::Kind::kSchedule:
      down.constraints.schedule.push_back({d.index, RowSense::kLessEqual, 0.0});
      up.constraints.schedule.push_back({d.index, RowSense::kGreaterEqual, 1.0});
      break;
    case BranchDecision::Kind::kFollowOn:
      down.constraints.pricing.forbidden_follow_ons.push_back(d.follow_on);
      up.constraints.pricing.required_follow_ons.push_back(d.follow_on);
      break;
    case BranchDecision::Kind::kPairing: {
      const Pairing& p = pool[d.index].pairing;
      down.constraints.pairing.push_back({d.index, RowSense::kLessEqual, 0.0});
      down.constraints.pricing.forbidden_pairings.push_back({p.crew, p.legs});
      up.constraints.pairing.push_back({d.index, RowSense::kGreaterEqual, 1.0});
      up.constraints.pricing.fixed_crew.push_back(p.crew);
      break;
    }
  }
  down.depth = up.depth = parent.depth + 1;
  return {std::move(down), std::move(up)};
}

MasterSolution extract_solution(const Instance& instance,
                                const MasterSetup& setup,
                                const ColumnPool& pool,
                                const FractionalView& view) {
  MasterSolution s;
  s.model = setup.model;
  for (int f = 0; f < static_cast<int>(view.cancel.size()); ++f) {
    if (std::round(view.cancel[f]) >= 1.0) s.cancelled.push_back(f);
  }
  s.deadheads.resize(view.deadhead.size());
  for (std::size_t c = 0; c < view.deadhead.size(); ++c) {
    s.deadheads[c] = static_cast<int>(std::lround(view.deadhead[c]));
  }
  for (int t = 0; t < static_cast<int>(view.schedule.size()); ++t) {
    if (std::round(view.schedule[t]) >= 1.0) s.schedule = t;
  }
  for (const auto& [id, x] : view.pairings) {
    if (std::round(x) >= 1.0) s.pairings.push_back(pool[id]);
  }
  std::ranges::sort(s.pairings, {},
                    [](const MasterColumn& c) { return c.pairing.crew; });
  s.objective = recompute_objective(instance, setup, s);
  return s;
}

// Every flight cancelled and nobody flies: always feasible.
MasterSolution cancel_everything(const Instance& instance,
                                 const MasterSetup& setup) {
  MasterSolution s;
  s.model = setup.model;
  for (int f = 0; f < static_cast<int>(instance.flights.size()); ++f) {
    s.cancelled.push_back(f);
  }
  s.deadheads.assign(instance.copies.size(), 0);
  if (setup.model == CostModel::kReliable) {
    for (int t = 0; t < static_cast<int>(setup.schedules.size()); ++t) {
      const double cost = setup.schedules[t].cost;
      if (cost < 0.0 && (!s.schedule || cost < setup.schedules[*s.schedule].cost)) {
        s.schedule = t;
      }
    }
  }
  s.objective = recompute_objective(instance, setup, s);
  return s;
}

double relative_gap(double incumbent, double bound) {
  return std::max(0.0, incumbent - bound) / std::max(1.0, std::abs(incumbent));
}

}  // namespace

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kBudgetExhausted: return "budget-exhausted";
  }
  return "unknown";
}

const MasterColumn* MasterSolution::pairing_of(int crew) const {
  for (const MasterColumn& c : pairings) {
    if (c.pairing.crew == crew) return &c;
  }
  return nullptr;
}

FractionalView fractional_view(const MasterLp& master,
                               const LpSolution& solution) {
  FractionalView v;
  const auto& x = solution.primal;
  v.cancel.assign(x.begin() + master.cancel_col, x.begin() + master.deadhead_col);
  v.deadhead.assign(x.begin() + master.deadhead_col,
                    x.begin() + master.schedule_col);
  v.schedule.assign(x.begin() + master.schedule_col,
                    x.begin() + master.idle_col);
  for (std::size_t j = 0; j < master.pool_ids.size(); ++j) {
    const double value = x[master.pairing_col + j];
    if (value > 1e-9) v.pairings.emplace_back(master.pool_ids[j], value);
  }
  std::ranges::sort(v.pairings);
  return v;
}

BranchDecision select_branch(const Instance& instance, const ColumnPool& pool,
                             const FractionalView& view, double tolerance) {
  using Kind = BranchDecision::Kind;
  if (auto d = most_fractional(view.cancel, Kind::kCancel, tolerance)) return *d;
  if (auto d = most_fractional(view.deadhead, Kind::kDeadhead, tolerance)) return *d;

  std::optional<BranchDecision> best;
  for (const auto& [f, s] : follow_on_sums(instance, pool, view)) {
    const double score = std::min(s, 1.0 - s);
    if (score <= tolerance) continue;
    if (!best || score > best->score) best = BranchDecision{Kind::kFollowOn, -1, f, s, score};
  }
  if (best) return *best;

  if (auto d = most_fractional(view.schedule, Kind::kSchedule, tolerance)) return *d;
  for (const auto& [id, x] : view.pairings) {
    const double d = distance_to_integer(x);
    if (d > tolerance && (!best || d > best->score)) {
      best = BranchDecision{Kind::kPairing, id, {}, x, d};
    }
  }
  if (best) return *best;
  throw std::invalid_argument("select_branch called on an integral solution");
}

bool is_integral(const Instance& instance, const ColumnPool& pool,
                 const FractionalView& view, double tolerance) {
  try {
    select_branch(instance, pool, view, tolerance);
  } catch (const std::invalid_argument&) {
    return true;
  }
  return false;
}

double recompute_objective(const Instance& instance, const MasterSetup& setup,
                           const MasterSolution& solution) {
  double total = 0.0;
  for (const MasterColumn& c : solution.pairings) total += c.cost;
  for (std::size_t c = 0; c < solution.deadheads.size(); ++c) {
    total += solution.deadheads[c] * instance.copies[c].deadhead_cost;
  }
  for (int f : solution.cancelled) total += instance.flights[f].cancel_cost;
  if (solution.schedule) total += setup.schedules[*solution.schedule].cost;
  for (int k = 0; k < static_cast<int>(instance.crew.size()); ++k) {
    if (!solution.pairing_of(k)) total += idle_cost(instance, k);
  }
  return total;
}

SolutionMetrics compute_metrics(const Instance& instance,
                                const MasterSetup& setup,
                                const MasterSolution& solution) {
  SolutionMetrics m;
  std::vector<int> crews_on(instance.copies.size(), 0);
  for (int k = 0; k < static_cast<int>(instance.crew.size()); ++k) {
    const CrewMember& member = instance.crew[k];
    const MasterColumn* col = solution.pairing_of(k);
    const std::vector<int> none;
    const std::vector<int>& flown = col ? col->pairing.legs : none;
    if (!member.is_reserve()) {
      const std::vector<int>& published =
          member.original_pairing ? *member.original_pairing : none;
      // A published duty the member can no longer fly had to change; only
      // changes to duties that were still flyable count.
      if (!published_duty_broken(instance, k) && flown != published) ++m.alterations;
    } else if (member.in_standby_pool() && !flown.empty()) {
      ++m.reserves;
    }
    if (col) {
      m.penalty += penalty(instance, col->pairing);
      m.costs += pay_and_credit(col->pairing, instance.costs) +
                 transport_cost(instance, col->pairing);
      for (int c : flown) ++crews_on[c];
    }
  }
  // A flight is re-timed when the copy actually operated is not the original.
  for (std::size_t c = 0; c < instance.copies.size(); ++c) {
    const int dh = c < solution.deadheads.size() ? solution.deadheads[c] : 0;
    if (!instance.copies[c].is_original() && crews_on[c] - dh >= 1) ++m.retimings;
    m.costs += dh * instance.costs.deadhead_cost;
  }
  m.cancellations = static_cast<int>(solution.cancelled.size());
  if (setup.model == CostModel::kReliable) {
    if (solution.schedule) {
      m.shortfall = setup.schedules[*solution.schedule].shortfall;
    } else {
      for (const ScheduleOption& o : setup.schedules) {
        if (o.schedule.members.empty()) {
          m.shortfall = o.shortfall;
          break;
        }
      }
    }
  }
  return m;
}

MasterSolution branch_and_price(const Instance& instance,
                                const MasterSetup& setup, LpSolver& solver,
                                const BranchPriceConfig& config) {
  using Clock = std::chrono::steady_clock;
  const auto started = Clock::now();
  const double tol = config.integrality_tolerance;

  ColumnPool pool;
  MasterSolution incumbent = cancel_everything(instance, setup);
  std::priority_queue<Node, std::vector<Node>, WorseBound> open;
  std::int64_t next_id = 0;
  open.push(Node{{}, -std::numeric_limits<double>::infinity(), next_id++, 0});

  std::int64_t nodes = 0;
  std::int64_t lp_solves = 0;
  std::int64_t generated = 0;
  bool exhausted = false;
  double lower_bound = -std::numeric_limits<double>::infinity();

  while (!open.empty()) {
    if (relative_gap(incumbent.objective, open.top().bound) <= config.gap_tolerance) {
      break;
    }
    const double elapsed =
        std::chrono::duration<double>(Clock::now() - started).count();
    if (nodes >= config.node_budget || elapsed >= config.time_budget_seconds) {
      exhausted = true;
      break;
    }
    Node node = open.top();
    open.pop();
    ++nodes;

    const ColumnGenerationResult cg =
        column_generation(instance, setup, pool, node.constraints, solver,
                          config.column_generation);
    lp_solves += cg.iterations;
    generated += cg.generated;
    if (cg.status != LpStatus::kOptimal) continue;
    // A child's relaxation is never weaker than its parent's.
    node.bound = std::max(node.bound, cg.solution.objective);
    if (node.id == 0) lower_bound = node.bound;
    if (relative_gap(incumbent.objective, node.bound) <= config.gap_tolerance) {
      continue;
    }

    const FractionalView view = fractional_view(cg.master, cg.solution);
    if (is_integral(instance, pool, view, tol)) {
      MasterSolution s = extract_solution(instance, setup, pool, view);
      if (s.objective < incumbent.objective) incumbent = std::move(s);
      continue;
    }
    const BranchDecision d = select_branch(instance, pool, view, tol);
    for (Node& child : children(node, d, pool)) {
      child.id = next_id++;
      open.push(std::move(child));
    }
  }

  double bound = incumbent.objective;
  if (!open.empty()) bound = std::min(bound, open.top().bound);
  if (exhausted) bound = std::max(bound, lower_bound);
  incumbent.status = exhausted ? SolveStatus::kBudgetExhausted : SolveStatus::kOptimal;
  incumbent.lower_bound = bound;
  incumbent.gap = relative_gap(incumbent.objective, bound);
  incumbent.nodes = nodes;
  incumbent.columns = generated;
  incumbent.lp_solves = lp_solves;
  incumbent.metrics = compute_metrics(instance, setup, incumbent);
  return incumbent;
}

MasterSolution solve_rcrp(const Instance& instance,
                          std::vector<ScheduleOption> schedules,
                          BranchPriceConfig config) {
  MasterSetup setup;
  setup.model = CostModel::kReliable;
  setup.schedules = std::move(schedules);
  config.column_generation.pricing.model = CostModel::kReliable;
  DenseSimplex solver;
  return branch_and_price(instance, setup, solver, config);
}

MasterSolution solve_tcrp(const Instance& instance, int reserve_limit,
                          BranchPriceConfig config) {
  if (reserve_limit < 0) throw std::invalid_argument("reserve limit must be >= 0");
  MasterSetup setup;
  setup.model = CostModel::kTraditional;
  setup.reserve_limit = reserve_limit;
  config.column_generation.pricing.model = CostModel::kTraditional;
  DenseSimplex solver;
  return branch_and_price(instance, setup, solver, config);
}

}  // namespace crewrec
