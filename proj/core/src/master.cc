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

#include "crewrec/master.h"

#include <algorithm>
#include <fmt/format.h>
#include <stdexcept>

namespace crewrec {
namespace {

constexpr double kFeasibilityTolerance = 1e-7;

bool uses_follow_on(const Instance& instance, const std::vector<int>& legs,
                    const FollowOn& f) {
  for (std::size_t i = 1; i < legs.size(); ++i) {
    if (instance.copies[legs[i - 1]].flight == f.from &&
        instance.copies[legs[i]].flight == f.to) {
      return true;
    }
  }
  return false;
}

bool fixes_pairing_on(const VariableBound& b) {
  return b.sense != RowSense::kLessEqual && b.value > 0.5;
}

bool needs_artificial(RowSense sense) { return sense != RowSense::kLessEqual; }

}  // namespace

int ColumnPool::add(MasterColumn column) {
  auto key = std::make_pair(column.pairing.crew, column.pairing.legs);
  if (index_.contains(key)) return -1;
  const int id = size();
  index_.emplace(std::move(key), id);
  columns_.push_back(std::move(column));
  return id;
}

bool column_allowed(const Instance& instance, const MasterColumn& column,
                    int pool_id, const NodeConstraints& node) {
  const Pairing& p = column.pairing;
  for (const ForbiddenPairing& f : node.pricing.forbidden_pairings) {
    if (f.crew == p.crew && f.legs == p.legs) return false;
  }
  for (const FollowOn& f : node.pricing.forbidden_follow_ons) {
    if (uses_follow_on(instance, p.legs, f)) return false;
  }
  bool fixed_here = false;
  for (const VariableBound& b : node.pairing) {
    if (b.index != pool_id) continue;
    if (b.sense == RowSense::kLessEqual && b.value < 0.5) return false;
    if (fixes_pairing_on(b)) fixed_here = true;
  }
  const auto& fixed = node.pricing.fixed_crew;
  if (std::ranges::find(fixed, p.crew) != fixed.end() && !fixed_here) return false;
  return true;
}

MasterLp build_master(const Instance& instance, const MasterSetup& setup,
                      const ColumnPool& pool, const NodeConstraints& node,
                      bool phase_one) {
  const int num_flights = static_cast<int>(instance.flights.size());
  const int num_copies = static_cast<int>(instance.copies.size());
  const int num_crew = static_cast<int>(instance.crew.size());
  const bool reliable = setup.model == CostModel::kReliable;
  const double big_m = instance.effective_big_m();

  MasterLp m;
  m.phase_one = phase_one;
  LpProblem& lp = m.lp;
  RowLayout& r = m.rows;

  r.cover = lp.num_rows();
  for (int f = 0; f < num_flights; ++f) {
    lp.add_row(RowSense::kEqual, 1.0, fmt::format("cover_{}", f));
  }
  r.deadhead = lp.num_rows();
  for (int c = 0; c < num_copies; ++c) {
    lp.add_row(RowSense::kLessEqual, 0.0, fmt::format("deadhead_{}", c));
  }
  r.capacity = lp.num_rows();
  for (int f = 0; f < num_flights; ++f) {
    lp.add_row(RowSense::kLessEqual, big_m, fmt::format("capacity_{}", f));
  }
  r.pair = lp.num_rows();
  for (int i = 0; i < static_cast<int>(instance.incompatible.size()); ++i) {
    lp.add_row(RowSense::kLessEqual, 1.0, fmt::format("pair_{}", i));
  }
  r.crew = lp.num_rows();
  std::vector<double> idle(num_crew, 0.0);
  for (int k = 0; k < num_crew; ++k) {
    idle[k] = idle_cost(instance, k);
    lp.add_row(idle[k] > 0.0 ? RowSense::kEqual : RowSense::kLessEqual, 1.0,
               fmt::format("crew_{}", k));
  }
  r.reserve = lp.num_rows();
  r.reserve_row.assign(num_crew, -1);
  if (reliable) {
    for (int k = 0; k < num_crew; ++k) {
      if (!instance.crew[k].in_standby_pool()) continue;
      r.reserve_row[k] = lp.add_row(RowSense::kLessEqual, 0.0,
                                    fmt::format("reserve_{}", k));
    }
    r.schedule = lp.add_row(RowSense::kLessEqual, 1.0, "schedule");
  } else {
    r.reserve_limit = lp.add_row(RowSense::kLessEqual, setup.reserve_limit,
                                 "reserve_limit");
  }
  r.follow_on = lp.num_rows();
  for (std::size_t i = 0; i < node.pricing.required_follow_ons.size(); ++i) {
    lp.add_row(RowSense::kGreaterEqual, 1.0, fmt::format("follow_on_{}", i));
  }
  r.bounds = lp.num_rows();
  auto bound_rows = [&](const std::vector<VariableBound>& bounds,
                        const char* family) {
    std::vector<int> rows;
    for (const VariableBound& b : bounds) {
      rows.push_back(lp.add_row(b.sense, b.value,
                                fmt::format("fix_{}_{}", family, b.index)));
    }
    return rows;
  };
  const std::vector<int> cancel_rows = bound_rows(node.cancel, "z");
  const std::vector<int> deadhead_rows = bound_rows(node.deadhead, "y");
  const std::vector<int> schedule_rows =
      reliable ? bound_rows(node.schedule, "u") : std::vector<int>{};
  for (const VariableBound& b : node.pairing) {
    if (fixes_pairing_on(b)) {
      lp.add_row(RowSense::kGreaterEqual, 1.0, fmt::format("fix_x_{}", b.index));
    }
  }
  r.end = lp.num_rows();

  const auto cost = [&](double c) { return phase_one ? 0.0 : c; };

  m.cancel_col = lp.num_columns();
  for (int f = 0; f < num_flights; ++f) {
    std::vector<LpEntry> e{{r.cover + f, 1.0}, {r.capacity + f, big_m}};
    for (std::size_t i = 0; i < node.cancel.size(); ++i) {
      if (node.cancel[i].index == f) e.push_back({cancel_rows[i], 1.0});
    }
    lp.add_column(cost(instance.flights[f].cancel_cost), std::move(e),
                  fmt::format("z_{}", f));
  }
  m.deadhead_col = lp.num_columns();
  for (int c = 0; c < num_copies; ++c) {
    const int f = instance.copies[c].flight;
    std::vector<LpEntry> e{{r.cover + f, -1.0},
                           {r.deadhead + c, 1.0},
                           {r.capacity + f, 1.0}};
    for (int i = 0; i < static_cast<int>(instance.incompatible.size()); ++i) {
      const IncompatiblePair& p = instance.incompatible[i];
      if (p.copy_a == c || p.copy_b == c) e.push_back({r.pair + i, -1.0});
    }
    for (std::size_t i = 0; i < node.deadhead.size(); ++i) {
      if (node.deadhead[i].index == c) e.push_back({deadhead_rows[i], 1.0});
    }
    lp.add_column(cost(instance.copies[c].deadhead_cost), std::move(e),
                  fmt::format("y_{}", c));
  }
  m.schedule_col = lp.num_columns();
  if (reliable) {
    for (int t = 0; t < static_cast<int>(setup.schedules.size()); ++t) {
      std::vector<LpEntry> e{{r.schedule, 1.0}};
      for (int k : setup.schedules[t].schedule.members) {
        if (r.reserve_row[k] >= 0) e.push_back({r.reserve_row[k], -1.0});
      }
      for (std::size_t i = 0; i < node.schedule.size(); ++i) {
        if (node.schedule[i].index == t) e.push_back({schedule_rows[i], 1.0});
      }
      lp.add_column(cost(setup.schedules[t].cost), std::move(e),
                    fmt::format("u_{}", t));
    }
  }
  m.idle_col = lp.num_columns();
  for (int k = 0; k < num_crew; ++k) {
    if (idle[k] <= 0.0) continue;
    lp.add_column(cost(idle[k]), {{r.crew + k, 1.0}}, fmt::format("idle_{}", k));
    m.idle_crew.push_back(k);
  }
  m.artificial_col = lp.num_columns();
  if (phase_one) {
    for (int row = 0; row < lp.num_rows(); ++row) {
      const bool cover_row = row >= r.cover && row < r.cover + num_flights;
      if (cover_row || (row >= r.follow_on && needs_artificial(lp.senses[row]))) {
        lp.add_column(1.0, {{row, 1.0}}, fmt::format("a_{}", row));
      }
    }
  }
  m.num_artificial = lp.num_columns() - m.artificial_col;
  m.pairing_col = lp.num_columns();
  for (int id = 0; id < pool.size(); ++id) {
    if (column_allowed(instance, pool[id], id, node)) {
      append_column(m, instance, setup, node, pool[id], id);
    }
  }
  return m;
}

void append_column(MasterLp& master, const Instance& instance,
                   const MasterSetup& setup, const NodeConstraints& node,
                   const MasterColumn& column, int pool_id) {
  const RowLayout& r = master.rows;
  const Pairing& p = column.pairing;
  const CrewMember& member = instance.crew[p.crew];
  std::vector<LpEntry> e;
  for (int c : p.legs) {
    e.push_back({r.cover + instance.copies[c].flight, 1.0});
    e.push_back({r.deadhead + c, -1.0});
  }
  for (int i = 0; i < static_cast<int>(instance.incompatible.size()); ++i) {
    const IncompatiblePair& pair = instance.incompatible[i];
    const auto n = std::ranges::count(p.legs, pair.copy_a) +
                   std::ranges::count(p.legs, pair.copy_b);
    if (n > 0) e.push_back({r.pair + i, static_cast<double>(n)});
  }
  e.push_back({r.crew + p.crew, 1.0});
  if (member.in_standby_pool()) {
    if (setup.model == CostModel::kReliable) {
      e.push_back({r.reserve_row[p.crew], 1.0});
    } else {
      e.push_back({r.reserve_limit, 1.0});
    }
  }
  const auto& required = node.pricing.required_follow_ons;
  for (std::size_t i = 0; i < required.size(); ++i) {
    if (uses_follow_on(instance, p.legs, required[i])) {
      e.push_back({r.follow_on + static_cast<int>(i), 1.0});
    }
  }
  // Pairing fixes are the last bound rows, in the order of node.pairing.
  int row = r.end;
  for (auto it = node.pairing.rbegin(); it != node.pairing.rend(); ++it) {
    if (!fixes_pairing_on(*it)) continue;
    --row;
    if (it->index == pool_id) e.push_back({row, 1.0});
  }
  master.lp.add_column(master.phase_one ? 0.0 : column.cost, std::move(e),
                       fmt::format("x_{}", pool_id));
  master.pool_ids.push_back(pool_id);
}

DualValues extract_duals(const MasterLp& master, const LpSolution& solution,
                         const Instance& instance,
                         const NodeConstraints& node) {
  const RowLayout& r = master.rows;
  const auto& y = solution.duals;
  DualValues d = DualValues::zero(instance, node.pricing);
  for (std::size_t f = 0; f < d.flight.size(); ++f) d.flight[f] = y[r.cover + f];
  for (std::size_t c = 0; c < d.copy.size(); ++c) d.copy[c] = y[r.deadhead + c];
  for (std::size_t i = 0; i < d.pair.size(); ++i) d.pair[i] = y[r.pair + i];
  for (std::size_t k = 0; k < d.crew.size(); ++k) {
    d.crew[k] = y[r.crew + k];
    if (r.reserve_row[k] >= 0) d.reserve[k] = y[r.reserve_row[k]];
  }
  if (r.reserve_limit >= 0) d.reserve_limit = y[r.reserve_limit];
  for (std::size_t i = 0; i < d.follow_on.size(); ++i) {
    d.follow_on[i] = y[r.follow_on + i];
  }
  return d;
}

ColumnGenerationResult column_generation(const Instance& instance,
                                         const MasterSetup& setup,
                                         ColumnPool& pool,
                                         const NodeConstraints& node,
                                         LpSolver& solver,
                                         const ColumnGenerationOptions& options) {
  ColumnGenerationResult out;
  MasterLp master = build_master(instance, setup, pool, node, false);
  std::vector<BasisEntry> warm;
  for (;;) {
    if (out.iterations >= options.max_iterations) {
      throw std::runtime_error(fmt::format(
          "column generation did not converge in {} iterations",
          options.max_iterations));
    }
    ++out.iterations;
    LpSolution sol = solver.solve(master.lp, warm);
    if (sol.status == LpStatus::kInfeasible && !master.phase_one) {
      master = build_master(instance, setup, pool, node, true);
      warm.clear();
      continue;
    }
    if (sol.status != LpStatus::kOptimal) {
      throw std::runtime_error(
          fmt::format("master LP ended with status {}", to_string(sol.status)));
    }
    if (master.phase_one && sol.objective <= kFeasibilityTolerance) {
      master = build_master(instance, setup, pool, node, false);
      warm.clear();
      continue;
    }
    if (!master.phase_one) out.objective_trace.push_back(sol.objective);

    DualValues duals = extract_duals(master, sol, instance, node);
    PricingOptions pricing = options.pricing;
    pricing.feasibility_only = master.phase_one;
    PricingResult priced = price_all(instance, duals, node.pricing, pricing);
    int added = 0;
    for (PricedColumn& col : priced.columns) {
      const int id = pool.add({std::move(col.pairing), col.cost});
      if (id < 0) continue;
      append_column(master, instance, setup, node, pool[id], id);
      ++added;
    }
    out.generated += added;
    if (added == 0) {
      if (master.phase_one) {
        out.status = LpStatus::kInfeasible;
        out.master = std::move(master);
        out.solution = std::move(sol);
        out.duals = std::move(duals);
        return out;
      }
      out.status = LpStatus::kOptimal;
      out.master = std::move(master);
      out.solution = std::move(sol);
      out.duals = std::move(duals);
      return out;
    }
    warm = sol.basis;
  }
}

}  // namespace crewrec
