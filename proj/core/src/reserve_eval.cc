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

#include "crewrec/reserve_eval.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace crewrec {

double DemandModel::mean() const {
  double m = 0.0;
  for (std::size_t x = 0; x < pmf.size(); ++x) m += static_cast<double>(x) * pmf[x];
  return m;
}

void DemandModel::check() const {
  if (pmf.empty()) throw std::invalid_argument("demand pmf is empty");
  double sum = 0.0;
  for (double p : pmf) {
    if (p < 0.0) throw std::invalid_argument("demand pmf has a negative entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("demand pmf does not sum to one");
  }
}

DemandModel DemandModel::binomial(int trials, double probability) {
  if (trials < 0 || probability < 0.0 || probability > 1.0) {
    throw std::invalid_argument("invalid binomial parameters");
  }
  DemandModel d;
  d.pmf.assign(trials + 1, 0.0);
  if (probability == 0.0) {
    d.pmf[0] = 1.0;
    return d;
  }
  if (probability == 1.0) {
    d.pmf[trials] = 1.0;
    return d;
  }
  const double log_p = std::log(probability);
  const double log_q = std::log1p(-probability);
  for (int x = 0; x <= trials; ++x) {
    const double log_choose = std::lgamma(trials + 1.0) - std::lgamma(x + 1.0) -
                              std::lgamma(trials - x + 1.0);
    d.pmf[x] = std::exp(log_choose + x * log_p + (trials - x) * log_q);
  }
  const double sum = std::accumulate(d.pmf.begin(), d.pmf.end(), 0.0);
  for (double& p : d.pmf) p /= sum;
  return d;
}

PeriodGrid build_periods(std::span<const ReserveShift> shifts,
                         std::span<const FlightLeg> flights,
                         const DemandSpec& demand) {
  if (shifts.empty()) throw std::invalid_argument("no reserve shifts");
  std::set<Minutes> bounds;
  for (const ReserveShift& s : shifts) {
    if (s.end <= s.start) {
      throw std::invalid_argument("shift " + s.id + " ends before it starts");
    }
    bounds.insert(s.start);
    bounds.insert(s.end);
  }
  PeriodGrid grid;
  grid.num_shifts = static_cast<int>(shifts.size());
  grid.shifts.assign(shifts.begin(), shifts.end());
  grid.boundaries.assign(bounds.begin(), bounds.end());
  const Minutes lo = grid.boundaries.front();
  const Minutes hi = grid.boundaries.back();
  for (const FlightLeg& f : flights) {
    if (f.departure < lo || f.departure > hi) {
      throw std::invalid_argument("flight " + f.id +
                                  " departs outside the reserve period grid");
    }
  }

  const int num_periods = static_cast<int>(grid.boundaries.size()) - 1;
  if (const auto* exp = std::get_if<ExplicitDemand>(&demand)) {
    if (static_cast<int>(exp->pmfs.size()) != num_periods) {
      throw std::invalid_argument("explicit demand needs one pmf per period");
    }
  }

  for (int t = 0; t < num_periods; ++t) {
    Period p;
    p.start = grid.boundaries[t];
    p.end = grid.boundaries[t + 1];
    for (int s = 0; s < grid.num_shifts; ++s) {
      if (shifts[s].end == p.start) p.shifts_ending.push_back(s);
      if (shifts[s].start == p.start) p.shifts_starting.push_back(s);
    }
    if (const auto* bin = std::get_if<BinomialDemand>(&demand)) {
      const bool last = t + 1 == num_periods;
      int departures = 0;
      for (const FlightLeg& f : flights) {
        const bool inside =
            f.departure >= p.start && (f.departure < p.end || (last && f.departure == p.end));
        const bool from_hub =
            bin->hubs.empty() ||
            std::find(bin->hubs.begin(), bin->hubs.end(), f.origin) != bin->hubs.end();
        if (inside && from_hub) ++departures;
      }
      p.demand = DemandModel::binomial(departures, bin->probability);
    } else {
      p.demand = std::get<ExplicitDemand>(demand).pmfs[t];
      p.demand.check();
    }
    grid.periods.push_back(std::move(p));
  }
  return grid;
}

int ReserveSchedule::total() const {
  return std::accumulate(headcounts.begin(), headcounts.end(), 0);
}

namespace {

int headcount_sum(const ReserveSchedule& schedule, const std::vector<int>& shifts) {
  int h = 0;
  for (int s : shifts) h += schedule.headcounts[s];
  return h;
}

}  // namespace

int max_available(const ReserveSchedule& schedule, const PeriodGrid& grid) {
  int on_duty = 0;
  int best = 0;
  for (const Period& p : grid.periods) {
    on_duty += headcount_sum(schedule, p.shifts_starting) -
               headcount_sum(schedule, p.shifts_ending);
    best = std::max(best, on_duty);
  }
  return best;
}

int max_positive_state(const StateDistribution& dist) {
  for (int e = static_cast<int>(dist.size()) - 1; e >= 0; --e) {
    if (dist[e] > kPositiveMass) return e;
  }
  return 0;
}

StateDistribution transition_end(const StateDistribution& dist, int h_ending,
                                 int e_bar_prev) {
  if (h_ending == 0) return dist;
  const int target = std::max(0, e_bar_prev - h_ending);
  StateDistribution out(dist.size(), 0.0);
  for (int i = 0; i < static_cast<int>(dist.size()); ++i) {
    out[i > target ? target : i] += dist[i];
  }
  return out;
}

StateDistribution transition_start(const StateDistribution& dist,
                                   int h_starting, int n_max) {
  if (h_starting == 0) return dist;
  n_max = std::min(n_max, static_cast<int>(dist.size()) - 1);
  StateDistribution out(dist.size(), 0.0);
  for (int i = 0; i < static_cast<int>(dist.size()); ++i) {
    const int j = i + h_starting <= n_max ? i + h_starting : i;
    out[j] += dist[i];
  }
  return out;
}

StateDistribution transition_demand(const StateDistribution& dist,
                                    const DemandModel& demand) {
  StateDistribution out(dist.size(), 0.0);
  const int b = demand.upper_bound();
  for (int i = 0; i < static_cast<int>(dist.size()); ++i) {
    if (dist[i] == 0.0) continue;
    double stay = 0.0;  // mass of demand below i
    for (int x = 0; x < i && x <= b; ++x) {
      out[i - x] += dist[i] * demand.pmf[x];
      stay += demand.pmf[x];
    }
    out[0] += dist[i] * std::max(0.0, 1.0 - stay);
  }
  return out;
}

double shortfall_period(const StateDistribution& dist, const DemandModel& demand) {
  const int b = demand.upper_bound();
  double xi = 0.0;
  for (int i = 1; i <= b; ++i) {
    double short_by_i = 0.0;
    for (int a = 0; a < static_cast<int>(dist.size()) && a + i <= b; ++a) {
      short_by_i += dist[a] * demand.pmf[a + i];
    }
    xi += i * short_by_i;
  }
  return xi;
}

ScheduleEvaluation evaluate_schedule(const ReserveSchedule& schedule,
                                     const PeriodGrid& grid) {
  if (static_cast<int>(schedule.headcounts.size()) != grid.num_shifts) {
    throw std::invalid_argument("schedule does not match the shift count");
  }
  const int n = schedule.total();
  const int n_max = max_available(schedule, grid);
  StateDistribution q(n + 1, 0.0);
  q[0] = 1.0;

  ScheduleEvaluation eval;
  for (const Period& p : grid.periods) {
    const int e_bar = max_positive_state(q);
    q = transition_end(q, headcount_sum(schedule, p.shifts_ending), e_bar);
    q = transition_start(q, headcount_sum(schedule, p.shifts_starting), n_max);
    const double xi = shortfall_period(q, p.demand);
    q = transition_demand(q, p.demand);
    eval.total_shortfall += xi;
    eval.period_shortfall.push_back(xi);
    eval.period_states.push_back(q);
  }
  return eval;
}

double schedule_cost(double total_shortfall, double baseline, double unit) {
  return unit * total_shortfall - baseline;
}

double schedule_cost(const ReserveSchedule& schedule, const PeriodGrid& grid,
                     double baseline, double unit) {
  return schedule_cost(evaluate_schedule(schedule, grid).total_shortfall,
                       baseline, unit);
}

int max_called_members(int pool_size, std::int64_t cap) {
  if (pool_size < 0 || cap < 1) throw std::invalid_argument("invalid schedule cap");
  // Running binomial sum; C(M, i) fits comfortably before exceeding `cap`.
  long double binom = 1.0L;
  long double sum = 0.0L;
  int m = -1;
  for (int i = 0; i <= pool_size; ++i) {
    if (i > 0) binom = binom * (pool_size - i + 1) / i;
    sum += binom;
    if (sum > static_cast<long double>(cap)) break;
    m = i;
  }
  return m;
}

std::vector<ReserveSchedule> enumerate_schedules(std::span<const PoolMember> pool,
                                                 int num_shifts,
                                                 std::int64_t cap) {
  const int pool_size = static_cast<int>(pool.size());
  const int m = max_called_members(pool_size, cap);
  std::vector<int> base(num_shifts, 0);
  for (const PoolMember& r : pool) {
    if (r.shift < 0 || r.shift >= num_shifts) {
      throw std::invalid_argument("pool member with an invalid shift");
    }
    ++base[r.shift];
  }

  std::vector<ReserveSchedule> out;
  std::vector<int> chosen;
  for (int size = 0; size <= m; ++size) {
    // Lexicographic combinations of `size` pool positions.
    chosen.resize(size);
    std::iota(chosen.begin(), chosen.end(), 0);
    while (true) {
      ReserveSchedule theta;
      theta.headcounts = base;
      for (int i : chosen) {
        --theta.headcounts[pool[i].shift];
        theta.members.push_back(pool[i].crew);
      }
      out.push_back(std::move(theta));
      int pos = size - 1;
      while (pos >= 0 && chosen[pos] == pool_size - size + pos) --pos;
      if (pos < 0) break;
      ++chosen[pos];
      for (int j = pos + 1; j < size; ++j) chosen[j] = chosen[j - 1] + 1;
    }
  }
  return out;
}

ShortfallEstimate simulate_eff(const ReserveSchedule& schedule,
                               const PeriodGrid& grid, int replications,
                               std::uint64_t seed) {
  if (replications < 1) throw std::invalid_argument("replications must be >= 1");
  if (static_cast<int>(schedule.headcounts.size()) != grid.num_shifts) {
    throw std::invalid_argument("schedule does not match the shift count");
  }
  struct Reserve {
    Minutes start;
    Minutes end;
  };
  std::vector<Reserve> reserves;
  for (int s = 0; s < grid.num_shifts; ++s) {
    for (int h = 0; h < schedule.headcounts[s]; ++h) {
      reserves.push_back({grid.shifts[s].start, grid.shifts[s].end});
    }
  }
  // Earliest finisher first; stable on ties.
  std::stable_sort(reserves.begin(), reserves.end(),
                   [](const Reserve& a, const Reserve& b) { return a.end < b.end; });

  std::vector<std::vector<double>> cdfs;
  for (const Period& p : grid.periods) {
    std::vector<double> cdf(p.demand.pmf.size());
    std::partial_sum(p.demand.pmf.begin(), p.demand.pmf.end(), cdf.begin());
    cdfs.push_back(std::move(cdf));
  }

  std::mt19937_64 rng(seed);
  auto uniform = [&rng] {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };

  std::vector<char> used(reserves.size());
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int rep = 0; rep < replications; ++rep) {
    std::fill(used.begin(), used.end(), 0);
    double shortage = 0.0;
    for (std::size_t t = 0; t < grid.periods.size(); ++t) {
      const Period& p = grid.periods[t];
      const double u = uniform();
      const auto& cdf = cdfs[t];
      int demand = static_cast<int>(std::upper_bound(cdf.begin(), cdf.end(), u) -
                                    cdf.begin());
      demand = std::min(demand, static_cast<int>(cdf.size()) - 1);
      for (std::size_t r = 0; r < reserves.size() && demand > 0; ++r) {
        if (used[r]) continue;
        if (reserves[r].start <= p.start && reserves[r].end >= p.end) {
          used[r] = 1;
          --demand;
        }
      }
      shortage += demand;
    }
    sum += shortage;
    sum_sq += shortage * shortage;
  }
  const double n = static_cast<double>(replications);
  ShortfallEstimate est;
  est.mean = sum / n;
  const double var = replications > 1
                         ? std::max(0.0, (sum_sq - n * est.mean * est.mean) / (n - 1.0))
                         : 0.0;
  est.standard_error = std::sqrt(var / n);
  return est;
}

}  // namespace crewrec
