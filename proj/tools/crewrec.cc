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

// Command-line front end: validate instances, price reserve schedules,
// solve one recovery round and replay tracking-period scenarios.
//
// Exit codes: 0 success, 1 invalid input, 2 a solve stopped on its budget
// and the incumbent was used, 3 internal error.

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "crewrec/branch_price.h"
#include "crewrec/instance_io.h"
#include "crewrec/report.h"
#include "crewrec/reserve_eval.h"
#include "crewrec/simulation.h"
#include "crewrec/synthetic.h"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace crewrec;

namespace {

constexpr int kOk = 0;
constexpr int kInvalidInput = 1;
constexpr int kBudgetExhausted = 2;
constexpr int kInternalError = 3;

// Raised for anything the user can fix: unreadable files, bad values.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverFlags {
  std::optional<int> copies;
  std::optional<int> copy_interval;
  std::optional<std::int64_t> pi_cap;
  std::optional<int> pulse_step;
  std::optional<std::int64_t> node_budget;
  std::optional<double> time_budget;
  std::optional<int> workers;
  std::string output = "csv";

  void add_to(CLI::App& cmd) {
    cmd.add_option("--copies", copies, "Copies per flight (odd)")->check(CLI::PositiveNumber);
    cmd.add_option("--copy-interval", copy_interval, "Minutes between copies")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--pi-cap", pi_cap, "Cap on candidate reserve schedules")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--pulse-step", pulse_step, "Flying-time step of the pulse bounds")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--node-budget", node_budget, "Branch-and-bound node budget")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--time-budget", time_budget, "Seconds per solve")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--workers", workers, "Pricing threads")->check(CLI::PositiveNumber);
    cmd.add_option("--output", output, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
  }

  void apply(ScenarioConfig& s) const {
    if (copies) s.copies = *copies;
    if (copy_interval) s.copy_interval = *copy_interval;
    if (pi_cap) s.schedule_cap = *pi_cap;
    if (pulse_step) s.solver.column_generation.pricing.bound_step = *pulse_step;
    if (node_budget) s.solver.node_budget = *node_budget;
    if (time_budget) s.solver.time_budget_seconds = *time_budget;
    if (workers) s.solver.column_generation.pricing.workers = *workers;
  }

  ReportFormat format() const { return parse_report_format(output); }
};

template <typename F>
auto reading(const fs::path& path, F&& load) {
  try {
    return load(path);
  } catch (const std::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::vector<int> parse_counts(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    int v = -1;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || end != item.data() + item.size() || v < 0) {
      throw InputError("expected comma-separated counts, got '" + text + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw InputError("empty count list");
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file(out_path, text);
  }
}

int validate_cmd(const fs::path& path) {
  const LoadedInstance loaded = reading(path, load_instance);
  const std::vector<std::string> problems = validate(loaded.instance);
  for (const std::string& p : problems) std::cout << p << '\n';
  if (!problems.empty()) return kInvalidInput;
  std::cout << "ok: " << loaded.instance.flights.size() << " flights, "
            << loaded.instance.copies.size() << " copies, " << loaded.instance.crew.size()
            << " crew, " << loaded.instance.shifts.size() << " shifts\n";
  return kOk;
}

// Instance with command-line copy settings applied over the file's.
Instance prepared_instance(const fs::path& path, const SolverFlags& flags) {
  LoadedInstance loaded = reading(path, load_instance);
  if (const auto problems = validate(loaded.instance); !problems.empty()) {
    throw InputError(path.string() + ": " + problems.front());
  }
  if (flags.copies || flags.copy_interval) {
    rebuild_copies(loaded.instance, flags.copies.value_or(loaded.copies.count),
                   flags.copy_interval.value_or(loaded.copies.interval),
                   loaded.copies.min_turnaround);
  }
  return std::move(loaded.instance);
}

int evaluate_cmd(const fs::path& path, const std::string& schedule_text,
                 double probability, const SolverFlags& flags) {
  const Instance in = prepared_instance(path, flags);
  ReserveSchedule schedule;
  schedule.headcounts = parse_counts(schedule_text);
  if (schedule.headcounts.size() != in.shifts.size()) {
    throw InputError("schedule has " + std::to_string(schedule.headcounts.size()) +
                     " counts for " + std::to_string(in.shifts.size()) + " shifts");
  }
  const PeriodGrid grid = reserve_grid(in, probability);
  const ScheduleEvaluation eval = evaluate_schedule(schedule, grid);
  if (flags.format() == ReportFormat::kJson) {
    nlohmann::ordered_json doc;
    doc["shortfall"] = eval.total_shortfall;
    doc["periods"] = nlohmann::ordered_json::array();
    for (std::size_t t = 0; t < grid.periods.size(); ++t) {
      doc["periods"].push_back({{"start", grid.periods[t].start},
                                {"end", grid.periods[t].end},
                                {"shortfall", eval.period_shortfall[t]}});
    }
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << "period,start,end,shortfall\n";
    for (std::size_t t = 0; t < grid.periods.size(); ++t) {
      std::cout << t + 1 << ',' << grid.periods[t].start << ',' << grid.periods[t].end
                << ',' << eval.period_shortfall[t] << '\n';
    }
    std::cout << "total,,," << eval.total_shortfall << '\n';
  }
  return kOk;
}

nlohmann::ordered_json solution_json(const Instance& in, const MasterSolution& sol) {
  nlohmann::ordered_json doc;
  doc["status"] = to_string(sol.status);
  doc["model"] = model_label(sol.model);
  doc["objective"] = sol.objective;
  doc["lower_bound"] = sol.lower_bound;
  doc["gap"] = sol.gap;
  doc["nodes"] = sol.nodes;
  doc["columns"] = sol.columns;
  doc["pairings"] = nlohmann::ordered_json::array();
  for (const MasterColumn& col : sol.pairings) {
    if (col.pairing.empty()) continue;
    nlohmann::ordered_json legs = nlohmann::ordered_json::array();
    for (int c : col.pairing.legs) {
      legs.push_back({{"flight", in.flight_of(c).id},
                      {"departure", in.copy_departure(c)},
                      {"shift", in.copies[c].departure_shift}});
    }
    doc["pairings"].push_back(
        {{"crew", in.crew[col.pairing.crew].id}, {"cost", col.cost}, {"legs", legs}});
  }
  doc["cancelled"] = nlohmann::ordered_json::array();
  for (int f : sol.cancelled) doc["cancelled"].push_back(in.flights[f].id);
  const SolutionMetrics& m = sol.metrics;
  doc["metrics"] = {{"Alt", m.alterations}, {"Ret", m.retimings},
                    {"Res", m.reserves},    {"Canc", m.cancellations},
                    {"Pen", m.penalty},     {"Shortfall", m.shortfall},
                    {"Costs", m.costs}};
  return doc;
}

int solve_cmd(const fs::path& path, const std::string& model_name,
              std::optional<int> reserve_limit, const SolverFlags& flags) {
  ScenarioConfig scenario;
  scenario.name = path.stem().string();
  flags.apply(scenario);
  const CostModel model = parse_cost_model(model_name);
  if (reserve_limit && model != CostModel::kTraditional) {
    throw InputError("--reserve-limit applies to the tcrp model only");
  }
  const Instance in = prepared_instance(path, flags);
  // The state holds the published pool and the shortfall baseline.
  const TrackingState state = initial_state(in, scenario);
  const MasterSolution sol = reserve_limit
                                 ? solve_tcrp(state.instance, *reserve_limit, scenario.solver)
                                 : recover(state, model, scenario);
  if (flags.format() == ReportFormat::kJson) {
    std::cout << solution_json(state.instance, sol).dump(2) << '\n';
  } else {
    MetricsRow row;
    row.instance = scenario.name;
    row.phase = "solve";
    row.model = model_label(model);
    row.alterations = sol.metrics.alterations;
    row.retimings = sol.metrics.retimings;
    row.reserves = sol.metrics.reserves;
    row.cancellations = sol.metrics.cancellations;
    row.penalty = sol.metrics.penalty;
    row.shortfall = sol.metrics.shortfall;
    row.costs = sol.metrics.costs;
    std::cout << format_report(std::vector{row}, ReportFormat::kCsv);
  }
  return sol.status == SolveStatus::kBudgetExhausted ? kBudgetExhausted : kOk;
}

int simulate_cmd(const fs::path& path, std::optional<std::uint64_t> seed,
                 const std::string& model_name, bool record_time, const std::string& out,
                 const SolverFlags& flags) {
  ScenarioConfig scenario = reading(path, load_scenario);
  if (seed) scenario.seed = *seed;
  if (!model_name.empty()) scenario.tracking_model = parse_cost_model(model_name);
  scenario.record_time = scenario.record_time || record_time;
  flags.apply(scenario);
  scenario.check();
  if (scenario.instance_path.empty()) throw InputError("scenario names no instance");
  const Instance in = prepared_instance(scenario.instance_path, flags);
  const TrackingResult result = run_scenario(in, scenario);
  emit(format_report(result.rows, flags.format()), out);
  return result.status == SolveStatus::kBudgetExhausted ? kBudgetExhausted : kOk;
}

int report_cmd(const fs::path& dir, const std::string& out, const SolverFlags& flags) {
  if (!fs::is_directory(dir)) throw InputError(dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string ext = entry.path().extension().string();
    if (entry.is_regular_file() && (ext == ".csv" || ext == ".json")) {
      files.push_back(entry.path());
    }
  }
  std::ranges::sort(files);
  std::vector<MetricsRow> rows;
  for (const fs::path& f : files) {
    const ReportFormat format =
        f.extension() == ".csv" ? ReportFormat::kCsv : ReportFormat::kJson;
    const auto part = reading(f, [&](const fs::path& p) {
      return parse_report(read_file(p), format);
    });
    rows.insert(rows.end(), part.begin(), part.end());
  }
  emit(format_report(rows, flags.format()), out);
  return kOk;
}

int generate_cmd(std::uint64_t seed, int aircraft, int trips, const std::string& reserves,
                 int copies, const std::string& out) {
  SyntheticConfig config;
  config.seed = seed;
  config.aircraft = aircraft;
  config.round_trips_per_aircraft = trips;
  config.reserves_per_shift = parse_counts(reserves);
  config.copies = copies;
  emit(format_instance(make_synthetic_instance(config), {copies, config.copy_interval,
                                                         config.min_turnaround}),
       out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crew recovery with reliable reserve schedules"};
  app.require_subcommand(1);
  int status = kOk;

  std::string instance_path;
  std::string scenario_path;
  std::string runs_dir;
  std::string schedule;
  std::string model = "rcrp";
  std::string sim_model;
  std::string out;
  std::string reserves = "1,1,1";
  std::optional<int> reserve_limit;
  std::optional<std::uint64_t> seed;
  std::uint64_t gen_seed = 1;
  double probability = 0.06;
  int aircraft = 5;
  int trips = 2;
  int gen_copies = 5;
  bool record_time = false;
  SolverFlags flags;

  auto* validate = app.add_subcommand("validate", "Check an instance file");
  validate->add_option("instance", instance_path)->required();

  auto* evaluate = app.add_subcommand(
      "evaluate-reserve", "Expected shortfall of a reserve schedule, total and per period");
  evaluate->add_option("instance", instance_path)->required();
  evaluate->add_option("schedule", schedule, "Standby headcount per shift, e.g. 2,1,1")
      ->required();
  evaluate->add_option("--probability", probability, "Reserve demand per departure")
      ->check(CLI::Range(0.0, 1.0));
  flags.add_to(*evaluate);

  auto* solve = app.add_subcommand("solve", "Recover the published schedule of an instance");
  solve->add_option("instance", instance_path)->required();
  solve->add_option("--model", model)->check(CLI::IsMember({"rcrp", "tcrp"}));
  solve->add_option("--reserve-limit", reserve_limit, "Reserves the tcrp model may call")
      ->check(CLI::NonNegativeNumber);
  flags.add_to(*solve);

  auto* simulate = app.add_subcommand("simulate", "Replay a tracking-period scenario");
  simulate->add_option("scenario", scenario_path)->required();
  simulate->add_option("--seed", seed, "Override the scenario seed");
  simulate->add_option("--model", sim_model, "Override the tracking model")
      ->check(CLI::IsMember({"rcrp", "tcrp"}));
  simulate->add_flag("--record-time", record_time, "Report wall-clock solve times");
  simulate->add_option("-o,--out", out, "Write the report to a file");
  flags.add_to(*simulate);

  auto* report = app.add_subcommand("report", "Merge the reports in a directory");
  report->add_option("runs-dir", runs_dir)->required();
  report->add_option("-o,--out", out, "Write the report to a file");
  flags.add_to(*report);

  auto* generate = app.add_subcommand("generate", "Write a synthetic instance");
  generate->add_option("--seed", gen_seed);
  generate->add_option("--aircraft", aircraft)->check(CLI::PositiveNumber);
  generate->add_option("--round-trips", trips)->check(CLI::PositiveNumber);
  generate->add_option("--reserves", reserves, "Reserves per shift, e.g. 1,1,1");
  generate->add_option("--copies", gen_copies)->check(CLI::PositiveNumber);
  generate->add_option("-o,--out", out, "Write the instance to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (*validate) status = validate_cmd(instance_path);
    if (*evaluate) status = evaluate_cmd(instance_path, schedule, probability, flags);
    if (*solve) status = solve_cmd(instance_path, model, reserve_limit, flags);
    if (*simulate) status = simulate_cmd(scenario_path, seed, sim_model, record_time, out, flags);
    if (*report) status = report_cmd(runs_dir, out, flags);
    if (*generate) status = generate_cmd(gen_seed, aircraft, trips, reserves, gen_copies, out);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return status;
}
