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

#include "crewrec/instance_io.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace crewrec {
namespace {

using json = nlohmann::ordered_json;

// Reads `key` into `out` when present, keeping the default otherwise.
template <typename T>
void optional_field(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) it->get_to(out);
}

void check_format(const json& doc, std::string_view expected) {
  const std::string tag = doc.value("format", std::string{});
  if (tag != expected) {
    throw std::invalid_argument("expected format '" + std::string(expected) +
                                "', found '" + tag + "'");
  }
}

int flight_index(const Instance& in, const std::string& id) {
  const int f = in.find_flight(id);
  if (f < 0) throw std::invalid_argument("unknown flight '" + id + "'");
  return f;
}

int shift_index(const Instance& in, const std::string& id) {
  for (std::size_t s = 0; s < in.shifts.size(); ++s) {
    if (in.shifts[s].id == id) return static_cast<int>(s);
  }
  throw std::invalid_argument("unknown shift '" + id + "'");
}

void read_rules(const json& j, DutyRules& r) {
  optional_field(j, "max_fly_long", r.max_fly_long);
  optional_field(j, "max_fly_short", r.max_fly_short);
  optional_field(j, "max_duty_long", r.max_duty_long);
  optional_field(j, "max_duty_short", r.max_duty_short);
  optional_field(j, "min_sit", r.min_sit);
  optional_field(j, "min_rest", r.min_rest);
  optional_field(j, "long_duty_leg_threshold", r.long_duty_leg_threshold);
  optional_field(j, "max_earlier_start", r.max_earlier_start);
}

json write_rules(const DutyRules& r) {
  return {{"max_fly_long", r.max_fly_long},
          {"max_fly_short", r.max_fly_short},
          {"max_duty_long", r.max_duty_long},
          {"max_duty_short", r.max_duty_short},
          {"min_sit", r.min_sit},
          {"min_rest", r.min_rest},
          {"long_duty_leg_threshold", r.long_duty_leg_threshold},
          {"max_earlier_start", r.max_earlier_start}};
}

void read_costs(const json& j, CostParams& c) {
  optional_field(j, "pay_credit_min", c.pay_credit_min);
  optional_field(j, "duty_time_ratio", c.duty_time_ratio);
  optional_field(j, "transport_cost", c.transport_cost);
  optional_field(j, "alter_cost", c.alter_cost);
  optional_field(j, "shortfall_unit_cost", c.shortfall_unit_cost);
  optional_field(j, "tcrp_reserve_cost", c.tcrp_reserve_cost);
  optional_field(j, "deadhead_cost", c.deadhead_cost);
  optional_field(j, "penalty_caps", c.penalty_caps);
  optional_field(j, "penalty_slopes", c.penalty_slopes);
  if (auto it = j.find("big_m"); it != j.end() && !it->is_null()) {
    c.big_m = it->get<double>();
  }
}

json write_costs(const CostParams& c) {
  json j = {{"pay_credit_min", c.pay_credit_min},
            {"duty_time_ratio", c.duty_time_ratio},
            {"transport_cost", c.transport_cost},
            {"alter_cost", c.alter_cost},
            {"shortfall_unit_cost", c.shortfall_unit_cost},
            {"tcrp_reserve_cost", c.tcrp_reserve_cost},
            {"deadhead_cost", c.deadhead_cost},
            {"penalty_caps", c.penalty_caps},
            {"penalty_slopes", c.penalty_slopes}};
  if (c.big_m) j["big_m"] = *c.big_m;
  return j;
}

const char* model_name(CostModel model) {
  return model == CostModel::kReliable ? "rcrp" : "tcrp";
}

}  // namespace

CostModel parse_cost_model(std::string_view name) {
  if (name == "rcrp") return CostModel::kReliable;
  if (name == "tcrp") return CostModel::kTraditional;
  throw std::invalid_argument("unknown model '" + std::string(name) +
                              "', expected rcrp or tcrp");
}

LoadedInstance parse_instance(std::string_view text) {
  LoadedInstance out;
  Instance& in = out.instance;
  try {
    const json doc = json::parse(text);
    check_format(doc, kInstanceFormat);
    doc.at("airports").get_to(in.airports);
    doc.at("travel_times").get_to(in.travel_times);
    if (auto it = doc.find("rules"); it != doc.end()) read_rules(*it, in.rules);
    if (auto it = doc.find("costs"); it != doc.end()) read_costs(*it, in.costs);
    if (auto it = doc.find("copies"); it != doc.end()) {
      optional_field(*it, "count", out.copies.count);
      optional_field(*it, "interval", out.copies.interval);
      optional_field(*it, "min_turnaround", out.copies.min_turnaround);
    }
    for (const json& s : doc.value("shifts", json::array())) {
      in.shifts.push_back({s.at("id").get<std::string>(), s.at("start").get<Minutes>(),
                           s.at("end").get<Minutes>()});
    }
    for (const json& f : doc.at("flights")) {
      FlightLeg leg;
      f.at("id").get_to(leg.id);
      f.at("origin").get_to(leg.origin);
      f.at("destination").get_to(leg.destination);
      f.at("departure").get_to(leg.departure);
      f.at("arrival").get_to(leg.arrival);
      optional_field(f, "aircraft", leg.aircraft_id);
      optional_field(f, "cancel_cost", leg.cancel_cost);
      optional_field(f, "retime_cost", leg.retime_cost);
      in.flights.push_back(std::move(leg));
    }
    // Copies first, so that published pairings can name original copies.
    rebuild_copies(in, out.copies.count, out.copies.interval, out.copies.min_turnaround);
    for (const json& k : doc.at("crew")) {
      CrewMember m;
      k.at("id").get_to(m.id);
      const std::string kind = k.value("kind", std::string("regular"));
      if (kind == "reserve") {
        m.kind = CrewKind::kReserve;
      } else if (kind != "regular") {
        throw std::invalid_argument("crew " + m.id + ": unknown kind '" + kind + "'");
      }
      k.at("home_base").get_to(m.home_base);
      optional_field(k, "earliest_start", m.earliest_start);
      optional_field(k, "latest_end", m.latest_end);
      optional_field(k, "original_pairing_cost", m.original_pairing_cost);
      if (auto it = k.find("pairing"); it != k.end() && !it->is_null()) {
        std::vector<int> legs;
        for (const json& id : *it) legs.push_back(in.original_copy(flight_index(in, id)));
        m.original_pairing = std::move(legs);
      }
      if (auto it = k.find("standby_shift"); it != k.end() && !it->is_null()) {
        m.standby_shift = shift_index(in, it->get<std::string>());
      }
      for (const json& id : k.value("unavailable", json::array())) {
        m.unavailable_flights.push_back(flight_index(in, id));
      }
      in.crew.push_back(std::move(m));
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("instance: ") + e.what());
  }
  return out;
}

std::string format_instance(const Instance& in, const CopySettings& copies) {
  json doc;
  doc["format"] = kInstanceFormat;
  doc["airports"] = in.airports;
  doc["travel_times"] = in.travel_times;
  doc["rules"] = write_rules(in.rules);
  doc["costs"] = write_costs(in.costs);
  doc["copies"] = {{"count", copies.count},
                   {"interval", copies.interval},
                   {"min_turnaround", copies.min_turnaround}};
  doc["shifts"] = json::array();
  for (const ReserveShift& s : in.shifts) {
    doc["shifts"].push_back({{"id", s.id}, {"start", s.start}, {"end", s.end}});
  }
  doc["flights"] = json::array();
  for (const FlightLeg& f : in.flights) {
    doc["flights"].push_back({{"id", f.id},
                              {"origin", f.origin},
                              {"destination", f.destination},
                              {"departure", f.departure},
                              {"arrival", f.arrival},
                              {"aircraft", f.aircraft_id},
                              {"cancel_cost", f.cancel_cost},
                              {"retime_cost", f.retime_cost}});
  }
  doc["crew"] = json::array();
  for (const CrewMember& k : in.crew) {
    json m = {{"id", k.id},
              {"kind", k.is_reserve() ? "reserve" : "regular"},
              {"home_base", k.home_base},
              {"earliest_start", k.earliest_start},
              {"latest_end", k.latest_end},
              {"original_pairing_cost", k.original_pairing_cost}};
    if (k.original_pairing) {
      json legs = json::array();
      for (int c : *k.original_pairing) {
        if (!in.copies[c].is_original()) {
          throw std::invalid_argument("crew " + k.id + ": published leg is re-timed");
        }
        legs.push_back(in.flight_of(c).id);
      }
      m["pairing"] = std::move(legs);
    }
    if (k.standby_shift) m["standby_shift"] = in.shifts[*k.standby_shift].id;
    if (!k.unavailable_flights.empty()) {
      json ids = json::array();
      for (int f : k.unavailable_flights) ids.push_back(in.flights[f].id);
      m["unavailable"] = std::move(ids);
    }
    doc["crew"].push_back(std::move(m));
  }
  return doc.dump(2) + "\n";
}

ScenarioConfig parse_scenario(std::string_view text, const std::filesystem::path& base_dir) {
  ScenarioConfig s;
  try {
    const json doc = json::parse(text);
    check_format(doc, kScenarioFormat);
    optional_field(doc, "name", s.name);
    optional_field(doc, "checkpoints", s.checkpoints);
    optional_field(doc, "disruption_probabilities", s.disruption_probabilities);
    optional_field(doc, "execution_probability", s.execution_probability);
    optional_field(doc, "seed", s.seed);
    if (auto it = doc.find("instance"); it != doc.end()) {
      const std::filesystem::path p = it->get<std::string>();
      s.instance_path = (p.is_absolute() || base_dir.empty() ? p : base_dir / p).string();
    }
    if (auto it = doc.find("tracking_model"); it != doc.end()) {
      s.tracking_model = parse_cost_model(it->get<std::string>());
    }
    if (auto it = doc.find("execution_model"); it != doc.end()) {
      s.execution_model = parse_cost_model(it->get<std::string>());
    }
    optional_field(doc, "schedule_cap", s.schedule_cap);
    optional_field(doc, "copies", s.copies);
    optional_field(doc, "copy_interval", s.copy_interval);
    optional_field(doc, "min_turnaround", s.min_turnaround);
    if (auto it = doc.find("solver"); it != doc.end()) {
      PricingOptions& pricing = s.solver.column_generation.pricing;
      optional_field(*it, "node_budget", s.solver.node_budget);
      optional_field(*it, "time_budget", s.solver.time_budget_seconds);
      optional_field(*it, "workers", pricing.workers);
      optional_field(*it, "pulse_step", pricing.bound_step);
    }
    optional_field(doc, "record_time", s.record_time);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("scenario: ") + e.what());
  }
  s.check();
  return s;
}

std::string format_scenario(const ScenarioConfig& s) {
  const PricingOptions& pricing = s.solver.column_generation.pricing;
  json doc = {{"format", kScenarioFormat},
              {"name", s.name},
              {"instance", s.instance_path},
              {"checkpoints", s.checkpoints},
              {"disruption_probabilities", s.disruption_probabilities},
              {"execution_probability", s.execution_probability},
              {"seed", s.seed},
              {"tracking_model", model_name(s.tracking_model)},
              {"execution_model", model_name(s.execution_model)},
              {"schedule_cap", s.schedule_cap},
              {"copies", s.copies},
              {"copy_interval", s.copy_interval},
              {"min_turnaround", s.min_turnaround},
              {"solver",
               {{"node_budget", s.solver.node_budget},
                {"time_budget", s.solver.time_budget_seconds},
                {"workers", pricing.workers},
                {"pulse_step", pricing.bound_step}}},
              {"record_time", s.record_time}};
  return doc.dump(2) + "\n";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

LoadedInstance load_instance(const std::filesystem::path& path) {
  return parse_instance(read_file(path));
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_file(path), path.parent_path());
}

}  // namespace crewrec
