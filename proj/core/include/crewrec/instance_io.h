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

// JSON files for instances and scenarios.
//
// An instance file lists flights, crew, shifts and the ground network.
// Flight copies are not stored; the file gives the generation settings and
// the loader rebuilds them. Published pairings and disruptions refer to
// flights by id, and published pairings fly the original times.
//
// A scenario file mirrors ScenarioConfig. Its instance path is resolved
// against the scenario file's directory.

#ifndef CREWREC_INSTANCE_IO_H_
#define CREWREC_INSTANCE_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "crewrec/instance.h"
#include "crewrec/simulation.h"

namespace crewrec {

inline constexpr std::string_view kInstanceFormat = "crewrec-instance/1";
inline constexpr std::string_view kScenarioFormat = "crewrec-scenario/1";

struct CopySettings {
  int count = 5;
  Minutes interval = 5;
  Minutes min_turnaround = 30;
};

struct LoadedInstance {
  Instance instance;
  CopySettings copies;
};

// Throws std::invalid_argument on malformed JSON, a wrong format tag or a
// reference to an unknown flight, airport or shift. Semantic checks are
// left to validate().
LoadedInstance parse_instance(std::string_view text);
// Throws std::invalid_argument when a published leg is a re-timed copy.
std::string format_instance(const Instance& instance, const CopySettings& copies);

ScenarioConfig parse_scenario(std::string_view text,
                              const std::filesystem::path& base_dir = {});
std::string format_scenario(const ScenarioConfig& scenario);

// Throws std::runtime_error when the file cannot be read.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

LoadedInstance load_instance(const std::filesystem::path& path);
ScenarioConfig load_scenario(const std::filesystem::path& path);

CostModel parse_cost_model(std::string_view name);

}  // namespace crewrec

#endif  // CREWREC_INSTANCE_IO_H_
