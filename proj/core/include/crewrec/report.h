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

// Metric reports: one row per recovery round in the column order of the
// experiment tables, followed by an averages row. Reports parse back into
// the rows they were written from; floats use the shortest representation
// that round-trips.

#ifndef CREWREC_REPORT_H_
#define CREWREC_REPORT_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crewrec/simulation.h"

namespace crewrec {

enum class ReportFormat { kCsv, kJson };

// Accepts "csv" and "json". Throws std::invalid_argument otherwise.
ReportFormat parse_report_format(std::string_view name);

// Column means of the numeric fields.
struct MetricsAverage {
  double alterations = 0.0;
  double retimings = 0.0;
  double reserves = 0.0;
  double cancellations = 0.0;
  double penalty = 0.0;
  double shortfall = 0.0;
  double costs = 0.0;
  double time = 0.0;
};

// All zero for no rows.
MetricsAverage average_row(std::span<const MetricsRow> rows);

// An empty report is the header alone, without an averages row.
std::string format_report(std::span<const MetricsRow> rows, ReportFormat format);

// Rows of a report written by format_report, without the averages row.
// Throws std::invalid_argument on malformed input.
std::vector<MetricsRow> parse_report(std::string_view text, ReportFormat format);

}  // namespace crewrec

#endif  // CREWREC_REPORT_H_
