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

#include "crewrec/report.h"

#include <array>
#include <charconv>
#include <stdexcept>
#include <system_error>

#include "json.hpp"

namespace crewrec {
namespace {

using nlohmann::json;
// Keeps the table column order inside each object.
using ordered = nlohmann::ordered_json;

constexpr std::array<std::string_view, 12> kColumns = {
    "instance", "phase", "round",     "model", "Alt",  "Ret",
    "Res",      "Canc",  "Pen",       "Shortfall", "Costs", "Time"};

std::string shortest(double v) {
  std::array<char, 32> buf;
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw std::logic_error("float formatting failed");
  return std::string(buf.data(), end);
}

template <typename T>
T parse_number(std::string_view text, std::string_view column) {
  T v{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw std::invalid_argument("report: bad " + std::string(column) + " value '" +
                                std::string(text) + "'");
  }
  return v;
}

std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

// Splits one CSV record starting at `pos`, advancing past its line end.
std::vector<std::string> next_record(std::string_view text, std::size_t& pos) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  while (pos < text.size()) {
    const char c = text[pos++];
    if (quoted) {
      if (c != '"') {
        fields.back() += c;
      } else if (pos < text.size() && text[pos] == '"') {
        fields.back() += '"';
        ++pos;
      } else {
        quoted = false;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c == '\n') {
      break;
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  if (quoted) throw std::invalid_argument("report: unterminated quote");
  return fields;
}

std::array<std::string, 12> cells(const MetricsRow& r) {
  return {quote(r.instance),         quote(r.phase),
          std::to_string(r.round),   quote(r.model),
          std::to_string(r.alterations), std::to_string(r.retimings),
          std::to_string(r.reserves),    std::to_string(r.cancellations),
          shortest(r.penalty),       shortest(r.shortfall),
          shortest(r.costs),         shortest(r.time)};
}

std::array<std::string, 12> cells(const MetricsAverage& a) {
  return {"average",          "",
          "",                 "",
          shortest(a.alterations), shortest(a.retimings),
          shortest(a.reserves),    shortest(a.cancellations),
          shortest(a.penalty),     shortest(a.shortfall),
          shortest(a.costs),       shortest(a.time)};
}

void append_line(std::string& out, const std::array<std::string, 12>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    out += fields[i];
  }
  out += '\n';
}

std::string format_csv(std::span<const MetricsRow> rows) {
  std::string out;
  std::array<std::string, 12> header;
  for (std::size_t i = 0; i < kColumns.size(); ++i) header[i] = kColumns[i];
  append_line(out, header);
  for (const MetricsRow& r : rows) append_line(out, cells(r));
  if (!rows.empty()) append_line(out, cells(average_row(rows)));
  return out;
}

std::vector<MetricsRow> parse_csv(std::string_view text) {
  std::size_t pos = 0;
  const std::vector<std::string> header = next_record(text, pos);
  if (header.size() != kColumns.size() ||
      !std::equal(header.begin(), header.end(), kColumns.begin())) {
    throw std::invalid_argument("report: unexpected CSV header");
  }
  std::vector<MetricsRow> rows;
  while (pos < text.size()) {
    const std::vector<std::string> f = next_record(text, pos);
    if (f.size() == 1 && f[0].empty()) continue;
    if (f.size() != kColumns.size()) {
      throw std::invalid_argument("report: expected 12 fields, got " +
                                  std::to_string(f.size()));
    }
    // The averages row is the only one without a round.
    if (f[2].empty()) continue;
    MetricsRow r;
    r.instance = f[0];
    r.phase = f[1];
    r.round = parse_number<int>(f[2], kColumns[2]);
    r.model = f[3];
    r.alterations = parse_number<int>(f[4], kColumns[4]);
    r.retimings = parse_number<int>(f[5], kColumns[5]);
    r.reserves = parse_number<int>(f[6], kColumns[6]);
    r.cancellations = parse_number<int>(f[7], kColumns[7]);
    r.penalty = parse_number<double>(f[8], kColumns[8]);
    r.shortfall = parse_number<double>(f[9], kColumns[9]);
    r.costs = parse_number<double>(f[10], kColumns[10]);
    r.time = parse_number<double>(f[11], kColumns[11]);
    rows.push_back(std::move(r));
  }
  return rows;
}

ordered to_json(const MetricsRow& r) {
  return ordered{{"instance", r.instance}, {"phase", r.phase},
              {"round", r.round},       {"model", r.model},
              {"Alt", r.alterations},   {"Ret", r.retimings},
              {"Res", r.reserves},      {"Canc", r.cancellations},
              {"Pen", r.penalty},       {"Shortfall", r.shortfall},
              {"Costs", r.costs},       {"Time", r.time}};
}

ordered to_json(const MetricsAverage& a) {
  return ordered{{"Alt", a.alterations}, {"Ret", a.retimings},
              {"Res", a.reserves},    {"Canc", a.cancellations},
              {"Pen", a.penalty},     {"Shortfall", a.shortfall},
              {"Costs", a.costs},     {"Time", a.time}};
}

std::string format_json(std::span<const MetricsRow> rows) {
  ordered doc;
  doc["columns"] = kColumns;
  doc["rows"] = ordered::array();
  for (const MetricsRow& r : rows) doc["rows"].push_back(to_json(r));
  if (!rows.empty()) doc["average"] = to_json(average_row(rows));
  return doc.dump(2) + "\n";
}

std::vector<MetricsRow> parse_json(std::string_view text) {
  std::vector<MetricsRow> rows;
  try {
    const json doc = json::parse(text);
    for (const json& j : doc.at("rows")) {
      MetricsRow r;
      j.at("instance").get_to(r.instance);
      j.at("phase").get_to(r.phase);
      j.at("round").get_to(r.round);
      j.at("model").get_to(r.model);
      j.at("Alt").get_to(r.alterations);
      j.at("Ret").get_to(r.retimings);
      j.at("Res").get_to(r.reserves);
      j.at("Canc").get_to(r.cancellations);
      j.at("Pen").get_to(r.penalty);
      j.at("Shortfall").get_to(r.shortfall);
      j.at("Costs").get_to(r.costs);
      j.at("Time").get_to(r.time);
      rows.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("report: ") + e.what());
  }
  return rows;
}

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  throw std::invalid_argument("unknown report format '" + std::string(name) + "'");
}

MetricsAverage average_row(std::span<const MetricsRow> rows) {
  MetricsAverage a;
  if (rows.empty()) return a;
  for (const MetricsRow& r : rows) {
    a.alterations += r.alterations;
    a.retimings += r.retimings;
    a.reserves += r.reserves;
    a.cancellations += r.cancellations;
    a.penalty += r.penalty;
    a.shortfall += r.shortfall;
    a.costs += r.costs;
    a.time += r.time;
  }
  const double n = static_cast<double>(rows.size());
  for (double* v : {&a.alterations, &a.retimings, &a.reserves, &a.cancellations,
                    &a.penalty, &a.shortfall, &a.costs, &a.time}) {
    *v /= n;
  }
  return a;
}

std::string format_report(std::span<const MetricsRow> rows, ReportFormat format) {
  return format == ReportFormat::kCsv ? format_csv(rows) : format_json(rows);
}

std::vector<MetricsRow> parse_report(std::string_view text, ReportFormat format) {
  return format == ReportFormat::kCsv ? parse_csv(text) : parse_json(text);
}

}  // namespace crewrec
