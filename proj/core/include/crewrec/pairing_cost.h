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

#ifndef CREWREC_PAIRING_COST_H_
#define CREWREC_PAIRING_COST_H_

#include <array>
#include <limits>
#include <string>
#include <vector>

#include "crewrec/instance.h"

namespace crewrec {

// Which cost model prices pairings. The traditional model drops robustness
// penalties and charges a flat fee for every standby reserve it calls.
enum class CostModel { kReliable, kTraditional };

inline constexpr Minutes kNoConnection = std::numeric_limits<Minutes>::max();

// One crew member's duty for the day, as a sequence of flight copies.
struct Pairing {
  int crew = -1;
  std::vector<int> legs;
  Minutes fly_time = 0;
  // Elapsed time from leaving home base to returning there, including ground
  // transport at either end.
  Minutes duty_span = 0;
  Minutes duty_start = 0;
  Minutes duty_end = 0;
  // Shortest sit between consecutive legs; kNoConnection for < 2 legs.
  Minutes min_sit = kNoConnection;
  std::string start_base;
  std::string end_base;
  bool altered = false;
  std::vector<int> retimed_legs;

  bool empty() const { return legs.empty(); }
};

// Derives the resource totals of `legs` flown by crew member `crew`.
Pairing make_pairing(const Instance& instance, int crew, std::vector<int> legs);

// Violations of the duty-legality rules and crew availability, empty when
// the pairing may be flown. Checks fly time and duty span by duty class, sit
// time, rest (the duty window), location continuity via the ground network,
// reserve shift windows, the earliest-start labor rule and disruptions.
std::vector<std::string> legality_violations(const Instance& instance,
                                             const Pairing& pairing);

inline bool is_legal(const Instance& instance, const Pairing& pairing) {
  return legality_violations(instance, pairing).empty();
}

// Rest implied by the duty window: `min_rest` plus the slack to the window
// edge closest to the duty.
Minutes rest_time(const Instance& instance, const Pairing& pairing);

struct PenaltyEvaluation {
  std::array<double, 4> observed{};
  std::array<double, 4> threshold{};
  std::array<double, 4> contribution{};

  double total() const {
    return contribution[0] + contribution[1] + contribution[2] + contribution[3];
  }
};

double pay_and_credit(const Pairing& pairing, const CostParams& costs);

// Pay-and-credit from raw fly time and duty span.
double pay_and_credit(Minutes fly_time, Minutes duty_span, const CostParams& costs);

// (cap - slope*|observed - threshold|)^+ for one characteristic.
double penalty_term(double observed, double threshold, double cap, double slope);

PenaltyEvaluation evaluate_penalty(const Instance& instance,
                                   const Pairing& pairing);

inline double penalty(const Instance& instance, const Pairing& pairing) {
  return evaluate_penalty(instance, pairing).total();
}

double transport_cost(const Instance& instance, const Pairing& pairing);

struct PairingCostBreakdown {
  double pay_credit = 0.0;
  double transport = 0.0;
  double penalty = 0.0;
  double original = 0.0;
  double retime = 0.0;
  double alter = 0.0;
  double reserve_fee = 0.0;

  // max{PC + TC + PEN - c_o, 0} + RET + ALT (+ reserve fee).
  double total() const;
  // The part not attributable to individual legs: total() - retime.
  double non_leg_part() const { return total() - retime; }
};

// True when the published duty contains a flight the member can no longer
// operate, so that it has to change whatever the recovery does.
bool published_duty_broken(const Instance& instance, int crew);

// Charge for leaving a regular member with a flyable published duty
// without any pairing: an empty pairing differs from the published one like
// any other alteration. Zero for reserves, idle members and broken duties.
double idle_cost(const Instance& instance, int crew);

// Cost of the crew member's published pairing under `model`, used as the
// baseline c_o. Falls back to the stored value when none is published.
double original_cost(const Instance& instance, int crew, CostModel model);

// Cost of flying `pairing`; `original` is the crew member's baseline c_o.
PairingCostBreakdown pairing_cost(const Instance& instance,
                                  const Pairing& pairing, double original,
                                  CostModel model);

inline PairingCostBreakdown pairing_cost(const Instance& instance,
                                         const Pairing& pairing,
                                         CostModel model) {
  return pairing_cost(instance, pairing,
                      original_cost(instance, pairing.crew, model), model);
}

}  // namespace crewrec

#endif  // CREWREC_PAIRING_COST_H_
