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

// Seeded hub-and-spoke flight days for experiments: aircraft rotate between
// the hub and outstations, regular crew fly one or two round trips, and
// reserves stand by on early and late shifts at the hub.

#ifndef CREWREC_SYNTHETIC_H_
#define CREWREC_SYNTHETIC_H_

#include <cstdint>
#include <vector>

#include "crewrec/instance.h"

namespace crewrec {

struct SyntheticConfig {
  std::uint64_t seed = 1;
  int aircraft = 5;
  int round_trips_per_aircraft = 2;
  // Reserves standing by per shift; the shift count is the vector size.
  // Shifts are staggered so that a later shift also ends later.
  std::vector<int> reserves_per_shift = {2, 2};
  int copies = 3;
  Minutes copy_interval = 5;
  Minutes min_turnaround = 30;
};

// Throws std::invalid_argument for non-positive sizes or more than three
// shifts.
Instance make_synthetic_instance(const SyntheticConfig& config);

}  // namespace crewrec

#endif  // CREWREC_SYNTHETIC_H_
