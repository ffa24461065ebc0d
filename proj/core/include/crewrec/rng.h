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

// Counter-based random draws. A draw is a pure function of the seed and a
// key such as (round, crew, flight), so two runs that ask the same question
// get the same answer no matter how many other draws happened in between.
// This keeps the disruption realisations of paired experiment arms
// identical wherever their schedules coincide.
//
// Mixing uses the SplitMix64 finaliser; uniforms take the top 53 bits.

#ifndef CREWREC_RNG_H_
#define CREWREC_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace crewrec {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// FNV-1a of a name, for keys that must not depend on container positions.
constexpr std::uint64_t key_of(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t seed) : seed_(seed) {}

  // Independent generator for a sub-stream, e.g. one recovery round.
  constexpr CounterRng stream(std::uint64_t tag) const {
    return CounterRng(splitmix64(seed_ ^ splitmix64(tag + 0x632be59bd9b4e019ULL)));
  }

  constexpr std::uint64_t bits(std::initializer_list<std::uint64_t> key) const {
    std::uint64_t h = splitmix64(seed_);
    for (std::uint64_t k : key) h = splitmix64(h ^ k);
    return h;
  }

  // Uniform on [0, 1).
  constexpr double uniform(std::initializer_list<std::uint64_t> key) const {
    return static_cast<double>(bits(key) >> 11) * 0x1.0p-53;
  }

  constexpr bool bernoulli(double p, std::initializer_list<std::uint64_t> key) const {
    return uniform(key) < p;
  }

  constexpr std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

}  // namespace crewrec

#endif  // CREWREC_RNG_H_
