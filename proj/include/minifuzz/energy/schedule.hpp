// Copyright 2026 The MiniFuzz Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef MINIFUZZ_ENERGY_SCHEDULE_HPP_
#define MINIFUZZ_ENERGY_SCHEDULE_HPP_

#include <cstdint>
#include <set>
#include <vector>

#include "minifuzz/lang/bytecode.hpp"

namespace minifuzz::energy {

struct EnergySchedule {
  std::uint64_t base = 64;    // E, mutation-execution iterations
  double alpha = 2.0;         // bonus coefficient for vulnerable branches
  double rarity_power = 1.0;  // r(R) = R^rarity_power

  double r(int rarity) const;
};

// (r(R) or 1) * E for rare or plain branches, plus alpha * E when vulnerable.
std::uint64_t energy_for(int rarity, bool rare, bool vulnerable, const EnergySchedule& s);

// Stable partition: entries whose covered edges intersect `vulnerable` first.
// covered[i] lists the edges of entry i; returns the new order of indices.
std::vector<int> feedback_priority(const std::vector<std::vector<lang::EdgeId>>& covered,
                                   const std::set<lang::EdgeId>& vulnerable);

}  // namespace minifuzz::energy

#endif  // MINIFUZZ_ENERGY_SCHEDULE_HPP_
