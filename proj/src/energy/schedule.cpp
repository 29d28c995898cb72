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


#include "minifuzz/energy/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace minifuzz::energy {

double EnergySchedule::r(int rarity) const {
  return std::pow(static_cast<double>(rarity), rarity_power);
}

std::uint64_t energy_for(int rarity, bool rare, bool vulnerable, const EnergySchedule& s) {
  double e = static_cast<double>(s.base);
  double total = (rare ? s.r(rarity) * e : e) + (vulnerable ? s.alpha * e : 0.0);
  return static_cast<std::uint64_t>(std::llround(total));
}

std::vector<int> feedback_priority(const std::vector<std::vector<lang::EdgeId>>& covered,
                                   const std::set<lang::EdgeId>& vulnerable) {
  std::vector<int> order(covered.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_partition(order.begin(), order.end(), [&](int i) {
    return std::any_of(covered[i].begin(), covered[i].end(),
                       [&](lang::EdgeId e) { return vulnerable.count(e) > 0; });
  });
  return order;
}

}  // namespace minifuzz::energy
