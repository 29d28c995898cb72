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


#include "minifuzz/fuzz/distance.hpp"

namespace minifuzz::fuzz {

u512 branch_distance(lang::Relation c, const u256& x, const u256& k) {
  const u512 a = x;
  const u512 b = k;
  switch (c) {
    case lang::Relation::kEq: return a >= b ? a - b : b - a;
    case lang::Relation::kNe: return a == b ? 1 : 0;
    case lang::Relation::kLe: return a > b ? a - b : 0;
    case lang::Relation::kLt: return a >= b ? a - b + 1 : 0;
    case lang::Relation::kGe: return b > a ? b - a : 0;
    case lang::Relation::kGt: return b >= a ? b - a + 1 : 0;
  }
  return 0;
}

u512 distance(const vm::ComparisonRecord& record, lang::Direction missed) {
  lang::Relation c =
      missed == lang::Direction::kThen ? record.relation : lang::negate(record.relation);
  return branch_distance(c, record.x, record.k);
}

}  // namespace minifuzz::fuzz
