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


#ifndef MINIFUZZ_FUZZ_DISTANCE_HPP_
#define MINIFUZZ_FUZZ_DISTANCE_HPP_

#include "minifuzz/common.hpp"
#include "minifuzz/lang/bytecode.hpp"
#include "minifuzz/vm/trace.hpp"

namespace minifuzz::fuzz {

// How far (x, k) is from satisfying `x c k`. Zero exactly when it holds:
// strict orderings need one more unit than their non-strict forms.
u512 branch_distance(lang::Relation c, const u256& x, const u256& k);

// Distance of a recorded comparison to the direction it did not take (or
// to `missed` in general): the condition of that side is the site's
// relation for then and its negation for else.
u512 distance(const vm::ComparisonRecord& record, lang::Direction missed);

}  // namespace minifuzz::fuzz

#endif  // MINIFUZZ_FUZZ_DISTANCE_HPP_
