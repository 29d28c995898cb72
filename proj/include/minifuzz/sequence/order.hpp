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


// Invocation ordering: order priorities from global read/write dependencies
// and prolongation of the ordered sequence.

#ifndef MINIFUZZ_SEQUENCE_ORDER_HPP_
#define MINIFUZZ_SEQUENCE_ORDER_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "minifuzz/lang/ast.hpp"
#include "minifuzz/vm/trace.hpp"

namespace minifuzz::sequence {

// One instance of the ordered sequence with concrete arguments.
using SequenceVariant = std::vector<vm::FunctionCall>;

// accesses[i] lists the global accesses of function i in source order. The
// priority of i counts (write in i, read in j != i) pairs on the same global.
std::vector<std::uint64_t> order_priority(
    const std::vector<std::vector<lang::GlobalAccess>>& accesses);

// Access lists of a contract indexed by function declaration order.
std::vector<std::vector<lang::GlobalAccess>> accesses_by_function(const lang::Contract& c);

// Function ids sorted by priority, highest first; ties keep declaration order.
std::vector<int> build_sequence(const lang::Contract& contract);
std::vector<int> build_sequence(const std::vector<std::uint64_t>& priority);

// Number of call arguments that differ between two variants of the same
// ordered sequence.
int differing_parameters(const SequenceVariant& a, const SequenceVariant& b);

// Unordered pairs (i < j) of variants that differ enough to be worth
// chaining: at least one argument when the sequence takes at most two in
// total, otherwise at least two.
std::vector<std::pair<int, int>> select_pairs(const std::vector<SequenceVariant>& variants);

bool admissible_pair(const SequenceVariant& a, const SequenceVariant& b);

// Runs `second` after `first` from whatever state `first` leaves behind.
SequenceVariant prolong(const SequenceVariant& first, const SequenceVariant& second);

}  // namespace minifuzz::sequence

#endif  // MINIFUZZ_SEQUENCE_ORDER_HPP_
