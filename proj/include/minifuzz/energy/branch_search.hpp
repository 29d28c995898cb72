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


// Classification of branches as rare (deeply nested) or vulnerable (able to
// reach a security-relevant statement).

#ifndef MINIFUZZ_ENERGY_BRANCH_SEARCH_HPP_
#define MINIFUZZ_ENERGY_BRANCH_SEARCH_HPP_

#include <map>
#include <set>
#include <vector>

#include "minifuzz/lang/bytecode.hpp"
#include "minifuzz/vm/trace.hpp"

namespace minifuzz::energy {

enum class VulnKind {
  kTransfer,
  kSend,
  kDelegateCall,
  kBalanceRead,
  kTimestampRead,
  kNumberRead,
  kOverflowArith,
};

using VulnerableSet = std::set<VulnKind>;

VulnerableSet default_vulnerable_set();

// Statement kinds an opcode belongs to, if any. Overflow-capable arithmetic
// is deliberately absent: it only counts when a wrap is observed.
bool opcode_matches(lang::Op op, const VulnerableSet& t);

// True when the code a branch direction controls contains a statement of a
// kind in `t` (static forward slice over the direction's region).
bool statically_vulnerable(const lang::BytecodeProgram& program, lang::EdgeId edge,
                           const VulnerableSet& t);

// Branches are identified by their end edge (site and direction).
struct BranchSearch {
  std::map<lang::EdgeId, int> rarity;  // every discovered branch
  std::set<lang::EdgeId> rare;
  std::set<lang::EdgeId> vulnerable;

  friend bool operator==(const BranchSearch&, const BranchSearch&) = default;
};

// Walks every path step of every trace. A branch is rare when its rarity is
// at least two, and vulnerable when its static slice contains a statement of
// `t` or, for overflow, when a later wrap event in the same frame lies in the
// region it controls.
BranchSearch search_branches(const std::vector<vm::ExecutionTrace>& traces,
                             const lang::BytecodeProgram& program, const VulnerableSet& t);

// Adds one trace to an existing result.
void accumulate(BranchSearch& out, const vm::ExecutionTrace& trace,
                const lang::BytecodeProgram& program, const VulnerableSet& t);

}  // namespace minifuzz::energy

#endif  // MINIFUZZ_ENERGY_BRANCH_SEARCH_HPP_
