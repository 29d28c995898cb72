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


#include "minifuzz/energy/branch_search.hpp"

namespace minifuzz::energy {

VulnerableSet default_vulnerable_set() {
  return {VulnKind::kTransfer,      VulnKind::kSend,       VulnKind::kDelegateCall,
          VulnKind::kBalanceRead,   VulnKind::kTimestampRead, VulnKind::kNumberRead,
          VulnKind::kOverflowArith};
}

bool opcode_matches(lang::Op op, const VulnerableSet& t) {
  switch (op) {
    case lang::Op::kTransfer: return t.count(VulnKind::kTransfer) > 0;
    case lang::Op::kSend: return t.count(VulnKind::kSend) > 0;
    case lang::Op::kDelegateCall: return t.count(VulnKind::kDelegateCall) > 0;
    case lang::Op::kBalance: return t.count(VulnKind::kBalanceRead) > 0;
    case lang::Op::kTimestamp: return t.count(VulnKind::kTimestampRead) > 0;
    case lang::Op::kNumber: return t.count(VulnKind::kNumberRead) > 0;
    default: return false;
  }
}

bool statically_vulnerable(const lang::BytecodeProgram& program, lang::EdgeId edge,
                           const VulnerableSet& t) {
  const lang::BranchSite& site = program.branch_table[lang::edge_site(edge)];
  const lang::PcRange& region = site.region(lang::edge_direction(edge));
  const auto& code = program.functions[site.function].code;
  for (int pc = region.begin; pc < region.end; ++pc)
    if (opcode_matches(code[pc].op, t)) return true;
  return false;
}

void accumulate(BranchSearch& out, const vm::ExecutionTrace& trace,
                const lang::BytecodeProgram& program, const VulnerableSet& t) {
  const bool overflow = t.count(VulnKind::kOverflowArith) > 0;
  for (std::size_t i = 0; i < trace.path.size(); ++i) {
    const vm::PathStep& step = trace.path[i];
    lang::EdgeId edge = lang::edge_id(step.site, step.dir);
    out.rarity.emplace(edge, step.rarity);
    if (step.rarity >= 2) out.rare.insert(edge);
    if (out.vulnerable.count(edge)) continue;
    bool vulnerable = statically_vulnerable(program, edge, t);
    if (!vulnerable && overflow) {
      const lang::PcRange& region = program.branch_table[step.site].region(step.dir);
      for (const auto& e : trace.events) {
        if (e.kind == vm::EventKind::kOverflowWrap && e.step > static_cast<int>(i) &&
            e.frame == step.frame && region.contains(e.pc)) {
          vulnerable = true;
          break;
        }
      }
    }
    if (vulnerable) out.vulnerable.insert(edge);
  }
}

BranchSearch search_branches(const std::vector<vm::ExecutionTrace>& traces,
                             const lang::BytecodeProgram& program, const VulnerableSet& t) {
  BranchSearch out;
  for (const auto& trace : traces) accumulate(out, trace, program, t);
  return out;
}

}  // namespace minifuzz::energy
