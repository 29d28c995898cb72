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


#include "minifuzz/vm/state.hpp"

namespace minifuzz::vm {

WorldState WorldState::genesis(const lang::BytecodeProgram& program, const Genesis& g) {
  WorldState s;
  s.scalars.resize(program.globals.size());
  s.maps.resize(program.globals.size());
  for (std::size_t i = 0; i < program.globals.size(); ++i)
    s.scalars[i] = program.globals[i].init;
  for (const auto& c : g.callers) s.balances[c] = g.caller_balance;
  s.contract_balance = g.contract_balance;
  return s;
}

u256 WorldState::balance_of(const u256& account) const {
  auto it = balances.find(account);
  return it == balances.end() ? u256(0) : it->second;
}

u512 WorldState::total_balance() const {
  u512 sum = contract_balance;
  for (const auto& [_, b] : balances) sum += b;
  return sum;
}

}  // namespace minifuzz::vm
