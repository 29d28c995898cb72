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


#ifndef MINIFUZZ_VM_STATE_HPP_
#define MINIFUZZ_VM_STATE_HPP_

#include <map>
#include <vector>

#include "minifuzz/common.hpp"
#include "minifuzz/lang/bytecode.hpp"

namespace minifuzz::vm {

// Accounts and contract address of the simulated chain.
struct Genesis {
  u256 contract_address = u256(0xC0FFEE);
  u256 contract_balance = kEther * 100;
  std::vector<u256> callers = {u256(0x10001), u256(0x10002), u256(0x10003)};
  u256 caller_balance = kEther * 1000;
};

struct WorldState {
  std::vector<u256> scalars;                 // by global index; unused for maps
  std::vector<std::map<u256, u256>> maps;    // by global index; unused for scalars
  std::map<u256, u256> balances;             // external accounts
  u256 contract_balance = 0;

  static WorldState genesis(const lang::BytecodeProgram& program, const Genesis& g);

  u256 balance_of(const u256& account) const;
  // Contract balance plus every external balance, in 512 bits so the sum
  // cannot wrap.
  u512 total_balance() const;

  friend bool operator==(const WorldState&, const WorldState&) = default;
};

}  // namespace minifuzz::vm

#endif  // MINIFUZZ_VM_STATE_HPP_
