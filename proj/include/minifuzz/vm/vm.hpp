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


#ifndef MINIFUZZ_VM_VM_HPP_
#define MINIFUZZ_VM_VM_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "minifuzz/lang/bytecode.hpp"
#include "minifuzz/vm/state.hpp"
#include "minifuzz/vm/trace.hpp"

namespace minifuzz::vm {

inline constexpr std::uint64_t kDefaultStepLimit = 100000;

struct ExecOptions {
  std::uint64_t step_limit = kDefaultStepLimit;
  u256 contract_address = Genesis{}.contract_address;
  // When positive, a Transfer to the caller re-invokes the called function
  // (value 0, same arguments) up to this many frames deep.
  int reentry_depth = 0;
};

// Runs one call. A revert or step-limit leaves `state` untouched.
ExecutionTrace execute_call(const lang::BytecodeProgram& program, WorldState& state,
                            const FunctionCall& call, const ExecOptions& options = {});

// Threads `state` through the calls in order; reverted calls are skipped over.
std::vector<ExecutionTrace> execute_sequence(const lang::BytecodeProgram& program,
                                             WorldState& state,
                                             const std::vector<FunctionCall>& calls,
                                             const ExecOptions& options = {});

// Executes `call` with its caller acting as an attack contract that calls
// back into the same function whenever it receives a transfer.
ExecutionTrace attack_reenter(const lang::BytecodeProgram& program, WorldState& state,
                              const FunctionCall& call, int depth,
                              ExecOptions options = {});

// Checks arity, argument types, payability and value bounds.
bool well_formed(const lang::BytecodeProgram& program, const FunctionCall& call);

}  // namespace minifuzz::vm

#endif  // MINIFUZZ_VM_VM_HPP_
