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


#ifndef MINIFUZZ_VM_TRACE_LOG_HPP_
#define MINIFUZZ_VM_TRACE_LOG_HPP_

#include <ostream>

#include "minifuzz/lang/bytecode.hpp"
#include "minifuzz/vm/trace.hpp"

namespace minifuzz::vm {

// Writes the tab-separated trace log described in the README. `call_index`
// is the position of the call within its sequence.
void write_trace_log(std::ostream& out, const lang::BytecodeProgram& program,
                     const ExecutionTrace& trace, int call_index);

}  // namespace minifuzz::vm

#endif  // MINIFUZZ_VM_TRACE_LOG_HPP_
