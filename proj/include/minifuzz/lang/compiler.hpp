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


#ifndef MINIFUZZ_LANG_COMPILER_HPP_
#define MINIFUZZ_LANG_COMPILER_HPP_

#include "minifuzz/lang/ast.hpp"
#include "minifuzz/lang/bytecode.hpp"

namespace minifuzz::lang {

// Lowers a checked contract to bytecode. Every condition atom becomes one
// branch site: `a && b` nests b inside a, `a || b` makes them siblings.
// Throws Diagnostic for constructs it cannot lower (a condition mixing && and
// || after negation normalisation).
BytecodeProgram compile(const Contract& contract);

}  // namespace minifuzz::lang

#endif  // MINIFUZZ_LANG_COMPILER_HPP_
