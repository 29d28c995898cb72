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

#ifndef MINIFUZZ_LANG_PARSER_HPP_
#define MINIFUZZ_LANG_PARSER_HPP_

#include <string>
#include <string_view>

#include "minifuzz/lang/ast.hpp"

namespace minifuzz::lang {

// Parses and type-checks a MiniSol contract, then fills in its access table.
// Throws Diagnostic on syntax errors, duplicate identifiers, type mismatches
// and undeclared names.
Contract parse(std::string_view source);

// Canonical pretty-printer. parse(print(c)) is structurally equal to c.
std::string print(const Contract& contract);

// Per-function global reads and writes in evaluation order, at occurrence
// granularity. Locals and global initializers never appear.
AccessTable analyze_accesses(const Contract& contract);

}  // namespace minifuzz::lang

#endif  // MINIFUZZ_LANG_PARSER_HPP_
