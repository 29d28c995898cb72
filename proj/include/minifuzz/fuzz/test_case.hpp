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


#ifndef MINIFUZZ_FUZZ_TEST_CASE_HPP_
#define MINIFUZZ_FUZZ_TEST_CASE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "minifuzz/lang/bytecode.hpp"
#include "minifuzz/vm/trace.hpp"

namespace minifuzz::fuzz {

using Bytes = std::vector<std::uint8_t>;

struct TestCase {
  std::vector<vm::FunctionCall> calls;

  friend bool operator==(const TestCase&, const TestCase&) = default;
};

// Byte layout of an encoded case. The header (call count, then one function
// id per call, two bytes each) is never mutated, so arity is preserved.
// Each call then contributes its arguments, attached value, a one-byte
// caller index, block timestamp and block number; numbers are 32-byte
// big-endian words.
enum class FieldKind : std::uint8_t { kArg, kValue, kCaller, kTimestamp, kNumber };

struct Field {
  int call = 0;
  FieldKind kind = FieldKind::kArg;
  int arg = 0;             // argument index for kArg
  lang::Type type = lang::Type::kUint;
  std::size_t offset = 0;  // byte offset into the encoding
  int width_bits = 256;    // meaningful low-order bits
};

inline constexpr std::size_t kWordBytes = 32;

// Fields of a case in encoding order.
std::vector<Field> layout(const TestCase& test, const lang::BytecodeProgram& program);

Bytes encode(const TestCase& test, const std::vector<u256>& callers);

// Inverse of encode. Fails on truncated input, unknown function ids or a
// caller index outside `callers`.
std::optional<TestCase> decode(const Bytes& bytes, const lang::BytecodeProgram& program,
                               const std::vector<u256>& callers);

// Decodable, well-typed, payable constraint respected, caller known.
bool validity_check(const TestCase& test, const lang::BytecodeProgram& program,
                    const std::vector<u256>& callers);

u256 read_word(const Bytes& bytes, std::size_t offset);
void write_word(Bytes& bytes, std::size_t offset, const u256& v);

std::string hex_bytes(const Bytes& bytes);

}  // namespace minifuzz::fuzz

#endif  // MINIFUZZ_FUZZ_TEST_CASE_HPP_
