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


// Test-case generation and mutation.

#ifndef MINIFUZZ_FUZZ_MUTATE_HPP_
#define MINIFUZZ_FUZZ_MUTATE_HPP_

#include <array>
#include <vector>

#include "minifuzz/common.hpp"
#include "minifuzz/fuzz/test_case.hpp"
#include "minifuzz/lang/ast.hpp"
#include "minifuzz/lang/bytecode.hpp"
#include "minifuzz/vm/state.hpp"

namespace minifuzz::fuzz {

inline const u256 kBaseTimestamp = u256(1700000000);
inline const u256 kBaseBlockNumber = u256(18000000);

// Values worth trying: fixed boundary values, literals compared against in
// the source, and initial values of globals that take part in comparisons.
struct ValuePool {
  std::vector<u256> values;     // sorted, unique
  std::vector<u256> addresses;  // callers, the contract itself, zero

  bool contains(const u256& v) const;
};

std::vector<u256> fixed_interesting_values();

ValuePool harvest_pool(const lang::Contract& contract, const vm::Genesis& genesis);

struct GenContext {
  const lang::BytecodeProgram& program;
  const ValuePool& pool;
  const vm::Genesis& genesis;
};

// Fresh case calling `order` once each, arguments mixed from the pool, small
// random numbers and full-width random words.
TestCase init_case(const std::vector<int>& order, const GenContext& ctx, Rng& rng);

// Every field drawn uniformly over its type's range, with no pool and no
// feedback: the random-generation baseline.
TestCase random_case(const std::vector<int>& order, const GenContext& ctx, Rng& rng);

enum class Mutator : std::uint8_t {
  kBitFlip,
  kMultiBitFlip,
  kByteFlip,
  kArith,
  kSplice,
  kValueFromPool,
  kCallerSwap,
  kBlockNudge,
};

inline constexpr int kMutatorCount = 8;

using MutatorWeights = std::array<int, kMutatorCount>;

MutatorWeights default_weights();

inline constexpr int kMutationAttempts = 8;

// Applies one weighted-random operator to the encoded case. Outputs that
// fail validity_check are redrawn; after kMutationAttempts failures the
// input is returned unchanged.
TestCase mutate(const TestCase& test, const GenContext& ctx, Rng& rng,
                const MutatorWeights& weights = default_weights());

// Single-operator primitives, exposed for testing.
void flip_bit(Bytes& bytes, const Field& field, int bit);
void set_field(Bytes& bytes, const Field& field, const u256& v);
u256 get_field(const Bytes& bytes, const Field& field);

}  // namespace minifuzz::fuzz

#endif  // MINIFUZZ_FUZZ_MUTATE_HPP_
