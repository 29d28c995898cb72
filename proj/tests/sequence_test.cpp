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


#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <set>

#include "minifuzz/sequence/order.hpp"
#include "minifuzz/vm/vm.hpp"
#include "support/testing.hpp"

namespace minifuzz::sequence {
namespace {

using lang::AccessOp;
using lang::GlobalAccess;
using Table = std::vector<std::vector<GlobalAccess>>;
using PairSet = std::set<std::pair<int, int>>;

GlobalAccess acc(const std::string& v, AccessOp op) { return {v, op, {}}; }

// Direct evaluation of the double sum with a binary op flag (write 0, read 1).
std::vector<std::uint64_t> naive_priority(const Table& t) {
  std::vector<std::uint64_t> op(t.size(), 0);
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (i == j) continue;
      for (const auto& a : t[i])
        for (const auto& b : t[j]) {
          int vop_jp = b.op == AccessOp::kRead ? 1 : 0;
          int vop_ik = a.op == AccessOp::kRead ? 1 : 0;
          int cmp = a.var == b.var ? 1 : 0;
          op[i] += vop_jp * (1 - vop_ik) * cmp;
        }
    }
  return op;
}

Table random_table(Rng& rng) {
  Table t(1 + rng.below(6));
  const char* vars[] = {"a", "b", "c", "d", "e"};
  for (auto& f : t) {
    int n = static_cast<int>(rng.below(9));
    for (int k = 0; k < n; ++k)
      f.push_back(acc(vars[rng.below(5)], rng.chance(1, 2) ? AccessOp::kRead : AccessOp::kWrite));
  }
  return t;
}

vm::FunctionCall call(int f, std::vector<u256> args) {
  vm::FunctionCall c;
  c.function = f;
  c.args = std::move(args);
  return c;
}

TEST(OrderPriority, GuessNum) {
  auto c = testing::build_corpus("guessnum");
  auto start = std::chrono::steady_clock::now();
  std::vector<std::uint64_t> op = order_priority(accesses_by_function(c.contract));
  std::vector<int> seq = build_sequence(c.contract);
  auto us = std::chrono::duration_cast<std::chrono::microseconds>(
                std::chrono::steady_clock::now() - start).count();
  EXPECT_EQ(op[c.contract.function_index("guess")], 6u);
  EXPECT_EQ(op[c.contract.function_index("getReward")], 2u);
  EXPECT_EQ(seq, (std::vector<int>{c.contract.function_index("guess"),
                                   c.contract.function_index("getReward")}));
  EXPECT_LT(us, 1000);
}

TEST(OrderPriority, WriterBeforeReader) {
  Table t = {{acc("x", AccessOp::kWrite)}, {acc("x", AccessOp::kRead), acc("x", AccessOp::kRead)}};
  EXPECT_EQ(order_priority(t), (std::vector<std::uint64_t>{2, 0}));
}

TEST(OrderPriority, SingleFunctionIsZero) {
  Table t = {{acc("x", AccessOp::kWrite), acc("x", AccessOp::kRead)}};
  EXPECT_EQ(order_priority(t), (std::vector<std::uint64_t>{0}));
}

TEST(OrderPriority, MatchesDirectSumOnRandomTables) {
  Rng rng(31);
  for (int n = 0; n < 200; ++n) {
    Table t = random_table(rng);
    ASSERT_EQ(order_priority(t), naive_priority(t));
  }
}

TEST(OrderPriority, DuplicationScalesQuadratically) {
  Rng rng(32);
  for (int n = 0; n < 100; ++n) {
    Table t = random_table(rng);
    const std::uint64_t m = 2 + rng.below(3);
    Table scaled = t;
    for (auto& f : scaled) {
      auto once = f;
      for (std::uint64_t r = 1; r < m; ++r) f.insert(f.end(), once.begin(), once.end());
    }
    auto op = order_priority(t);
    auto big = order_priority(scaled);
    for (std::size_t i = 0; i < op.size(); ++i) ASSERT_EQ(big[i], op[i] * m * m);
    ASSERT_EQ(build_sequence(op), build_sequence(big));
  }
}

TEST(BuildSequence, TiesKeepDeclarationOrder) {
  EXPECT_EQ(build_sequence(std::vector<std::uint64_t>{0, 0, 0}), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(build_sequence(std::vector<std::uint64_t>{1, 3, 1, 3}),
            (std::vector<int>{1, 3, 0, 2}));
}

TEST(BuildSequence, Crowdfund) {
  auto c = testing::build_corpus("crowdfund");
  EXPECT_EQ(build_sequence(c.contract), (std::vector<int>{c.contract.function_index("donate"),
                                                          c.contract.function_index("withdraw")}));
}

TEST(SelectPairs, SingleParameterThreshold) {
  std::vector<SequenceVariant> v = {{call(0, {1}), call(1, {})},
                                    {call(0, {2}), call(1, {})},
                                    {call(0, {2}), call(1, {})}};
  auto pairs = select_pairs(v);
  EXPECT_EQ(PairSet(pairs.begin(), pairs.end()),
            (PairSet{{0, 1}, {0, 2}}));
}

TEST(SelectPairs, ThreeParameterThreshold) {
  std::vector<SequenceVariant> v = {{call(0, {1, 1}), call(1, {1})},
                                    {call(0, {1, 2}), call(1, {1})},
                                    {call(0, {2, 2}), call(1, {2})}};
  auto pairs = select_pairs(v);
  EXPECT_EQ(PairSet(pairs.begin(), pairs.end()),
            (PairSet{{0, 2}, {1, 2}}));
}

TEST(SelectPairs, IdenticalVariantsRejected) {
  std::vector<SequenceVariant> v(3, SequenceVariant{call(0, {5}), call(1, {})});
  EXPECT_TRUE(select_pairs(v).empty());
}

TEST(SelectPairs, InvariantUnderPermutation) {
  Rng rng(33);
  for (int n = 0; n < 100; ++n) {
    std::vector<SequenceVariant> v;
    int count = 2 + static_cast<int>(rng.below(5));
    int arity = static_cast<int>(rng.below(4));
    for (int i = 0; i < count; ++i) {
      std::vector<u256> args;
      for (int a = 0; a < arity; ++a) args.push_back(rng.below(2));
      v.push_back({call(0, args), call(1, {})});
    }
    std::vector<int> perm(count);
    for (int i = 0; i < count; ++i) perm[i] = i;
    for (int i = count; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    std::vector<SequenceVariant> shuffled(count);
    for (int i = 0; i < count; ++i) shuffled[i] = v[perm[i]];
    auto canon = [](std::vector<std::pair<int, int>> ps, const std::vector<int>* map) {
      PairSet out;
      for (auto [a, b] : ps) {
        if (map) a = (*map)[a], b = (*map)[b];
        out.insert({std::min(a, b), std::max(a, b)});
      }
      return out;
    };
    ASSERT_EQ(canon(select_pairs(v), nullptr), canon(select_pairs(shuffled), &perm));
  }
}

TEST(Prolong, CrowdfundConcatenation) {
  auto c = testing::build_corpus("crowdfund");
  int donate = c.contract.function_index("donate"), withdraw = c.contract.function_index("withdraw");
  SequenceVariant s1 = {call(donate, {300}), call(withdraw, {})};
  SequenceVariant s2 = {call(donate, {200}), call(withdraw, {})};
  ASSERT_TRUE(admissible_pair(s1, s2));
  SequenceVariant s = prolong(s1, s2);
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s[0].args[0], 300);
  EXPECT_EQ(s[2].args[0], 200);
  EXPECT_EQ(s[3].function, withdraw);
}

bool pays(const vm::ExecutionTrace& t) {
  for (const auto& e : t.events)
    if (e.kind == vm::EventKind::kTransfer && e.committed) return true;
  return false;
}

TEST(Prolong, SecondHalfStartsFromFirstHalfState) {
  auto c = testing::build_corpus("guessnum");
  int guess = c.contract.function_index("guess"), reward = c.contract.function_index("getReward");
  vm::Genesis g;
  auto with_caller = [&](vm::FunctionCall fc, u256 value) {
    fc.caller = g.callers[0];
    fc.value = value;
    return fc;
  };
  SequenceVariant a = {with_caller(call(guess, {7}), kFinney * 50), with_caller(call(reward, {}), 0)};
  SequenceVariant b = {with_caller(call(guess, {8}), kFinney * 50), with_caller(call(reward, {}), 0)};
  ASSERT_TRUE(admissible_pair(a, b));
  SequenceVariant s = prolong(b, a);
  vm::WorldState state = vm::WorldState::genesis(c.program, g);
  auto traces = vm::execute_sequence(c.program, state, s);
  ASSERT_EQ(traces.size(), 4u);
  EXPECT_FALSE(pays(traces[1]));  // nothing won yet
  EXPECT_TRUE(pays(traces[3]));   // pays out the second guess
  // With the halves swapped the second getReward sees the zeroed balance.
  vm::WorldState swapped = vm::WorldState::genesis(c.program, g);
  auto t2 = vm::execute_sequence(c.program, swapped, prolong(a, b));
  EXPECT_TRUE(pays(t2[1]));
  EXPECT_FALSE(pays(t2[3]));
}

}  // namespace
}  // namespace minifuzz::sequence
