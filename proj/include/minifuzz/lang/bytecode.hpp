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


// Instruction set and program image for the instrumented stack VM.

#ifndef MINIFUZZ_LANG_BYTECODE_HPP_
#define MINIFUZZ_LANG_BYTECODE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "minifuzz/common.hpp"
#include "minifuzz/lang/ast.hpp"

namespace minifuzz::lang {

enum class Op : std::uint8_t {
  kPush,         // a: constant index
  kLoadLocal,    // a: slot
  kStoreLocal,   // a: slot
  kLoadGlobal,   // a: global index
  kStoreGlobal,  // a: global index
  kLoadMap,      // a: global index; pops key
  kStoreMap,     // a: global index; pops value, key
  kAdd, kSub, kMul, kDiv, kMod,
  kEq, kNe, kLt, kLe, kGt, kGe,
  kNot, kAnd, kOr,
  kCallValue, kCaller, kTimestamp, kNumber, kBalance,
  kTransfer,      // pops amount, recipient
  kSend,          // pops amount, recipient; pushes success flag
  kDelegateCall,  // pops target
  kPop,
  kJump,    // a: target
  kBranch,  // a: site id; pops k then x; jumps to then/else target of the site
  kRevert,
  kStop,
};

const char* to_string(Op op);

enum class Relation : std::uint8_t { kEq, kNe, kLt, kLe, kGt, kGe };

const char* to_string(Relation r);
Relation negate(Relation r);
bool holds(Relation r, const u256& x, const u256& k);

enum class Direction : std::uint8_t { kThen = 0, kElse = 1 };

inline Direction opposite(Direction d) {
  return d == Direction::kThen ? Direction::kElse : Direction::kThen;
}
const char* to_string(Direction d);

enum class SiteKind : std::uint8_t { kIf, kWhile, kFor, kRequire };

const char* to_string(SiteKind k);

// Half-open range of instruction indices within one function.
struct PcRange {
  int begin = 0;
  int end = 0;

  bool empty() const { return begin >= end; }
  bool contains(int pc) const { return pc >= begin && pc < end; }
};

// One conditional site: the single comparison a condition atom lowers to.
struct BranchSite {
  int id = 0;
  int function = 0;
  int pc = 0;  // index of the kBranch instruction
  Relation relation = Relation::kEq;
  SiteKind kind = SiteKind::kIf;
  SourceLoc loc;
  int depth = 1;  // enclosing conditional sites, itself included
  int then_target = 0;
  int else_target = 0;
  // Code controlled by each direction. Empty when the direction falls
  // through to code outside the statement (or reverts).
  PcRange then_region;
  PcRange else_region;

  const PcRange& region(Direction d) const {
    return d == Direction::kThen ? then_region : else_region;
  }
};

// Edge identifier: one direction of one site.
using EdgeId = int;
inline EdgeId edge_id(int site, Direction d) { return site * 2 + static_cast<int>(d); }
inline int edge_site(EdgeId e) { return e / 2; }
inline Direction edge_direction(EdgeId e) { return static_cast<Direction>(e % 2); }

struct Instr {
  Op op = Op::kStop;
  std::int32_t a = 0;
};

struct FunctionCode {
  std::string name;
  std::vector<Type> params;
  bool payable = false;
  int local_count = 0;
  std::vector<Instr> code;
  std::vector<SourceLoc> source_map;  // parallel to code
};

struct GlobalSlot {
  std::string name;
  Type type = Type::kUint;
  u256 init = 0;
};

struct BytecodeProgram {
  std::string contract;
  std::vector<GlobalSlot> globals;
  std::vector<FunctionCode> functions;
  std::vector<u256> constants;
  std::vector<BranchSite> branch_table;  // indexed by site id

  int function_index(const std::string& name) const;
  int total_edges() const { return static_cast<int>(branch_table.size()) * 2; }
};

}  // namespace minifuzz::lang

#endif  // MINIFUZZ_LANG_BYTECODE_HPP_
