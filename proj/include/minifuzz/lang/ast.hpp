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

// Abstract syntax for MiniSol contracts.

#ifndef MINIFUZZ_LANG_AST_HPP_
#define MINIFUZZ_LANG_AST_HPP_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "minifuzz/common.hpp"

namespace minifuzz::lang {

enum class Type { kUint, kBool, kAddress, kMap };

std::string to_string(Type type);

enum class ExprKind {
  kIntLit,
  kBoolLit,
  kVar,
  kIndex,  // name[key]
  kMsgValue,
  kMsgSender,
  kBlockTimestamp,
  kBlockNumber,
  kBalanceThis,
  kSend,  // send(lhs, rhs) -> bool
  kNot,   // !lhs
  kBinary,
};

enum class BinOp {
  kAdd, kSub, kMul, kDiv, kMod,
  kEq, kNe, kLt, kLe, kGt, kGe,
  kAnd, kOr,
};

std::string to_string(BinOp op);
bool is_comparison(BinOp op);
bool is_arithmetic(BinOp op);

// Where a name resolved to. Filled in by the checker.
struct VarRef {
  enum class Scope { kUnresolved, kGlobal, kLocal } scope = Scope::kUnresolved;
  int index = -1;  // global index or local slot
};

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
  ExprKind kind{};
  SourceLoc loc;
  std::string text;  // literal spelling or identifier
  u256 value = 0;    // literal value
  BinOp op{};
  ExprPtr lhs;  // operand, key, or send target
  ExprPtr rhs;  // operand or send amount
  Type type = Type::kUint;
  VarRef ref;
};

enum class StmtKind {
  kLocal,        // type name (= value)?;
  kAssign,       // name = value;  or  name[index] = value;
  kIf,
  kWhile,
  kFor,
  kRequire,
  kTransfer,     // transfer(target, value);
  kSend,         // send(target, value);  result discarded
  kDelegateCall, // delegatecall(target);
  kRevert,
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;
using Block = std::vector<StmtPtr>;

struct Stmt {
  StmtKind kind{};
  SourceLoc loc;
  SourceLoc end_loc;  // closing brace of the last body, for compound statements
  Type decl_type = Type::kUint;
  std::string name;
  VarRef ref;
  ExprPtr index;   // map key for indexed assignment
  ExprPtr value;   // rhs, condition, or amount
  ExprPtr target;  // transfer/send/delegatecall address
  Block then_body;
  Block else_body;
  bool has_else = false;
  StmtPtr init;    // for-loop header
  StmtPtr update;
};

struct GlobalVar {
  Type type = Type::kUint;
  std::string name;
  SourceLoc loc;
  std::optional<u256> init;
  std::string init_text;
};

struct Param {
  Type type = Type::kUint;
  std::string name;
};

struct Function {
  std::string name;
  SourceLoc loc;
  std::vector<Param> params;
  bool payable = false;
  Block body;
  int local_count = 0;  // params included; set by the checker
};

enum class AccessOp { kWrite = 0, kRead = 1 };

struct GlobalAccess {
  std::string var;
  AccessOp op = AccessOp::kRead;
  SourceLoc site;

  friend bool operator==(const GlobalAccess&, const GlobalAccess&) = default;
};

using AccessTable = std::map<std::string, std::vector<GlobalAccess>>;

struct Contract {
  std::string name;
  std::vector<GlobalVar> globals;
  std::vector<Function> functions;
  AccessTable accesses;

  int global_index(const std::string& name) const;
  int function_index(const std::string& name) const;
};

// Structural equality, ignoring source positions and checker annotations.
bool structurally_equal(const Contract& a, const Contract& b);

}  // namespace minifuzz::lang

#endif  // MINIFUZZ_LANG_AST_HPP_
