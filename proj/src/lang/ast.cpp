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


#include "minifuzz/lang/ast.hpp"

namespace minifuzz::lang {

std::string to_string(Type type) {
  switch (type) {
    case Type::kUint: return "uint256";
    case Type::kBool: return "bool";
    case Type::kAddress: return "address";
    case Type::kMap: return "map(address => uint256)";
  }
  return "?";
}

std::string to_string(BinOp op) {
  switch (op) {
    case BinOp::kAdd: return "+";
    case BinOp::kSub: return "-";
    case BinOp::kMul: return "*";
    case BinOp::kDiv: return "/";
    case BinOp::kMod: return "%";
    case BinOp::kEq: return "==";
    case BinOp::kNe: return "!=";
    case BinOp::kLt: return "<";
    case BinOp::kLe: return "<=";
    case BinOp::kGt: return ">";
    case BinOp::kGe: return ">=";
    case BinOp::kAnd: return "&&";
    case BinOp::kOr: return "||";
  }
  return "?";
}

bool is_comparison(BinOp op) {
  return op == BinOp::kEq || op == BinOp::kNe || op == BinOp::kLt ||
         op == BinOp::kLe || op == BinOp::kGt || op == BinOp::kGe;
}

bool is_arithmetic(BinOp op) {
  return op == BinOp::kAdd || op == BinOp::kSub || op == BinOp::kMul ||
         op == BinOp::kDiv || op == BinOp::kMod;
}

int Contract::global_index(const std::string& n) const {
  for (int i = 0; i < static_cast<int>(globals.size()); ++i)
    if (globals[i].name == n) return i;
  return -1;
}

int Contract::function_index(const std::string& n) const {
  for (int i = 0; i < static_cast<int>(functions.size()); ++i)
    if (functions[i].name == n) return i;
  return -1;
}

namespace {

bool eq(const Expr* a, const Expr* b);
bool eq(const Stmt* a, const Stmt* b);

bool eq(const Block& a, const Block& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!eq(a[i].get(), b[i].get())) return false;
  return true;
}

bool eq(const Expr* a, const Expr* b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprKind::kIntLit:
    case ExprKind::kBoolLit:
      return a->value == b->value;
    case ExprKind::kVar:
      return a->text == b->text;
    case ExprKind::kIndex:
      return a->text == b->text && eq(a->lhs.get(), b->lhs.get());
    case ExprKind::kBinary:
      if (a->op != b->op) return false;
      break;
    default:
      break;
  }
  return eq(a->lhs.get(), b->lhs.get()) && eq(a->rhs.get(), b->rhs.get());
}

bool eq(const Stmt* a, const Stmt* b) {
  if (!a || !b) return a == b;
  return a->kind == b->kind && a->decl_type == b->decl_type && a->name == b->name &&
         a->has_else == b->has_else && eq(a->index.get(), b->index.get()) &&
         eq(a->value.get(), b->value.get()) && eq(a->target.get(), b->target.get()) &&
         eq(a->then_body, b->then_body) && eq(a->else_body, b->else_body) &&
         eq(a->init.get(), b->init.get()) && eq(a->update.get(), b->update.get());
}

}  // namespace

bool structurally_equal(const Contract& a, const Contract& b) {
  if (a.name != b.name || a.globals.size() != b.globals.size() ||
      a.functions.size() != b.functions.size())
    return false;
  for (std::size_t i = 0; i < a.globals.size(); ++i) {
    const auto& x = a.globals[i];
    const auto& y = b.globals[i];
    if (x.type != y.type || x.name != y.name || x.init != y.init) return false;
  }
  for (std::size_t i = 0; i < a.functions.size(); ++i) {
    const auto& x = a.functions[i];
    const auto& y = b.functions[i];
    if (x.name != y.name || x.payable != y.payable || x.params.size() != y.params.size())
      return false;
    for (std::size_t p = 0; p < x.params.size(); ++p)
      if (x.params[p].type != y.params[p].type || x.params[p].name != y.params[p].name)
        return false;
    if (!eq(x.body, y.body)) return false;
  }
  return true;
}

}  // namespace minifuzz::lang
