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


#include <sstream>

#include "minifuzz/lang/parser.hpp"

namespace minifuzz::lang {
namespace {

void print_expr(std::ostream& os, const Expr& e) {
  switch (e.kind) {
    case ExprKind::kIntLit:
    case ExprKind::kBoolLit:
      os << e.text;
      return;
    case ExprKind::kVar: os << e.text; return;
    case ExprKind::kIndex:
      os << e.text << "[";
      print_expr(os, *e.lhs);
      os << "]";
      return;
    case ExprKind::kMsgValue: os << "msg.value"; return;
    case ExprKind::kMsgSender: os << "msg.sender"; return;
    case ExprKind::kBlockTimestamp: os << "block.timestamp"; return;
    case ExprKind::kBlockNumber: os << "block.number"; return;
    case ExprKind::kBalanceThis: os << "balance(this)"; return;
    case ExprKind::kSend:
      os << "send(";
      print_expr(os, *e.lhs);
      os << ", ";
      print_expr(os, *e.rhs);
      os << ")";
      return;
    case ExprKind::kNot:
      os << "!";
      print_expr(os, *e.lhs);
      return;
    case ExprKind::kBinary:
      os << "(";
      print_expr(os, *e.lhs);
      os << " " << to_string(e.op) << " ";
      print_expr(os, *e.rhs);
      os << ")";
      return;
  }
}

void indent(std::ostream& os, int depth) {
  for (int i = 0; i < depth; ++i) os << "  ";
}

void print_block(std::ostream& os, const Block& b, int depth);

// Statement without trailing ';', as used in for-loop headers.
void print_simple(std::ostream& os, const Stmt& s) {
  if (s.kind == StmtKind::kLocal) {
    os << to_string(s.decl_type) << " " << s.name;
    if (s.value) {
      os << " = ";
      print_expr(os, *s.value);
    }
    return;
  }
  os << s.name;
  if (s.index) {
    os << "[";
    print_expr(os, *s.index);
    os << "]";
  }
  os << " = ";
  print_expr(os, *s.value);
}

void print_stmt(std::ostream& os, const Stmt& s, int depth) {
  indent(os, depth);
  switch (s.kind) {
    case StmtKind::kLocal:
    case StmtKind::kAssign:
      print_simple(os, s);
      os << ";\n";
      return;
    case StmtKind::kIf:
      os << "if (";
      print_expr(os, *s.value);
      os << ") ";
      print_block(os, s.then_body, depth);
      if (s.has_else) {
        os << " else ";
        print_block(os, s.else_body, depth);
      }
      os << "\n";
      return;
    case StmtKind::kWhile:
      os << "while (";
      print_expr(os, *s.value);
      os << ") ";
      print_block(os, s.then_body, depth);
      os << "\n";
      return;
    case StmtKind::kFor:
      os << "for (";
      if (s.init) print_simple(os, *s.init);
      os << "; ";
      print_expr(os, *s.value);
      os << "; ";
      if (s.update) print_simple(os, *s.update);
      os << ") ";
      print_block(os, s.then_body, depth);
      os << "\n";
      return;
    case StmtKind::kRequire:
      os << "require(";
      print_expr(os, *s.value);
      os << ");\n";
      return;
    case StmtKind::kTransfer:
    case StmtKind::kSend:
      os << (s.kind == StmtKind::kSend ? "send(" : "transfer(");
      print_expr(os, *s.target);
      os << ", ";
      print_expr(os, *s.value);
      os << ");\n";
      return;
    case StmtKind::kDelegateCall:
      os << "delegatecall(";
      print_expr(os, *s.target);
      os << ");\n";
      return;
    case StmtKind::kRevert:
      os << "revert;\n";
      return;
  }
}

void print_block(std::ostream& os, const Block& b, int depth) {
  os << "{\n";
  for (const auto& s : b) print_stmt(os, *s, depth + 1);
  indent(os, depth);
  os << "}";
}

}  // namespace

std::string print(const Contract& c) {
  std::ostringstream os;
  os << "contract " << c.name << " {\n";
  for (const auto& g : c.globals) {
    os << "  " << to_string(g.type) << " " << g.name;
    if (g.init) os << " = " << g.init_text;
    os << ";\n";
  }
  for (const auto& f : c.functions) {
    os << "  fn " << f.name << "(";
    for (std::size_t i = 0; i < f.params.size(); ++i) {
      if (i) os << ", ";
      os << to_string(f.params[i].type) << " " << f.params[i].name;
    }
    os << ")" << (f.payable ? " payable " : " ");
    print_block(os, f.body, 1);
    os << "\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace minifuzz::lang
