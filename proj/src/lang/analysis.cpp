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


#include "minifuzz/lang/parser.hpp"

namespace minifuzz::lang {
namespace {

class AccessCollector {
 public:
  explicit AccessCollector(const Contract& c) : c_(c) {}

  std::vector<GlobalAccess> collect(const Function& f) {
    out_.clear();
    block(f.body);
    return std::move(out_);
  }

 private:
  void read(const VarRef& ref, SourceLoc loc) {
    if (ref.scope == VarRef::Scope::kGlobal)
      out_.push_back({c_.globals[ref.index].name, AccessOp::kRead, loc});
  }

  void expr(const Expr& e) {
    switch (e.kind) {
      case ExprKind::kVar:
        read(e.ref, e.loc);
        return;
      case ExprKind::kIndex:
        read(e.ref, e.loc);
        expr(*e.lhs);
        return;
      default:
        if (e.lhs) expr(*e.lhs);
        if (e.rhs) expr(*e.rhs);
        return;
    }
  }

  void block(const Block& b) {
    for (const auto& s : b) stmt(*s);
  }

  // Reads of the right-hand side (and key) come before the write.
  void stmt(const Stmt& s) {
    switch (s.kind) {
      case StmtKind::kLocal:
        if (s.value) expr(*s.value);
        return;
      case StmtKind::kAssign:
        if (s.index) expr(*s.index);
        expr(*s.value);
        if (s.ref.scope == VarRef::Scope::kGlobal)
          out_.push_back({c_.globals[s.ref.index].name, AccessOp::kWrite, s.loc});
        return;
      case StmtKind::kIf:
        expr(*s.value);
        block(s.then_body);
        block(s.else_body);
        return;
      case StmtKind::kWhile:
        expr(*s.value);
        block(s.then_body);
        return;
      case StmtKind::kFor:
        if (s.init) stmt(*s.init);
        expr(*s.value);
        if (s.update) stmt(*s.update);
        block(s.then_body);
        return;
      case StmtKind::kRequire:
        expr(*s.value);
        return;
      case StmtKind::kTransfer:
      case StmtKind::kSend:
        expr(*s.target);
        expr(*s.value);
        return;
      case StmtKind::kDelegateCall:
        expr(*s.target);
        return;
      case StmtKind::kRevert:
        return;
    }
  }

  const Contract& c_;
  std::vector<GlobalAccess> out_;
};

}  // namespace

AccessTable analyze_accesses(const Contract& contract) {
  AccessTable table;
  AccessCollector collector(contract);
  for (const auto& f : contract.functions) table[f.name] = collector.collect(f);
  return table;
}

}  // namespace minifuzz::lang
