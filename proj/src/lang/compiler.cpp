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


#include "minifuzz/lang/compiler.hpp"

#include <map>
#include <utility>

namespace minifuzz::lang {

const char* to_string(Op op) {
  static const char* const kNames[] = {
      "PUSH", "LOADL", "STOREL", "SLOAD", "SSTORE", "MLOAD", "MSTORE",
      "ADD", "SUB", "MUL", "DIV", "MOD",
      "EQ", "NE", "LT", "LE", "GT", "GE",
      "NOT", "AND", "OR",
      "CALLVALUE", "CALLER", "TIMESTAMP", "NUMBER", "BALANCE",
      "TRANSFER", "SEND", "DELEGATECALL", "POP", "JUMP", "BRANCH", "REVERT", "STOP"};
  return kNames[static_cast<int>(op)];
}

const char* to_string(Relation r) {
  static const char* const kNames[] = {"==", "!=", "<", "<=", ">", ">="};
  return kNames[static_cast<int>(r)];
}

Relation negate(Relation r) {
  switch (r) {
    case Relation::kEq: return Relation::kNe;
    case Relation::kNe: return Relation::kEq;
    case Relation::kLt: return Relation::kGe;
    case Relation::kLe: return Relation::kGt;
    case Relation::kGt: return Relation::kLe;
    case Relation::kGe: return Relation::kLt;
  }
  return r;
}

bool holds(Relation r, const u256& x, const u256& k) {
  switch (r) {
    case Relation::kEq: return x == k;
    case Relation::kNe: return x != k;
    case Relation::kLt: return x < k;
    case Relation::kLe: return x <= k;
    case Relation::kGt: return x > k;
    case Relation::kGe: return x >= k;
  }
  return false;
}

const char* to_string(Direction d) { return d == Direction::kThen ? "then" : "else"; }

const char* to_string(SiteKind k) {
  switch (k) {
    case SiteKind::kIf: return "if";
    case SiteKind::kWhile: return "while";
    case SiteKind::kFor: return "for";
    case SiteKind::kRequire: return "require";
  }
  return "?";
}

int BytecodeProgram::function_index(const std::string& name) const {
  for (std::size_t i = 0; i < functions.size(); ++i)
    if (functions[i].name == name) return static_cast<int>(i);
  return -1;
}

namespace {

// A condition after pushing negations down to comparison atoms.
struct Atom {
  Relation rel = Relation::kNe;
  const Expr* x = nullptr;
  const Expr* k = nullptr;  // null: compare x against zero
  SourceLoc loc;
};

struct Cond {
  enum class Join { kSingle, kAnd, kOr } join = Join::kSingle;
  std::vector<Atom> atoms;
};

Relation relation_of(BinOp op) {
  switch (op) {
    case BinOp::kEq: return Relation::kEq;
    case BinOp::kNe: return Relation::kNe;
    case BinOp::kLt: return Relation::kLt;
    case BinOp::kLe: return Relation::kLe;
    case BinOp::kGt: return Relation::kGt;
    default: return Relation::kGe;
  }
}

Cond combine(Cond a, Cond b, Cond::Join join, SourceLoc loc) {
  auto compatible = [join](const Cond& c) {
    return c.join == Cond::Join::kSingle || c.join == join;
  };
  if (!compatible(a) || !compatible(b))
    throw Diagnostic(loc, "unsupported construct: condition mixes && and ||");
  Cond out;
  out.join = join;
  out.atoms = std::move(a.atoms);
  out.atoms.insert(out.atoms.end(), b.atoms.begin(), b.atoms.end());
  return out;
}

Cond normalize(const Expr& e, bool negated) {
  if (e.kind == ExprKind::kNot) return normalize(*e.lhs, !negated);
  if (e.kind == ExprKind::kBinary && (e.op == BinOp::kAnd || e.op == BinOp::kOr)) {
    bool conj = (e.op == BinOp::kAnd) != negated;
    return combine(normalize(*e.lhs, negated), normalize(*e.rhs, negated),
                   conj ? Cond::Join::kAnd : Cond::Join::kOr, e.loc);
  }
  Cond c;
  if (e.kind == ExprKind::kBinary && is_comparison(e.op)) {
    Relation r = relation_of(e.op);
    c.atoms.push_back({negated ? negate(r) : r, e.lhs.get(), e.rhs.get(), e.loc});
  } else {
    c.atoms.push_back({negated ? Relation::kEq : Relation::kNe, &e, nullptr, e.loc});
  }
  return c;
}

class FunctionCompiler {
 public:
  FunctionCompiler(BytecodeProgram& prog, std::map<u256, int>& constant_index, int fn)
      : prog_(prog), constants_(constant_index), fn_(fn), out_(prog.functions[fn]) {}

  void run(const Function& f) {
    block(f.body, 0);
    emit(Op::kStop, 0, f.loc);
  }

 private:
  int pc() const { return static_cast<int>(out_.code.size()); }

  int emit(Op op, int a, SourceLoc loc) {
    out_.code.push_back({op, a});
    out_.source_map.push_back(loc);
    return pc() - 1;
  }

  int constant(const u256& v) {
    auto [it, inserted] = constants_.try_emplace(v, static_cast<int>(prog_.constants.size()));
    if (inserted) prog_.constants.push_back(v);
    return it->second;
  }

  void expr(const Expr& e) {
    switch (e.kind) {
      case ExprKind::kIntLit:
        emit(Op::kPush, constant(e.value), e.loc);
        break;
      case ExprKind::kBoolLit:
        emit(Op::kPush, constant(e.value != 0 ? 1 : 0), e.loc);
        break;
      case ExprKind::kVar:
        emit(e.ref.scope == VarRef::Scope::kLocal ? Op::kLoadLocal : Op::kLoadGlobal,
             e.ref.index, e.loc);
        break;
      case ExprKind::kIndex:
        expr(*e.lhs);
        emit(Op::kLoadMap, e.ref.index, e.loc);
        break;
      case ExprKind::kMsgValue: emit(Op::kCallValue, 0, e.loc); break;
      case ExprKind::kMsgSender: emit(Op::kCaller, 0, e.loc); break;
      case ExprKind::kBlockTimestamp: emit(Op::kTimestamp, 0, e.loc); break;
      case ExprKind::kBlockNumber: emit(Op::kNumber, 0, e.loc); break;
      case ExprKind::kBalanceThis: emit(Op::kBalance, 0, e.loc); break;
      case ExprKind::kSend:
        expr(*e.lhs);
        expr(*e.rhs);
        emit(Op::kSend, 0, e.loc);
        break;
      case ExprKind::kNot:
        expr(*e.lhs);
        emit(Op::kNot, 0, e.loc);
        break;
      case ExprKind::kBinary: {
        expr(*e.lhs);
        expr(*e.rhs);
        static const Op kOps[] = {Op::kAdd, Op::kSub, Op::kMul, Op::kDiv, Op::kMod,
                                  Op::kEq,  Op::kNe,  Op::kLt,  Op::kLe,  Op::kGt,
                                  Op::kGe,  Op::kAnd, Op::kOr};
        emit(kOps[static_cast<int>(e.op)], 0, e.loc);
        break;
      }
    }
  }

  void block(const Block& b, int depth) {
    for (const auto& s : b) stmt(*s, depth);
  }

  // Emits the comparison atoms of a condition, one site each. Branch targets
  // are patched by the caller once the layout is known.
  std::vector<int> atoms(const Cond& c, SiteKind kind, int depth, std::vector<int>& starts) {
    std::vector<int> sites;
    for (std::size_t i = 0; i < c.atoms.size(); ++i) {
      const Atom& a = c.atoms[i];
      starts.push_back(pc());
      expr(*a.x);
      if (a.k) expr(*a.k);
      else emit(Op::kPush, constant(0), a.loc);
      BranchSite site;
      site.id = static_cast<int>(prog_.branch_table.size());
      site.function = fn_;
      site.relation = a.rel;
      site.kind = kind;
      site.loc = a.loc;
      site.depth = c.join == Cond::Join::kAnd ? depth + 1 + static_cast<int>(i) : depth + 1;
      site.pc = emit(Op::kBranch, site.id, a.loc);
      prog_.branch_table.push_back(site);
      sites.push_back(site.id);
    }
    return sites;
  }

  BranchSite& site(int id) { return prog_.branch_table[id]; }

  // Wires targets and regions of a condition chain. `then_start` is where
  // the fully satisfied condition continues, `fail` where it exits, and
  // [then_start, then_end) / [else_start, else_end) are the guarded bodies.
  void wire(const Cond& c, const std::vector<int>& sites, const std::vector<int>& starts,
            int then_start, int then_end, int fail, PcRange else_body) {
    const std::size_t n = sites.size();
    const bool conj = c.join != Cond::Join::kOr;
    for (std::size_t i = 0; i < n; ++i) {
      BranchSite& s = site(sites[i]);
      const bool last = i + 1 == n;
      if (conj) {
        s.then_target = last ? then_start : starts[i + 1];
        s.else_target = fail;
        s.then_region = {last ? then_start : starts[i + 1], then_end};
        s.else_region = else_body;
      } else {
        s.then_target = then_start;
        s.else_target = last ? fail : starts[i + 1];
        s.then_region = {then_start, then_end};
        s.else_region = last ? else_body : PcRange{};
      }
    }
  }

  int body_depth(const Cond& c, int depth) const {
    return c.join == Cond::Join::kAnd ? depth + static_cast<int>(c.atoms.size())
                                      : depth + 1;
  }

  void stmt(const Stmt& s, int depth) {
    switch (s.kind) {
      case StmtKind::kLocal:
        if (s.value) expr(*s.value);
        else emit(Op::kPush, constant(0), s.loc);
        emit(Op::kStoreLocal, s.ref.index, s.loc);
        break;
      case StmtKind::kAssign:
        if (s.index) {
          expr(*s.index);
          expr(*s.value);
          emit(Op::kStoreMap, s.ref.index, s.loc);
        } else {
          expr(*s.value);
          emit(s.ref.scope == VarRef::Scope::kLocal ? Op::kStoreLocal : Op::kStoreGlobal,
               s.ref.index, s.loc);
        }
        break;
      case StmtKind::kIf: {
        Cond c = normalize(*s.value, false);
        std::vector<int> starts;
        auto sites = atoms(c, SiteKind::kIf, depth, starts);
        int then_start = pc();
        block(s.then_body, body_depth(c, depth));
        int jump = s.has_else ? emit(Op::kJump, 0, s.end_loc) : -1;
        int else_start = pc();
        block(s.else_body, depth + 1);
        int end = pc();
        if (jump >= 0) out_.code[jump].a = end;
        PcRange else_body = s.has_else ? PcRange{else_start, end} : PcRange{};
        wire(c, sites, starts, then_start, else_start, else_start, else_body);
        break;
      }
      case StmtKind::kWhile:
      case StmtKind::kFor: {
        if (s.init) stmt(*s.init, depth);
        Cond c = normalize(*s.value, false);
        std::vector<int> starts;
        int loop = pc();
        auto sites = atoms(c, s.kind == StmtKind::kFor ? SiteKind::kFor : SiteKind::kWhile,
                           depth, starts);
        int then_start = pc();
        block(s.then_body, body_depth(c, depth));
        if (s.update) stmt(*s.update, body_depth(c, depth));
        emit(Op::kJump, loop, s.end_loc);
        int end = pc();
        wire(c, sites, starts, then_start, end, end, PcRange{});
        break;
      }
      case StmtKind::kRequire: {
        Cond c = normalize(*s.value, false);
        std::vector<int> starts;
        auto sites = atoms(c, SiteKind::kRequire, depth, starts);
        int fail = emit(Op::kRevert, 0, s.loc);
        int cont = pc();
        // Only the remaining atoms are guarded; the continuation is not a body.
        wire(c, sites, starts, cont, fail, fail, PcRange{});
        for (int id : sites) {
          BranchSite& b = site(id);
          if (b.then_region.begin == cont) b.then_region = {};
        }
        break;
      }
      case StmtKind::kTransfer:
        expr(*s.target);
        expr(*s.value);
        emit(Op::kTransfer, 0, s.loc);
        break;
      case StmtKind::kSend:
        expr(*s.target);
        expr(*s.value);
        emit(Op::kSend, 0, s.loc);
        emit(Op::kPop, 0, s.loc);
        break;
      case StmtKind::kDelegateCall:
        expr(*s.target);
        emit(Op::kDelegateCall, 0, s.loc);
        break;
      case StmtKind::kRevert:
        emit(Op::kRevert, 0, s.loc);
        break;
    }
  }

  BytecodeProgram& prog_;
  std::map<u256, int>& constants_;
  int fn_;
  FunctionCode& out_;
};

}  // namespace

BytecodeProgram compile(const Contract& contract) {
  BytecodeProgram prog;
  prog.contract = contract.name;
  for (const auto& g : contract.globals)
    prog.globals.push_back({g.name, g.type, g.init.value_or(0)});
  prog.functions.reserve(contract.functions.size());
  for (const auto& f : contract.functions) {
    FunctionCode code;
    code.name = f.name;
    for (const auto& p : f.params) code.params.push_back(p.type);
    code.payable = f.payable;
    code.local_count = f.local_count;
    prog.functions.push_back(std::move(code));
  }
  std::map<u256, int> constant_index;
  for (std::size_t i = 0; i < contract.functions.size(); ++i)
    FunctionCompiler(prog, constant_index, static_cast<int>(i)).run(contract.functions[i]);
  return prog;
}

}  // namespace minifuzz::lang
