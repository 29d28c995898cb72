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

#include <cctype>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

namespace minifuzz::lang {
namespace {

enum class Tok {
  kIdent, kInt, kPunct, kEnd,
};

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  SourceLoc loc;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> k = {
      "contract", "fn",      "payable", "uint256", "bool",    "address",
      "map",      "if",      "else",    "while",   "for",     "require",
      "transfer", "send",    "delegatecall", "revert", "true", "false",
      "msg",      "block",   "balance", "this",    "finney",
  };
  return k;
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    SourceLoc loc{line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      out.push_back({Tok::kIdent, std::string(src.substr(i, j - i)), loc});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      if (c == '0' && j + 1 < src.size() && (src[j + 1] == 'x' || src[j + 1] == 'X')) {
        j += 2;
        while (j < src.size() && std::isxdigit(static_cast<unsigned char>(src[j]))) ++j;
      } else {
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      if (j < src.size() &&
          (std::isalpha(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        throw Diagnostic(loc, "malformed number literal");
      out.push_back({Tok::kInt, std::string(src.substr(i, j - i)), loc});
      advance(j - i);
      continue;
    }
    static const char* const kTwo[] = {"==", "!=", "<=", ">=", "&&", "||", "=>"};
    bool matched = false;
    for (const char* p : kTwo) {
      if (src.substr(i, 2) == p) {
        out.push_back({Tok::kPunct, p, loc});
        advance(2);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::string_view("{}()[];,=<>+-*/%!.").find(c) != std::string_view::npos) {
      out.push_back({Tok::kPunct, std::string(1, c), loc});
      advance(1);
      continue;
    }
    throw Diagnostic(loc, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::kEnd, "", SourceLoc{line, col}});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Contract parse_contract() {
    Contract c;
    expect_word("contract");
    c.name = expect_ident("contract name");
    expect("{");
    while (is_type_start()) c.globals.push_back(parse_global());
    while (peek_word("fn")) c.functions.push_back(parse_function());
    expect("}");
    if (cur().kind != Tok::kEnd) fail("expected end of input after contract");
    return c;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& ahead(std::size_t n) const {
    return toks_[std::min(pos_ + n, toks_.size() - 1)];
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Diagnostic(cur().loc, msg);
  }
  bool peek(const char* p) const {
    return cur().kind == Tok::kPunct && cur().text == p;
  }
  bool peek_word(const char* w) const {
    return cur().kind == Tok::kIdent && cur().text == w;
  }
  bool accept(const char* p) {
    if (!peek(p)) return false;
    ++pos_;
    return true;
  }
  void expect(const char* p) {
    if (!accept(p)) {
      std::string got = cur().kind == Tok::kEnd ? "end of input" : "'" + cur().text + "'";
      fail(std::string("expected '") + p + "' but found " + got);
    }
  }
  void expect_word(const char* w) {
    if (!peek_word(w)) fail(std::string("expected '") + w + "'");
    ++pos_;
  }
  std::string expect_ident(const char* what) {
    if (cur().kind != Tok::kIdent || keywords().count(cur().text))
      fail(std::string("expected ") + what);
    return toks_[pos_++].text;
  }

  bool is_type_start() const {
    return peek_word("uint256") || peek_word("bool") || peek_word("address") ||
           peek_word("map");
  }

  Type parse_type() {
    if (peek_word("uint256")) { ++pos_; return Type::kUint; }
    if (peek_word("bool")) { ++pos_; return Type::kBool; }
    if (peek_word("address")) { ++pos_; return Type::kAddress; }
    expect_word("map");
    expect("(");
    expect_word("address");
    expect("=>");
    expect_word("uint256");
    expect(")");
    return Type::kMap;
  }

  GlobalVar parse_global() {
    GlobalVar g;
    g.loc = cur().loc;
    g.type = parse_type();
    g.name = expect_ident("global name");
    if (accept("=")) {
      if (peek_word("true") || peek_word("false")) {
        g.init = peek_word("true") ? 1 : 0;
        g.init_text = cur().text;
        ++pos_;
      } else {
        auto [value, text] = parse_number();
        g.init = value;
        g.init_text = text;
      }
    }
    expect(";");
    return g;
  }

  std::pair<u256, std::string> parse_number() {
    if (cur().kind != Tok::kInt) fail("expected number literal");
    Token t = toks_[pos_++];
    u256 v;
    try {
      v = parse_u256(t.text);
    } catch (const std::exception&) {
      throw Diagnostic(t.loc, "number literal out of range");
    }
    std::string text = t.text;
    if (peek_word("finney")) {
      ++pos_;
      u512 wide = u512(v) * u512(kFinney);
      if (wide > u512(kMaxU256)) throw Diagnostic(t.loc, "number literal out of range");
      v *= kFinney;
      text += " finney";
    }
    return {v, text};
  }

  Function parse_function() {
    Function f;
    f.loc = cur().loc;
    expect_word("fn");
    f.name = expect_ident("function name");
    expect("(");
    if (!peek(")")) {
      do {
        Param p;
        p.type = parse_type();
        if (p.type == Type::kMap) fail("mapping parameters are not supported");
        p.name = expect_ident("parameter name");
        f.params.push_back(std::move(p));
      } while (accept(","));
    }
    expect(")");
    if (peek_word("payable")) {
      ++pos_;
      f.payable = true;
    }
    f.body = parse_block(nullptr);
    return f;
  }

  Block parse_block(SourceLoc* end) {
    expect("{");
    Block b;
    while (!peek("}")) {
      if (cur().kind == Tok::kEnd) fail("expected '}' before end of input");
      b.push_back(parse_stmt());
    }
    if (end) *end = cur().loc;
    expect("}");
    return b;
  }

  StmtPtr parse_simple(bool allow_decl) {
    auto s = std::make_unique<Stmt>();
    s->loc = cur().loc;
    if (allow_decl && is_type_start()) {
      s->kind = StmtKind::kLocal;
      s->decl_type = parse_type();
      if (s->decl_type == Type::kMap) fail("local mappings are not supported");
      s->name = expect_ident("variable name");
      if (accept("=")) s->value = parse_expr();
      return s;
    }
    s->kind = StmtKind::kAssign;
    s->name = expect_ident("statement");
    if (accept("[")) {
      s->index = parse_expr();
      expect("]");
    }
    expect("=");
    s->value = parse_expr();
    return s;
  }

  StmtPtr parse_stmt() {
    SourceLoc loc = cur().loc;
    if (peek_word("if")) {
      ++pos_;
      auto s = std::make_unique<Stmt>();
      s->kind = StmtKind::kIf;
      s->loc = loc;
      expect("(");
      s->value = parse_expr();
      expect(")");
      s->then_body = parse_block(&s->end_loc);
      if (peek_word("else")) {
        ++pos_;
        s->has_else = true;
        if (peek_word("if")) {
          s->else_body.push_back(parse_stmt());
          s->end_loc = s->else_body.back()->end_loc;
        } else {
          s->else_body = parse_block(&s->end_loc);
        }
      }
      return s;
    }
    if (peek_word("while")) {
      ++pos_;
      auto s = std::make_unique<Stmt>();
      s->kind = StmtKind::kWhile;
      s->loc = loc;
      expect("(");
      s->value = parse_expr();
      expect(")");
      s->then_body = parse_block(&s->end_loc);
      return s;
    }
    if (peek_word("for")) {
      ++pos_;
      auto s = std::make_unique<Stmt>();
      s->kind = StmtKind::kFor;
      s->loc = loc;
      expect("(");
      if (!peek(";")) s->init = parse_simple(true);
      expect(";");
      s->value = parse_expr();
      expect(";");
      if (!peek(")")) s->update = parse_simple(false);
      expect(")");
      s->then_body = parse_block(&s->end_loc);
      return s;
    }
    auto s = std::make_unique<Stmt>();
    s->loc = loc;
    if (peek_word("require")) {
      ++pos_;
      s->kind = StmtKind::kRequire;
      expect("(");
      s->value = parse_expr();
      expect(")");
    } else if (peek_word("transfer") || peek_word("send")) {
      s->kind = peek_word("send") ? StmtKind::kSend : StmtKind::kTransfer;
      ++pos_;
      expect("(");
      s->target = parse_expr();
      expect(",");
      s->value = parse_expr();
      expect(")");
    } else if (peek_word("delegatecall")) {
      ++pos_;
      s->kind = StmtKind::kDelegateCall;
      expect("(");
      s->target = parse_expr();
      expect(")");
    } else if (peek_word("revert")) {
      ++pos_;
      s->kind = StmtKind::kRevert;
    } else {
      s = parse_simple(true);
    }
    expect(";");
    return s;
  }

  // Precedence climbing: || < && < comparison < additive < multiplicative < unary.
  ExprPtr parse_expr() { return parse_or(); }

  ExprPtr binary(BinOp op, ExprPtr l, ExprPtr r, SourceLoc loc) {
    auto e = std::make_unique<Expr>();
    e->kind = ExprKind::kBinary;
    e->op = op;
    e->loc = loc;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
  }

  ExprPtr parse_or() {
    auto l = parse_and();
    while (peek("||")) {
      SourceLoc loc = cur().loc;
      ++pos_;
      l = binary(BinOp::kOr, std::move(l), parse_and(), loc);
    }
    return l;
  }

  ExprPtr parse_and() {
    auto l = parse_cmp();
    while (peek("&&")) {
      SourceLoc loc = cur().loc;
      ++pos_;
      l = binary(BinOp::kAnd, std::move(l), parse_cmp(), loc);
    }
    return l;
  }

  ExprPtr parse_cmp() {
    auto l = parse_add();
    static const std::pair<const char*, BinOp> kOps[] = {
        {"==", BinOp::kEq}, {"!=", BinOp::kNe}, {"<=", BinOp::kLe},
        {">=", BinOp::kGe}, {"<", BinOp::kLt},  {">", BinOp::kGt}};
    for (auto [p, op] : kOps) {
      if (peek(p)) {
        SourceLoc loc = cur().loc;
        ++pos_;
        auto r = parse_add();
        for (auto [p2, op2] : kOps) {
          (void)op2;
          if (peek(p2)) fail("chained comparisons need parentheses");
        }
        return binary(op, std::move(l), std::move(r), loc);
      }
    }
    return l;
  }

  ExprPtr parse_add() {
    auto l = parse_mul();
    while (peek("+") || peek("-")) {
      BinOp op = peek("+") ? BinOp::kAdd : BinOp::kSub;
      SourceLoc loc = cur().loc;
      ++pos_;
      l = binary(op, std::move(l), parse_mul(), loc);
    }
    return l;
  }

  ExprPtr parse_mul() {
    auto l = parse_unary();
    while (peek("*") || peek("/") || peek("%")) {
      BinOp op = peek("*") ? BinOp::kMul : peek("/") ? BinOp::kDiv : BinOp::kMod;
      SourceLoc loc = cur().loc;
      ++pos_;
      l = binary(op, std::move(l), parse_unary(), loc);
    }
    return l;
  }

  ExprPtr parse_unary() {
    if (peek("!")) {
      auto e = std::make_unique<Expr>();
      e->kind = ExprKind::kNot;
      e->loc = cur().loc;
      ++pos_;
      e->lhs = parse_unary();
      return e;
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    auto e = std::make_unique<Expr>();
    e->loc = cur().loc;
    if (accept("(")) {
      auto inner = parse_expr();
      expect(")");
      return inner;
    }
    if (cur().kind == Tok::kInt) {
      e->kind = ExprKind::kIntLit;
      std::tie(e->value, e->text) = parse_number();
      return e;
    }
    if (peek_word("true") || peek_word("false")) {
      e->kind = ExprKind::kBoolLit;
      e->value = peek_word("true") ? 1 : 0;
      e->text = cur().text;
      ++pos_;
      return e;
    }
    if (peek_word("msg")) {
      ++pos_;
      expect(".");
      if (peek_word("value")) {
        e->kind = ExprKind::kMsgValue;
      } else if (peek_word("sender")) {
        e->kind = ExprKind::kMsgSender;
      } else {
        fail("expected 'value' or 'sender' after 'msg.'");
      }
      ++pos_;
      return e;
    }
    if (peek_word("block")) {
      ++pos_;
      expect(".");
      if (peek_word("timestamp")) {
        e->kind = ExprKind::kBlockTimestamp;
      } else if (peek_word("number")) {
        e->kind = ExprKind::kBlockNumber;
      } else {
        fail("expected 'timestamp' or 'number' after 'block.'");
      }
      ++pos_;
      return e;
    }
    if (peek_word("balance")) {
      ++pos_;
      expect("(");
      expect_word("this");
      expect(")");
      e->kind = ExprKind::kBalanceThis;
      return e;
    }
    if (peek_word("send")) {
      ++pos_;
      e->kind = ExprKind::kSend;
      expect("(");
      e->lhs = parse_expr();
      expect(",");
      e->rhs = parse_expr();
      expect(")");
      return e;
    }
    e->text = expect_ident("expression");
    if (accept("[")) {
      e->kind = ExprKind::kIndex;
      e->lhs = parse_expr();
      expect("]");
    } else {
      e->kind = ExprKind::kVar;
    }
    return e;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Name resolution and type checking.
class Checker {
 public:
  explicit Checker(Contract& c) : c_(c) {}

  void run() {
    std::set<std::string> names;
    for (int i = 0; i < static_cast<int>(c_.globals.size()); ++i) {
      const auto& g = c_.globals[i];
      if (!names.insert(g.name).second)
        throw Diagnostic(g.loc, "duplicate identifier '" + g.name + "'");
      if (g.init) {
        if (g.type == Type::kMap)
          throw Diagnostic(g.loc, "mapping '" + g.name + "' cannot have an initializer");
        bool is_bool_lit = g.init_text == "true" || g.init_text == "false";
        if ((g.type == Type::kBool) != is_bool_lit)
          throw Diagnostic(g.loc, "type mismatch in initializer of '" + g.name + "'");
        if (g.type == Type::kAddress && *g.init >= kAddressLimit)
          throw Diagnostic(g.loc, "address literal out of range");
      }
      globals_[g.name] = i;
    }
    for (auto& f : c_.functions) {
      if (!names.insert(f.name).second)
        throw Diagnostic(f.loc, "duplicate identifier '" + f.name + "'");
    }
    for (auto& f : c_.functions) check_function(f);
  }

 private:
  struct Local {
    Type type;
    int slot;
  };

  void check_function(Function& f) {
    scopes_.clear();
    scopes_.emplace_back();
    next_slot_ = 0;
    for (auto& p : f.params) declare(p.name, p.type, f.loc);
    check_block(f.body);
    f.local_count = next_slot_;
  }

  int declare(const std::string& name, Type type, SourceLoc loc) {
    if (globals_.count(name) || lookup_local(name))
      throw Diagnostic(loc, "duplicate identifier '" + name + "'");
    for (const auto& f : c_.functions)
      if (f.name == name) throw Diagnostic(loc, "duplicate identifier '" + name + "'");
    int slot = next_slot_++;
    scopes_.back()[name] = Local{type, slot};
    return slot;
  }

  const Local* lookup_local(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return &f->second;
    }
    return nullptr;
  }

  void check_block(Block& b) {
    scopes_.emplace_back();
    for (auto& s : b) check_stmt(*s);
    scopes_.pop_back();
  }

  static bool assignable(Type to, const Expr& e) {
    if (e.type == to) return true;
    // Integer literals double as address literals.
    return to == Type::kAddress && e.kind == ExprKind::kIntLit && e.value < kAddressLimit;
  }

  void require_type(const Expr& e, Type t, const char* what) {
    if (!assignable(t, e))
      throw Diagnostic(e.loc, std::string("type mismatch: ") + what + " must be " +
                                  to_string(t) + ", found " + to_string(e.type));
  }

  void check_stmt(Stmt& s) {
    switch (s.kind) {
      case StmtKind::kLocal:
        if (s.value) {
          check_expr(*s.value);
          require_type(*s.value, s.decl_type, "initializer");
        }
        s.ref = {VarRef::Scope::kLocal, declare(s.name, s.decl_type, s.loc)};
        break;
      case StmtKind::kAssign: {
        Type target = resolve(s.name, s.loc, s.ref);
        check_expr(*s.value);
        if (s.index) {
          if (target != Type::kMap)
            throw Diagnostic(s.loc, "type mismatch: '" + s.name + "' is not a mapping");
          check_expr(*s.index);
          require_type(*s.index, Type::kAddress, "mapping key");
          require_type(*s.value, Type::kUint, "mapping value");
        } else {
          if (target == Type::kMap)
            throw Diagnostic(s.loc, "type mismatch: cannot assign to mapping '" + s.name + "'");
          require_type(*s.value, target, "assigned value");
        }
        break;
      }
      case StmtKind::kIf:
        check_expr(*s.value);
        require_type(*s.value, Type::kBool, "condition");
        check_block(s.then_body);
        check_block(s.else_body);
        break;
      case StmtKind::kWhile:
        check_expr(*s.value);
        require_type(*s.value, Type::kBool, "condition");
        check_block(s.then_body);
        break;
      case StmtKind::kFor:
        scopes_.emplace_back();
        if (s.init) check_stmt(*s.init);
        check_expr(*s.value);
        require_type(*s.value, Type::kBool, "condition");
        if (s.update) check_stmt(*s.update);
        check_block(s.then_body);
        scopes_.pop_back();
        break;
      case StmtKind::kRequire:
        check_expr(*s.value);
        require_type(*s.value, Type::kBool, "condition");
        break;
      case StmtKind::kTransfer:
      case StmtKind::kSend:
        check_expr(*s.target);
        require_type(*s.target, Type::kAddress, "recipient");
        check_expr(*s.value);
        require_type(*s.value, Type::kUint, "amount");
        break;
      case StmtKind::kDelegateCall:
        check_expr(*s.target);
        require_type(*s.target, Type::kAddress, "delegatecall target");
        break;
      case StmtKind::kRevert:
        break;
    }
  }

  Type resolve(const std::string& name, SourceLoc loc, VarRef& ref) {
    if (const Local* l = lookup_local(name)) {
      ref = {VarRef::Scope::kLocal, l->slot};
      return l->type;
    }
    auto g = globals_.find(name);
    if (g == globals_.end())
      throw Diagnostic(loc, "use of undeclared variable '" + name + "'");
    ref = {VarRef::Scope::kGlobal, g->second};
    return c_.globals[g->second].type;
  }

  void check_expr(Expr& e) {
    switch (e.kind) {
      case ExprKind::kIntLit: e.type = Type::kUint; break;
      case ExprKind::kBoolLit: e.type = Type::kBool; break;
      case ExprKind::kVar:
        e.type = resolve(e.text, e.loc, e.ref);
        if (e.type == Type::kMap)
          throw Diagnostic(e.loc, "type mismatch: mapping '" + e.text + "' must be indexed");
        break;
      case ExprKind::kIndex:
        if (resolve(e.text, e.loc, e.ref) != Type::kMap)
          throw Diagnostic(e.loc, "type mismatch: '" + e.text + "' is not a mapping");
        check_expr(*e.lhs);
        require_type(*e.lhs, Type::kAddress, "mapping key");
        e.type = Type::kUint;
        break;
      case ExprKind::kMsgValue:
      case ExprKind::kBlockTimestamp:
      case ExprKind::kBlockNumber:
      case ExprKind::kBalanceThis:
        e.type = Type::kUint;
        break;
      case ExprKind::kMsgSender: e.type = Type::kAddress; break;
      case ExprKind::kSend:
        check_expr(*e.lhs);
        require_type(*e.lhs, Type::kAddress, "recipient");
        check_expr(*e.rhs);
        require_type(*e.rhs, Type::kUint, "amount");
        e.type = Type::kBool;
        break;
      case ExprKind::kNot:
        check_expr(*e.lhs);
        require_type(*e.lhs, Type::kBool, "operand of '!'");
        e.type = Type::kBool;
        break;
      case ExprKind::kBinary: {
        check_expr(*e.lhs);
        check_expr(*e.rhs);
        if (is_arithmetic(e.op)) {
          require_type(*e.lhs, Type::kUint, "arithmetic operand");
          require_type(*e.rhs, Type::kUint, "arithmetic operand");
          e.type = Type::kUint;
        } else if (e.op == BinOp::kAnd || e.op == BinOp::kOr) {
          require_type(*e.lhs, Type::kBool, "logical operand");
          require_type(*e.rhs, Type::kBool, "logical operand");
          e.type = Type::kBool;
        } else if (e.op == BinOp::kEq || e.op == BinOp::kNe) {
          if (!assignable(e.lhs->type, *e.rhs) && !assignable(e.rhs->type, *e.lhs))
            throw Diagnostic(e.loc, "type mismatch: cannot compare " +
                                        to_string(e.lhs->type) + " with " +
                                        to_string(e.rhs->type));
          e.type = Type::kBool;
        } else {
          require_type(*e.lhs, Type::kUint, "ordered comparison operand");
          require_type(*e.rhs, Type::kUint, "ordered comparison operand");
          e.type = Type::kBool;
        }
        break;
      }
    }
  }

  Contract& c_;
  std::unordered_map<std::string, int> globals_;
  std::vector<std::unordered_map<std::string, Local>> scopes_;
  int next_slot_ = 0;
};

}  // namespace

Contract parse(std::string_view source) {
  Parser p(lex(source));
  Contract c = p.parse_contract();
  Checker(c).run();
  c.accesses = analyze_accesses(c);
  return c;
}

}  // namespace minifuzz::lang
