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


#include "minifuzz/vm/vm.hpp"

#include <stdexcept>

namespace minifuzz::vm {

using lang::BranchSite;
using lang::Direction;
using lang::Op;

const char* to_string(EventKind k) {
  static const char* const kNames[] = {
      "Transfer", "Send", "DelegateCall", "BalanceRead", "TimestampRead",
      "NumberRead", "Revert", "OverflowWrap", "UncheckedCallResult"};
  return kNames[static_cast<int>(k)];
}

const char* to_string(Terminal t) {
  switch (t) {
    case Terminal::kStop: return "stop";
    case Terminal::kRevert: return "revert";
    case Terminal::kStepLimit: return "step-limit";
  }
  return "?";
}

namespace {

struct Value {
  u256 v = 0;
  std::uint8_t taint = 0;
  int send_ref = -1;  // Send event that produced this flag
  int wrap_ref = -1;  // OverflowWrap event this value derives from
};

struct StepLimitHit {};

class Interpreter {
 public:
  Interpreter(const lang::BytecodeProgram& program, WorldState& state,
              const FunctionCall& call, const ExecOptions& options, ExecutionTrace& trace)
      : program_(program), state_(state), call_(call), options_(options), trace_(trace),
        fn_(program.functions[call.function]) {}

  Terminal run_frame(int frame, const u256& value) {
    std::vector<Value> locals(fn_.local_count);
    for (std::size_t i = 0; i < call_.args.size(); ++i) locals[i] = {call_.args[i], kTaintArg};
    std::vector<Value> stack;
    std::vector<lang::PcRange> open;
    std::vector<int> sends;
    int pc = 0;
    for (;;) {
      if (++trace_.steps > options_.step_limit) throw StepLimitHit{};
      const lang::Instr& in = fn_.code[pc];
      switch (in.op) {
        case Op::kPush: stack.push_back({program_.constants[in.a]}); break;
        case Op::kLoadLocal: stack.push_back(locals[in.a]); break;
        case Op::kStoreLocal: locals[in.a] = pop(stack); break;
        case Op::kLoadGlobal: stack.push_back({state_.scalars[in.a]}); break;
        case Op::kStoreGlobal: {
          Value v = pop(stack);
          consume(v);
          state_.scalars[in.a] = v.v;
          break;
        }
        case Op::kLoadMap: {
          Value key = pop(stack);
          const auto& m = state_.maps[in.a];
          auto it = m.find(key.v);
          stack.push_back({it == m.end() ? u256(0) : it->second});
          break;
        }
        case Op::kStoreMap: {
          Value v = pop(stack);
          Value key = pop(stack);
          consume(v);
          if (v.v == 0) state_.maps[in.a].erase(key.v);
          else state_.maps[in.a][key.v] = v.v;
          break;
        }
        case Op::kAdd: case Op::kSub: case Op::kMul: case Op::kDiv: case Op::kMod: {
          Value b = pop(stack);
          Value a = pop(stack);
          stack.push_back(arith(in.op, a, b, frame, pc));
          break;
        }
        case Op::kEq: case Op::kNe: case Op::kLt: case Op::kLe: case Op::kGt: case Op::kGe: {
          Value b = pop(stack);
          Value a = pop(stack);
          consume(a);
          consume(b);
          auto rel = static_cast<lang::Relation>(static_cast<int>(in.op) - static_cast<int>(Op::kEq));
          stack.push_back({lang::holds(rel, a.v, b.v) ? 1 : 0,
                           static_cast<std::uint8_t>(a.taint | b.taint)});
          break;
        }
        case Op::kNot: {
          Value a = pop(stack);
          a.v = a.v == 0 ? 1 : 0;
          stack.push_back(a);
          break;
        }
        case Op::kAnd: case Op::kOr: {
          Value b = pop(stack);
          Value a = pop(stack);
          bool r = in.op == Op::kAnd ? (a.v != 0 && b.v != 0) : (a.v != 0 || b.v != 0);
          stack.push_back({r ? 1 : 0, static_cast<std::uint8_t>(a.taint | b.taint),
                           a.send_ref >= 0 ? a.send_ref : b.send_ref,
                           a.wrap_ref >= 0 ? a.wrap_ref : b.wrap_ref});
          break;
        }
        case Op::kCallValue: stack.push_back({value, kTaintCallValue}); break;
        case Op::kCaller: stack.push_back({call_.caller, kTaintCaller}); break;
        case Op::kTimestamp:
          emit(EventKind::kTimestampRead, frame, pc);
          stack.push_back({call_.timestamp, kTaintTimestamp});
          break;
        case Op::kNumber:
          emit(EventKind::kNumberRead, frame, pc);
          stack.push_back({call_.number, kTaintNumber});
          break;
        case Op::kBalance:
          emit(EventKind::kBalanceRead, frame, pc);
          stack.push_back({state_.contract_balance, kTaintBalance});
          break;
        case Op::kTransfer: {
          Value amount = pop(stack);
          Value to = pop(stack);
          consume(amount);
          if (state_.contract_balance < amount.v) {
            emit(EventKind::kRevert, frame, pc);
            return Terminal::kRevert;
          }
          pay(to.v, amount.v);
          Event& e = emit(EventKind::kTransfer, frame, pc);
          e.target = to.v;
          e.amount = amount.v;
          if (frame < options_.reentry_depth && to.v == call_.caller) reenter(frame);
          break;
        }
        case Op::kSend: {
          Value amount = pop(stack);
          Value to = pop(stack);
          consume(amount);
          bool ok = state_.contract_balance >= amount.v;
          if (ok) pay(to.v, amount.v);
          Event& e = emit(EventKind::kSend, frame, pc);
          e.target = to.v;
          e.amount = amount.v;
          e.flag = ok;
          int ref = static_cast<int>(trace_.events.size()) - 1;
          sends.push_back(ref);
          stack.push_back({ok ? 1 : 0, 0, ref});
          break;
        }
        case Op::kDelegateCall: {
          Value target = pop(stack);
          Event& e = emit(EventKind::kDelegateCall, frame, pc);
          e.target = target.v;
          e.taint = target.taint;
          e.flag = (target.taint & (kTaintArg | kTaintCaller)) != 0;
          break;
        }
        case Op::kPop: pop(stack); break;
        case Op::kJump: pc = in.a; continue;
        case Op::kBranch: {
          Value k = pop(stack);
          Value x = pop(stack);
          consume(x);
          consume(k);
          const BranchSite& site = program_.branch_table[in.a];
          bool taken = lang::holds(site.relation, x.v, k.v);
          Direction dir = taken ? Direction::kThen : Direction::kElse;
          std::erase_if(open, [pc](const lang::PcRange& r) { return !r.contains(pc); });
          int step = static_cast<int>(trace_.path.size());
          trace_.path.push_back({site.id, dir, frame, static_cast<int>(open.size()) + 1});
          trace_.comparisons.push_back({site.id, site.relation, x.v, k.v, taken,
                                        static_cast<std::uint8_t>(x.taint | k.taint), frame,
                                        step});
          const lang::PcRange& region = site.region(dir);
          if (!region.empty()) open.push_back(region);
          pc = taken ? site.then_target : site.else_target;
          continue;
        }
        case Op::kRevert:
          emit(EventKind::kRevert, frame, pc);
          return Terminal::kRevert;
        case Op::kStop:
          for (int ref : sends) {
            if (trace_.events[ref].consumed) continue;
            emit(EventKind::kUncheckedCallResult, frame, trace_.events[ref].pc);
          }
          return Terminal::kStop;
      }
      ++pc;
    }
  }

 private:
  static Value pop(std::vector<Value>& stack) {
    Value v = stack.back();
    stack.pop_back();
    return v;
  }

  Event& emit(EventKind kind, int frame, int pc) {
    Event e;
    e.kind = kind;
    e.function = call_.function;
    e.pc = pc;
    e.loc = fn_.source_map[pc];
    e.frame = frame;
    e.step = static_cast<int>(trace_.path.size());
    trace_.events.push_back(e);
    return trace_.events.back();
  }

  void consume(const Value& v) {
    if (v.send_ref >= 0) trace_.events[v.send_ref].consumed = true;
    if (v.wrap_ref >= 0) trace_.events[v.wrap_ref].consumed = true;
  }

  Value arith(Op op, const Value& a, const Value& b, int frame, int pc) {
    Value r;
    r.taint = a.taint | b.taint;
    r.wrap_ref = a.wrap_ref >= 0 ? a.wrap_ref : b.wrap_ref;
    bool wrapped = false;
    switch (op) {
      case Op::kAdd:
        r.v = a.v + b.v;
        wrapped = r.v < a.v;
        break;
      case Op::kSub:
        r.v = a.v - b.v;
        wrapped = b.v > a.v;
        break;
      case Op::kMul: {
        u512 wide = u512(a.v) * u512(b.v);
        r.v = static_cast<u256>(wide & u512(kMaxU256));
        wrapped = wide > u512(kMaxU256);
        break;
      }
      case Op::kDiv: r.v = b.v == 0 ? u256(0) : a.v / b.v; break;
      default: r.v = b.v == 0 ? u256(0) : a.v % b.v; break;
    }
    if (wrapped) {
      emit(EventKind::kOverflowWrap, frame, pc);
      r.wrap_ref = static_cast<int>(trace_.events.size()) - 1;
    }
    return r;
  }

  void pay(const u256& to, const u256& amount) {
    state_.contract_balance -= amount;
    if (to == options_.contract_address) state_.contract_balance += amount;
    else state_.balances[to] += amount;
  }

  void reenter(int frame) {
    WorldState snapshot = state_;
    std::size_t mark = trace_.events.size();
    if (run_frame(frame + 1, 0) != Terminal::kStop) {
      state_ = std::move(snapshot);
      for (std::size_t i = mark; i < trace_.events.size(); ++i) trace_.events[i].committed = false;
    }
  }

  const lang::BytecodeProgram& program_;
  WorldState& state_;
  const FunctionCall& call_;
  const ExecOptions& options_;
  ExecutionTrace& trace_;
  const lang::FunctionCode& fn_;
};

}  // namespace

bool well_formed(const lang::BytecodeProgram& program, const FunctionCall& call) {
  if (call.function < 0 || call.function >= static_cast<int>(program.functions.size()))
    return false;
  const auto& fn = program.functions[call.function];
  if (call.args.size() != fn.params.size()) return false;
  for (std::size_t i = 0; i < call.args.size(); ++i) {
    if (fn.params[i] == lang::Type::kBool && call.args[i] > 1) return false;
    if (fn.params[i] == lang::Type::kAddress && call.args[i] >= kAddressLimit) return false;
  }
  if (call.value > 0 && !fn.payable) return false;
  return call.caller < kAddressLimit;
}

ExecutionTrace execute_call(const lang::BytecodeProgram& program, WorldState& state,
                            const FunctionCall& call, const ExecOptions& options) {
  if (call.function < 0 || call.function >= static_cast<int>(program.functions.size()))
    throw std::invalid_argument("unknown function id " + std::to_string(call.function));
  ExecutionTrace trace;
  trace.function = call.function;
  const auto& fn = program.functions[call.function];
  if (call.value > 0 && (!fn.payable || state.balance_of(call.caller) < call.value)) {
    Event e;
    e.kind = EventKind::kRevert;
    e.function = call.function;
    e.loc = fn.source_map.front();
    e.committed = false;
    trace.events.push_back(e);
    trace.terminal = Terminal::kRevert;
    return trace;
  }
  WorldState snapshot = state;
  state.balances[call.caller] -= call.value;
  state.contract_balance += call.value;
  try {
    trace.terminal = Interpreter(program, state, call, options, trace).run_frame(0, call.value);
  } catch (const StepLimitHit&) {
    trace.steps = options.step_limit;
    trace.terminal = Terminal::kStepLimit;
  }
  if (trace.terminal != Terminal::kStop) {
    state = std::move(snapshot);
    for (auto& e : trace.events) e.committed = false;
  }
  return trace;
}

std::vector<ExecutionTrace> execute_sequence(const lang::BytecodeProgram& program,
                                             WorldState& state,
                                             const std::vector<FunctionCall>& calls,
                                             const ExecOptions& options) {
  std::vector<ExecutionTrace> traces;
  traces.reserve(calls.size());
  for (const auto& c : calls) traces.push_back(execute_call(program, state, c, options));
  return traces;
}

ExecutionTrace attack_reenter(const lang::BytecodeProgram& program, WorldState& state,
                              const FunctionCall& call, int depth, ExecOptions options) {
  options.reentry_depth = depth;
  return execute_call(program, state, call, options);
}

}  // namespace minifuzz::vm
