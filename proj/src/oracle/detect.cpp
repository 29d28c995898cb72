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


#include "minifuzz/oracle/detect.hpp"

#include <algorithm>
#include <set>

#include "minifuzz/vm/vm.hpp"

namespace minifuzz::oracle {

using vm::EventKind;
using vm::ExecutionTrace;

const char* to_string(FindingKind k) {
  static const char* const kNames[] = {"TP", "BN", "DG", "EF", "UC", "RE", "OF", "SE"};
  return kNames[static_cast<int>(k)];
}

std::optional<FindingKind> parse_kind(const std::string& s) {
  for (FindingKind k : kAllKinds)
    if (s == to_string(k)) return k;
  return std::nullopt;
}

bool finding_less(const Finding& a, const Finding& b) {
  return std::tie(a.kind, a.function, a.site, a.site_id) <
         std::tie(b.kind, b.function, b.site, b.site_id);
}

Observations::Observations(const lang::BytecodeProgram& p) : program(p) {}

void Observations::observe(const fuzz::TestCase& test, const std::vector<ExecutionTrace>& traces) {
  auto sample = [&](int call) { return Sample{test, call}; };
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const ExecutionTrace& t = traces[i];
    const int call = static_cast<int>(i);
    const int fn = t.function;
    if (t.terminal == vm::Terminal::kStop && test.calls[i].value > 0 && !value_in)
      value_in = sample(call);
    for (const auto& c : t.comparisons) {
      Key key{fn, c.site};
      bool equality = c.relation == lang::Relation::kEq || c.relation == lang::Relation::kNe;
      if (equality && (c.taint & vm::kTaintBalance) && !strict_balance.count(key))
        strict_balance.emplace(key, sample(call));
      if (c.taint & vm::kTaintTimestamp) {
        auto& v = timestamp_cmp[key];
        if (v.size() < kSamplesPerKey) v.push_back(sample(call));
      }
      if (c.taint & vm::kTaintNumber) {
        auto& v = number_cmp[key];
        if (v.size() < kSamplesPerKey) v.push_back(sample(call));
      }
    }
    for (const auto& e : t.events) {
      Key key{fn, e.pc};
      switch (e.kind) {
        case EventKind::kDelegateCall:
          if (e.flag && !dangerous_delegate.count(key)) dangerous_delegate.emplace(key, sample(call));
          break;
        case EventKind::kUncheckedCallResult:
          if (e.committed && !unchecked_send.count(key)) unchecked_send.emplace(key, sample(call));
          break;
        case EventKind::kOverflowWrap:
          if (e.consumed && e.committed && !overflow.count(key)) overflow.emplace(key, sample(call));
          break;
        case EventKind::kTransfer:
          if (e.committed) {
            if (e.amount > 0) value_out = true;
            auto& v = transfer_reach[key];
            if (v.size() < kSamplesPerKey) v.push_back(sample(call));
          }
          break;
        case EventKind::kSend:
          if (e.committed && e.flag && e.amount > 0) value_out = true;
          break;
        default:
          break;
      }
    }
  }
}

std::vector<ExecutionTrace> replay_witness(const lang::BytecodeProgram& program,
                                           const Witness& w, const DetectOptions& options) {
  vm::WorldState state = vm::WorldState::genesis(program, options.genesis);
  vm::ExecOptions exec = options.exec;
  exec.contract_address = options.genesis.contract_address;
  std::vector<ExecutionTrace> traces;
  for (std::size_t i = 0; i < w.test.calls.size(); ++i) {
    vm::FunctionCall call = w.test.calls[i];
    if (static_cast<int>(i) == w.call) {
      if (w.alt_timestamp) call.timestamp = *w.alt_timestamp;
      if (w.alt_number) call.number = *w.alt_number;
      if (w.reentry_depth > 0) {
        traces.push_back(vm::attack_reenter(program, state, call, w.reentry_depth, exec));
        continue;
      }
    }
    traces.push_back(vm::execute_call(program, state, call, exec));
  }
  return traces;
}

namespace {

using Outcome = std::vector<std::pair<u256, u256>>;

Outcome transfer_outcome(const ExecutionTrace& t) {
  Outcome out;
  for (const auto& e : t.events) {
    if (!e.committed) continue;
    if (e.kind == EventKind::kTransfer || (e.kind == EventKind::kSend && e.flag))
      out.emplace_back(e.target, e.amount);
  }
  return out;
}

std::vector<bool> directions_at(const ExecutionTrace& t, int site) {
  std::vector<bool> out;
  for (const auto& c : t.comparisons)
    if (c.site == site) out.push_back(c.taken);
  return out;
}

// Pc of a transfer executed at least twice (committed) in one outer call.
std::optional<int> repeated_transfer(const ExecutionTrace& t) {
  std::map<int, int> count;
  for (const auto& e : t.events)
    if (e.kind == EventKind::kTransfer && e.committed && ++count[e.pc] >= 2) return e.pc;
  return std::nullopt;
}

bool has_op(const lang::FunctionCode& fn, std::initializer_list<lang::Op> ops) {
  return std::any_of(fn.code.begin(), fn.code.end(), [&](const lang::Instr& in) {
    return std::find(ops.begin(), ops.end(), in.op) != ops.end();
  });
}

Witness truncated(const fuzz::TestCase& test, int call) {
  Witness w;
  w.test.calls.assign(test.calls.begin(), test.calls.begin() + call + 1);
  w.call = call;
  return w;
}

// Block values worth trying for a comparison: a window around the original
// value and the neighbourhood of both operands recorded at the site.
std::vector<u256> alternatives(const u256& original, const std::vector<u256>& operands) {
  std::set<u256> out;
  for (int d = 1; d <= 32; ++d) {
    out.insert(original + d);
    out.insert(original - d);
  }
  for (const u256& k : operands) {
    out.insert(k);
    out.insert(k + 1);
    out.insert(k - 1);
  }
  out.erase(original);
  return {out.begin(), out.end()};
}

std::optional<Finding> confirm_block_dependence(const lang::BytecodeProgram& program,
                                                FindingKind kind, int fn, int site,
                                                const std::vector<Observations::Sample>& samples,
                                                const DetectOptions& options) {
  for (const auto& s : samples) {
    Witness w = truncated(s.test, s.call);
    auto base = replay_witness(program, w, options);
    const ExecutionTrace& bt = base[s.call];
    std::vector<u256> operands;
    for (const auto& c : bt.comparisons) {
      if (c.site != site) continue;
      operands.push_back(c.k);
      operands.push_back(c.x);
    }
    const vm::FunctionCall& call = s.test.calls[s.call];
    const u256& original = kind == FindingKind::kTP ? call.timestamp : call.number;
    const Outcome base_outcome = transfer_outcome(bt);
    const std::vector<bool> base_dirs = directions_at(bt, site);
    for (const u256& alt : alternatives(original, operands)) {
      Witness a = w;
      if (kind == FindingKind::kTP) a.alt_timestamp = alt;
      else a.alt_number = alt;
      auto traces = replay_witness(program, a, options);
      const ExecutionTrace& at = traces[s.call];
      if (directions_at(at, site) == base_dirs) continue;
      if (transfer_outcome(at) == base_outcome) continue;
      Finding f;
      f.kind = kind;
      f.function = fn;
      f.site = program.branch_table[site].loc;
      f.site_id = site;
      f.witness = a;
      f.explanation = std::string(kind == FindingKind::kTP ? "block.timestamp" : "block.number") +
                      " decides a comparison whose outcome changes the transfers made";
      return f;
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<Finding> detect(const lang::BytecodeProgram& program,
                            const lang::Contract& contract, const fuzz::TestSuite& suite,
                            const Observations& obs, const DetectOptions& options) {
  std::vector<Finding> out;

  // Reentrancy: only functions that can transfer value at all.
  for (std::size_t fid = 0; fid < program.functions.size(); ++fid) {
    const int fn = static_cast<int>(fid);
    if (!has_op(program.functions[fid], {lang::Op::kTransfer})) continue;
    std::vector<Observations::Sample> inputs;
    for (const auto& seed : suite.seeds)
      for (std::size_t i = 0; i < seed.test.calls.size(); ++i)
        if (seed.test.calls[i].function == fn) inputs.push_back({seed.test, static_cast<int>(i)});
    for (const auto& [key, samples] : obs.transfer_reach)
      if (key.first == fn) inputs.insert(inputs.end(), samples.begin(), samples.end());
    for (const auto& s : inputs) {
      Witness w = truncated(s.test, s.call);
      w.reentry_depth = options.reentry_depth;
      auto traces = replay_witness(program, w, options);
      if (auto pc = repeated_transfer(traces[s.call])) {
        Finding f;
        f.kind = FindingKind::kRE;
        f.function = fn;
        f.site = program.functions[fid].source_map[*pc];
        f.witness = w;
        f.explanation = "transfer re-entered before the caller's bookkeeping completed";
        out.push_back(f);
        break;
      }
    }
  }

  for (const auto& [key, s] : obs.strict_balance) {
    Finding f;
    f.kind = FindingKind::kSE;
    f.function = key.first;
    f.site = program.branch_table[key.second].loc;
    f.site_id = key.second;
    f.witness = truncated(s.test, s.call);
    f.explanation = "branch decided by strict equality on the contract balance";
    out.push_back(f);
  }

  auto block_patterns = [&](FindingKind kind,
                            const std::map<Observations::Key,
                                           std::vector<Observations::Sample>>& candidates) {
    for (const auto& [key, samples] : candidates) {
      const auto& fn = program.functions[key.first];
      if (!has_op(fn, {lang::Op::kTransfer, lang::Op::kSend})) continue;
      if (auto f = confirm_block_dependence(program, kind, key.first, key.second, samples, options))
        out.push_back(*f);
    }
  };
  block_patterns(FindingKind::kTP, obs.timestamp_cmp);
  block_patterns(FindingKind::kBN, obs.number_cmp);

  auto event_pattern = [&](FindingKind kind, const std::map<Observations::Key, Observations::Sample>& m,
                           const char* why) {
    for (const auto& [key, s] : m) {
      Finding f;
      f.kind = kind;
      f.function = key.first;
      f.site = program.functions[key.first].source_map[key.second];
      f.witness = truncated(s.test, s.call);
      f.explanation = why;
      out.push_back(f);
    }
  };
  event_pattern(FindingKind::kDG, obs.dangerous_delegate,
                "delegatecall target is controlled by the caller");
  event_pattern(FindingKind::kUC, obs.unchecked_send, "result of send is never checked");
  event_pattern(FindingKind::kOF, obs.overflow,
                "wrapped arithmetic result is stored, compared or transferred");

  if (obs.value_in && !obs.value_out) {
    const int fn = obs.value_in->test.calls[obs.value_in->call].function;
    Finding f;
    f.kind = FindingKind::kEF;
    f.function = fn;
    f.site = contract.functions[fn].loc;
    f.witness = truncated(obs.value_in->test, obs.value_in->call);
    f.confidence = "low";
    f.explanation = "contract accepted value but no execution ever sent value out";
    out.push_back(f);
  }

  std::sort(out.begin(), out.end(), finding_less);
  return out;
}

bool replays(const lang::BytecodeProgram& program, const Finding& f,
             const DetectOptions& options) {
  auto traces = replay_witness(program, f.witness, options);
  if (f.witness.call >= static_cast<int>(traces.size())) return false;
  const ExecutionTrace& t = traces[f.witness.call];
  auto has_event = [&](EventKind kind, auto pred) {
    return std::any_of(t.events.begin(), t.events.end(),
                       [&](const vm::Event& e) { return e.kind == kind && pred(e); });
  };
  switch (f.kind) {
    case FindingKind::kRE: {
      auto pc = repeated_transfer(t);
      return pc && program.functions[f.function].source_map[*pc] == f.site;
    }
    case FindingKind::kSE:
      return std::any_of(t.comparisons.begin(), t.comparisons.end(), [&](const auto& c) {
        return c.site == f.site_id && (c.taint & vm::kTaintBalance);
      });
    case FindingKind::kTP:
    case FindingKind::kBN: {
      Witness plain = f.witness;
      plain.alt_timestamp.reset();
      plain.alt_number.reset();
      auto base = replay_witness(program, plain, options);
      const ExecutionTrace& bt = base[f.witness.call];
      return directions_at(bt, f.site_id) != directions_at(t, f.site_id) &&
             transfer_outcome(bt) != transfer_outcome(t);
    }
    case FindingKind::kDG:
      return has_event(EventKind::kDelegateCall, [&](const vm::Event& e) {
        return e.flag && e.loc == f.site;
      });
    case FindingKind::kUC:
      return has_event(EventKind::kUncheckedCallResult, [&](const vm::Event& e) {
        return e.committed && e.loc == f.site;
      });
    case FindingKind::kOF:
      return has_event(EventKind::kOverflowWrap, [&](const vm::Event& e) {
        return e.consumed && e.committed && e.loc == f.site;
      });
    case FindingKind::kEF:
      return t.terminal == vm::Terminal::kStop && f.witness.test.calls[f.witness.call].value > 0;
  }
  return false;
}

}  // namespace minifuzz::oracle
