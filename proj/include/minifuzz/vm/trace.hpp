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


#ifndef MINIFUZZ_VM_TRACE_HPP_
#define MINIFUZZ_VM_TRACE_HPP_

#include <cstdint>
#include <vector>

#include "minifuzz/common.hpp"
#include "minifuzz/lang/bytecode.hpp"

namespace minifuzz::vm {

// Provenance bits carried by runtime values.
enum Taint : std::uint8_t {
  kTaintNone = 0,
  kTaintBalance = 1,
  kTaintTimestamp = 2,
  kTaintNumber = 4,
  kTaintCaller = 8,
  kTaintArg = 16,
  kTaintCallValue = 32,
};

struct FunctionCall {
  int function = 0;
  std::vector<u256> args;
  u256 value = 0;
  u256 caller = 0;
  u256 timestamp = 0;
  u256 number = 0;

  friend bool operator==(const FunctionCall&, const FunctionCall&) = default;
};

// One executed branch instruction. The prefix of `path` ending here is the
// branch covered at this point; `rarity` is the number of branch regions
// open at the site, itself included.
struct PathStep {
  int site = 0;
  lang::Direction dir = lang::Direction::kThen;
  int frame = 0;
  int rarity = 1;

  friend bool operator==(const PathStep&, const PathStep&) = default;
};

struct ComparisonRecord {
  int site = 0;
  lang::Relation relation = lang::Relation::kEq;
  u256 x = 0;
  u256 k = 0;
  bool taken = false;  // the then direction was taken
  std::uint8_t taint = 0;
  int frame = 0;
  int step = 0;  // index of the matching PathStep

  friend bool operator==(const ComparisonRecord&, const ComparisonRecord&) = default;
};

enum class EventKind : std::uint8_t {
  kTransfer,
  kSend,
  kDelegateCall,
  kBalanceRead,
  kTimestampRead,
  kNumberRead,
  kRevert,
  kOverflowWrap,
  kUncheckedCallResult,
};

const char* to_string(EventKind k);

struct Event {
  EventKind kind = EventKind::kRevert;
  int function = 0;
  int pc = 0;  // instruction index; identifies arithmetic and send sites
  SourceLoc loc;
  int frame = 0;
  int step = 0;  // path length when the event fired
  u256 target = 0;
  u256 amount = 0;
  // Send: succeeded. DelegateCall: target derived from caller input.
  bool flag = false;
  // OverflowWrap: the wrapped value reached storage, a comparison or a
  // transfer amount.
  bool consumed = false;
  // Cleared when the frame that emitted the event was rolled back.
  bool committed = true;
  std::uint8_t taint = 0;

  friend bool operator==(const Event&, const Event&) = default;
};

enum class Terminal : std::uint8_t { kStop, kRevert, kStepLimit };

const char* to_string(Terminal t);

struct ExecutionTrace {
  int function = 0;
  std::vector<PathStep> path;
  std::vector<ComparisonRecord> comparisons;
  std::vector<Event> events;
  Terminal terminal = Terminal::kStop;
  std::uint64_t steps = 0;

  friend bool operator==(const ExecutionTrace&, const ExecutionTrace&) = default;
};

}  // namespace minifuzz::vm

#endif  // MINIFUZZ_VM_TRACE_HPP_
