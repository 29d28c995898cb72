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


// Vulnerability pattern analysis over campaign artifacts.

#ifndef MINIFUZZ_ORACLE_DETECT_HPP_
#define MINIFUZZ_ORACLE_DETECT_HPP_

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "minifuzz/fuzz/engine.hpp"
#include "minifuzz/fuzz/test_case.hpp"
#include "minifuzz/lang/ast.hpp"
#include "minifuzz/lang/bytecode.hpp"
#include "minifuzz/vm/state.hpp"
#include "minifuzz/vm/trace.hpp"

namespace minifuzz::oracle {

// Declaration order doubles as report order.
enum class FindingKind { kTP, kBN, kDG, kEF, kUC, kRE, kOF, kSE };

const char* to_string(FindingKind k);
std::optional<FindingKind> parse_kind(const std::string& s);
inline constexpr FindingKind kAllKinds[] = {FindingKind::kTP, FindingKind::kBN,
                                            FindingKind::kDG, FindingKind::kEF,
                                            FindingKind::kUC, FindingKind::kRE,
                                            FindingKind::kOF, FindingKind::kSE};

// How to reproduce a finding: replay `test` from genesis. For reentrancy the
// call at `call` runs under the reentry harness; for block dependence the
// call at `call` is replayed once more with the block field overridden.
struct Witness {
  fuzz::TestCase test;
  int call = 0;
  int reentry_depth = 0;
  std::optional<u256> alt_timestamp;
  std::optional<u256> alt_number;
};

struct Finding {
  FindingKind kind = FindingKind::kRE;
  int function = 0;
  SourceLoc site;
  int site_id = -1;  // branch site for comparison-based patterns
  Witness witness;
  std::string confidence = "high";
  std::string explanation;
};

bool finding_less(const Finding& a, const Finding& b);

// Candidate evidence gathered from every campaign execution.
class Observations {
 public:
  explicit Observations(const lang::BytecodeProgram& program);

  void observe(const fuzz::TestCase& test, const std::vector<vm::ExecutionTrace>& traces);

  struct Sample {
    fuzz::TestCase test;
    int call = 0;
  };
  // Keyed by (function, branch site or instruction index).
  using Key = std::pair<int, int>;

  const lang::BytecodeProgram& program;
  std::map<Key, Sample> strict_balance;              // SE
  std::map<Key, std::vector<Sample>> timestamp_cmp;  // TP candidates
  std::map<Key, std::vector<Sample>> number_cmp;     // BN candidates
  std::map<Key, Sample> dangerous_delegate;          // DG
  std::map<Key, Sample> unchecked_send;              // UC
  std::map<Key, Sample> overflow;                    // OF
  std::map<Key, std::vector<Sample>> transfer_reach; // RE harness inputs
  std::optional<Sample> value_in;
  bool value_out = false;

  static constexpr std::size_t kSamplesPerKey = 8;
};

struct DetectOptions {
  vm::Genesis genesis;
  vm::ExecOptions exec;
  int reentry_depth = 1;
};

// Applies the pattern table. Reentrancy is checked by running the reentry
// harness on every suite case and observed transfer case; block dependence
// is confirmed by replays with alternative block contexts.
std::vector<Finding> detect(const lang::BytecodeProgram& program,
                            const lang::Contract& contract, const fuzz::TestSuite& suite,
                            const Observations& obs, const DetectOptions& options);

// Re-executes a witness and reports whether the finding's defining events
// occur again.
bool replays(const lang::BytecodeProgram& program, const Finding& f,
             const DetectOptions& options);

// Traces of a witness replay (harness and block override applied).
std::vector<vm::ExecutionTrace> replay_witness(const lang::BytecodeProgram& program,
                                               const Witness& w,
                                               const DetectOptions& options);

}  // namespace minifuzz::oracle

#endif  // MINIFUZZ_ORACLE_DETECT_HPP_
