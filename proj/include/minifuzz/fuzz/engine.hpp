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


// Seed evolution: coverage archive, distance-guided seed selection and
// energy-bounded mutation rounds.

#ifndef MINIFUZZ_FUZZ_ENGINE_HPP_
#define MINIFUZZ_FUZZ_ENGINE_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "minifuzz/energy/branch_search.hpp"
#include "minifuzz/energy/schedule.hpp"
#include "minifuzz/fuzz/mutate.hpp"
#include "minifuzz/fuzz/test_case.hpp"
#include "minifuzz/lang/ast.hpp"
#include "minifuzz/lang/bytecode.hpp"
#include "minifuzz/vm/state.hpp"
#include "minifuzz/vm/vm.hpp"

namespace minifuzz::fuzz {

struct EngineConfig {
  std::uint64_t seed = 0;
  std::uint64_t budget = 100000;  // test-case executions
  std::optional<std::uint64_t> time_limit_ms;  // wall clock; breaks determinism
  int variants = 8;
  energy::EnergySchedule schedule;
  vm::Genesis genesis;
  vm::ExecOptions exec;
  // Ablation switches.
  bool ordering = true;  // off: every variant uses a random function order
  bool distance = true;  // off: pure random generation, no feedback at all
  bool energy = true;    // off: every target gets the base energy
  bool prolong = true;   // off: only sequences of length |S| are run
};

struct Seed {
  TestCase test;
  Bytes encoding;
  std::uint64_t priority = 1;
  std::vector<lang::EdgeId> covered;  // edges the case covers
  std::set<lang::EdgeId> tracked;     // just-missed edges it is the closest case for
  bool single = true;                 // one pass over the ordered sequence
};

struct CoveragePoint {
  std::uint64_t elapsed_ms = 0;
  std::uint64_t executions = 0;
  std::size_t covered = 0;
  std::size_t total = 0;

  friend bool operator==(const CoveragePoint&, const CoveragePoint&) = default;
};

struct BestCase {
  int seed = -1;
  u512 distance = 0;
};

struct TestSuite {
  std::vector<int> sequence;  // ordered function ids
  std::vector<Seed> seeds;
  std::set<lang::EdgeId> covered;
  std::vector<CoveragePoint> log;
  std::map<lang::EdgeId, BestCase> best;  // just-missed edge -> closest seed
  std::uint64_t executions = 0;
  std::uint64_t discarded = 0;  // step-limited executions
  std::uint64_t vm_steps = 0;
  std::size_t total_edges = 0;
};

// Virtual campaign clock: one millisecond per this many VM steps. Keeps the
// coverage log reproducible across machines.
inline constexpr std::uint64_t kStepsPerMillisecond = 1000;

// Called after every execution that is not discarded.
using ExecutionObserver =
    std::function<void(const TestCase&, const std::vector<vm::ExecutionTrace>&)>;

// Collects, for each uncovered edge opposite a taken direction, the minimum
// distance over all of its comparison records in `traces`.
std::map<lang::EdgeId, u512> missed_distances(const std::vector<vm::ExecutionTrace>& traces,
                                              const std::set<lang::EdgeId>& covered);

std::vector<lang::EdgeId> edges_of(const std::vector<vm::ExecutionTrace>& traces);

TestSuite evolve(const lang::BytecodeProgram& program, const lang::Contract& contract,
                 const EngineConfig& config, const ExecutionObserver& observer = {});

// Runs a case from genesis.
std::vector<vm::ExecutionTrace> replay(const lang::BytecodeProgram& program,
                                       const TestCase& test, const vm::Genesis& genesis,
                                       const vm::ExecOptions& options = {});

// True iff `encoding` equals an archived seed or one of the last
// `kRecentCases` executed cases.
inline constexpr std::size_t kRecentCases = 4096;

// Repeated mutants are skipped without spending energy, up to this many per
// unit of energy, so a seed with an exhausted neighbourhood cannot stall.
inline constexpr std::uint64_t kSkipsPerEnergy = 4;

// A target's mutations start from its closest seed, except one in this many,
// which start from a priority-weighted seed of the whole pool.
inline constexpr std::uint64_t kExploreOneIn = 64;

class RepeatFilter {
 public:
  bool seen(const Bytes& encoding) const;
  void remember(const Bytes& encoding);
  void archive(const Bytes& encoding);

 private:
  std::set<Bytes> archived_;
  std::set<Bytes> recent_;
  std::vector<Bytes> ring_;
  std::size_t next_ = 0;
};

}  // namespace minifuzz::fuzz

#endif  // MINIFUZZ_FUZZ_ENGINE_HPP_
