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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. Budgets, seed counts and thresholds are fixed.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "minifuzz/campaign/campaign.hpp"
#include "minifuzz/energy/branch_search.hpp"
#include "minifuzz/fuzz/distance.hpp"
#include "minifuzz/fuzz/engine.hpp"
#include "minifuzz/oracle/detect.hpp"
#include "minifuzz/sequence/order.hpp"
#include "support/testing.hpp"

namespace minifuzz {
namespace {

namespace fs = std::filesystem;
using boost::multiprecision::cpp_int;
using Clock = std::chrono::steady_clock;
using lang::Direction;
using lang::Relation;
using oracle::FindingKind;

constexpr int kSeeds = 10;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int site_in(const lang::BytecodeProgram& program, const std::string& function, int depth) {
  const int f = program.function_index(function);
  for (const auto& s : program.branch_table)
    if (s.function == f && s.depth == depth) return s.id;
  return -1;
}

campaign::CampaignConfig config(std::uint64_t seed, std::uint64_t budget) {
  campaign::CampaignConfig c;
  c.engine.seed = seed;
  c.engine.budget = budget;
  return c;
}

// Criterion 1.
Outcome order_example() {
  auto c = testing::build_corpus("guessnum");
  auto accesses = sequence::accesses_by_function(c.contract);
  auto start = Clock::now();
  auto op = sequence::order_priority(accesses);
  auto seq = sequence::build_sequence(op);
  double ms = seconds_since(start) * 1000;
  const int guess = c.contract.function_index("guess");
  const int reward = c.contract.function_index("getReward");
  bool ok = op.size() == 2 && op[guess] == 6 && op[reward] == 2 &&
            seq == std::vector<int>{guess, reward} && ms < 1.0;
  std::ostringstream d;
  d << "OP_guess=" << op[guess] << " OP_getReward=" << op[reward] << " sequence=["
    << c.contract.functions[seq[0]].name << ", " << c.contract.functions[seq[1]].name << "] "
    << ms << " ms";
  return {ok, d.str()};
}

// Criterion 2.
cpp_int piecewise(Relation c, const cpp_int& x, const cpp_int& k) {
  auto gap = [&](const cpp_int& t) { return x > t ? x - t : t - x; };
  switch (c) {
    case Relation::kEq: return gap(k);
    case Relation::kNe: return x == k ? 1 : 0;
    case Relation::kLe: return x <= k ? cpp_int(0) : x - k;
    case Relation::kLt: return x < k ? cpp_int(0) : x - k + 1;
    case Relation::kGe: return x >= k ? cpp_int(0) : k - x;
    case Relation::kGt: return x > k ? cpp_int(0) : k - x + 1;
  }
  return -1;
}

bool holds(Relation c, const cpp_int& x, const cpp_int& k) {
  switch (c) {
    case Relation::kEq: return x == k;
    case Relation::kNe: return x != k;
    case Relation::kLe: return x <= k;
    case Relation::kLt: return x < k;
    case Relation::kGe: return x >= k;
    case Relation::kGt: return x > k;
  }
  return false;
}

Outcome distance_property() {
  Rng rng(2024);
  const Relation all[] = {Relation::kEq, Relation::kNe, Relation::kLt,
                          Relation::kLe, Relation::kGt, Relation::kGe};
  auto operand = [&rng]() -> u256 {
    switch (rng.below(4)) {
      case 0: return rng.below(8);
      case 1: return kMaxU256 - rng.below(8);
      case 2: return rng.below(1 << 20);
      default: return rng.word();
    }
  };
  int mismatches = 0, zero_violations = 0;
  for (int n = 0; n < 10000; ++n) {
    Relation c = all[rng.below(6)];
    u256 x = operand();
    u256 k = rng.chance(1, 8) ? x : operand();
    cpp_int got = cpp_int(fuzz::branch_distance(c, x, k));
    if (got != piecewise(c, cpp_int(x), cpp_int(k))) ++mismatches;
    if ((got == 0) != holds(c, cpp_int(x), cpp_int(k))) ++zero_violations;
  }
  return {mismatches == 0 && zero_violations == 0,
          "10000 triples, " + std::to_string(mismatches) + " mismatches, " +
              std::to_string(zero_violations) + " zero-iff violations"};
}

// Runs `kSeeds` engine campaigns and counts those covering `edge`.
int count_covering(const testing::Compiled& c, lang::EdgeId edge, std::uint64_t budget,
                   const std::function<void(fuzz::EngineConfig&)>& tweak) {
  int hits = 0;
  for (int seed = 1; seed <= kSeeds; ++seed) {
    fuzz::EngineConfig cfg;
    cfg.seed = seed;
    cfg.budget = budget;
    tweak(cfg);
    hits += fuzz::evolve(c.program, c.contract, cfg).covered.count(edge) ? 1 : 0;
  }
  return hits;
}

// Criterion 3.
Outcome distance_ablation() {
  auto c = testing::build_corpus("value_gate");
  const lang::EdgeId edge = lang::edge_id(site_in(c.program, "buy", 1), Direction::kThen);
  int full = count_covering(c, edge, 10000, [](auto&) {});
  int wdm = count_covering(c, edge, 10000, [](auto& e) { e.distance = false; });
  return {full >= 9 && wdm == 0, "full " + std::to_string(full) + "/10, WDM " +
                                      std::to_string(wdm) + "/10 within 10000 executions"};
}

// Criterion 4.
Outcome prolongation_ablation() {
  auto c = testing::build_corpus("crowdfund");
  const lang::EdgeId edge = lang::edge_id(site_in(c.program, "withdraw", 1), Direction::kThen);
  int on = count_covering(c, edge, 50000, [](auto&) {});
  int off = count_covering(c, edge, 50000, [](auto& e) { e.prolong = false; });
  return {on >= 9 && off == 0, "prolonged " + std::to_string(on) + "/10, single-pass " +
                                    std::to_string(off) + "/10 within 50000 executions"};
}

// Criterion 5.
Outcome energy_ablation() {
  const std::string source = testing::corpus_source("block_lottery");
  auto c = testing::build(source);
  const int site = site_in(c.program, "play", 2);
  const lang::EdgeId edge = lang::edge_id(site, Direction::kThen);
  int full = 0, wea = 0;
  bool rarity_two = false;
  for (int seed = 1; seed <= kSeeds; ++seed) {
    auto r = campaign::run_campaign(source, config(seed, 50000));
    bool bn = std::any_of(r.findings.begin(), r.findings.end(), [&](const auto& f) {
      return f.kind == FindingKind::kBN && r.contract.functions[f.function].name == "play";
    });
    if (r.suite.covered.count(edge) && bn) ++full;
    auto it = r.search.rarity.find(edge);
    if (it != r.search.rarity.end() && it->second == 2) rarity_two = true;
    fuzz::EngineConfig cfg;
    cfg.seed = seed;
    cfg.budget = 50000;
    cfg.energy = false;
    if (fuzz::evolve(c.program, c.contract, cfg).covered.count(edge)) ++wea;
  }
  return {full >= 9 && wea <= 2 && rarity_two,
          "full covered+BN " + std::to_string(full) + "/10, WEA " + std::to_string(wea) +
              "/10 within 50000 executions" + (rarity_two ? ", R=2" : ", R!=2")};
}

// Criterion 6.
Outcome search_equivalence() {
  int checked = 0;
  std::string failed;
  for (const auto& name : testing::corpus_names()) {
    auto c = testing::build_corpus(name);
    if (c.program.branch_table.size() > 10) continue;
    fuzz::EngineConfig cfg;
    cfg.seed = 5;
    cfg.budget = 3000;
    std::vector<vm::ExecutionTrace> traces;
    fuzz::evolve(c.program, c.contract, cfg,
                 [&](const fuzz::TestCase&, const std::vector<vm::ExecutionTrace>& tr) {
                   traces.insert(traces.end(), tr.begin(), tr.end());
                 });
    ++checked;
    if (energy::search_branches(traces, c.program, energy::default_vulnerable_set()) !=
        testing::exhaustive_search(traces, c.contract))
      failed += " " + name;
  }
  return {failed.empty() && checked > 0,
          std::to_string(checked) + " contracts compared" +
              (failed.empty() ? "" : ", differing:" + failed)};
}

// Criteria 7 and 8 share two corpus runs.
constexpr std::uint64_t kCorpusBudget = 50000;
constexpr std::uint64_t kCorpusSeed = 7;

struct CorpusRuns {
  campaign::CorpusSummary first;
  double first_seconds = 0;
  fs::path dir_a, dir_b;
};

CorpusRuns run_corpus_twice() {
  CorpusRuns runs;
  fs::path root = fs::temp_directory_path() / "minifuzz_acceptance";
  fs::remove_all(root);
  runs.dir_a = root / "a";
  runs.dir_b = root / "b";
  const int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  auto start = Clock::now();
  runs.first = campaign::run_corpus(testing::corpus_dir(), config(kCorpusSeed, kCorpusBudget),
                                    jobs, runs.dir_a);
  runs.first_seconds = seconds_since(start);
  campaign::run_corpus(testing::corpus_dir(), config(kCorpusSeed, kCorpusBudget), jobs,
                       runs.dir_b);
  return runs;
}

Outcome detection_corpus(const CorpusRuns& runs) {
  using campaign::Expectation;
  std::map<std::string, const campaign::ContractOutcome*> by_name;
  for (const auto& c : runs.first.contracts) by_name[c.name] = &c;
  auto found = [&](const std::string& name) {
    auto it = by_name.find(name);
    return it == by_name.end() || !it->second->ok ? Expectation{{FindingKind::kDG, "?"}}
                                                 : it->second->found;
  };
  std::vector<std::string> problems;
  if (!found("guessnum").count({FindingKind::kRE, "getReward"})) problems.push_back("guessnum lacks RE");
  for (const auto& f : found("guessnum_patched"))
    if (f.first == FindingKind::kRE) problems.push_back("guessnum_patched has RE");
  auto strict = found("strictgame");
  if (!strict.count({FindingKind::kSE, "guess"}) || !strict.count({FindingKind::kEF, "guess"}))
    problems.push_back("strictgame lacks SE+EF");
  int safe = 0;
  for (const auto& [name, c] : by_name) {
    if (name.rfind("safe_", 0) != 0) continue;
    ++safe;
    if (!found(name).empty()) problems.push_back(name + " has findings");
  }
  if (safe < 5) problems.push_back("fewer than 5 known-safe contracts");

  // Every witness must replay, twice, with identical traces.
  auto options = campaign::detect_options(config(kCorpusSeed, kCorpusBudget));
  int witnesses = 0;
  for (const auto& [name, c] : by_name) {
    if (found(name).empty()) continue;
    auto r = campaign::run_campaign(testing::corpus_source(name), config(kCorpusSeed, kCorpusBudget));
    for (const auto& f : r.findings) {
      ++witnesses;
      bool ok = oracle::replays(r.program, f, options) && oracle::replays(r.program, f, options);
      auto a = oracle::replay_witness(r.program, f.witness, options);
      auto b = oracle::replay_witness(r.program, f.witness, options);
      ok = ok && !a.empty() && a == b;
      if (!ok) problems.push_back(name + " " + oracle::to_string(f.kind) + " witness");
    }
  }
  if (runs.first_seconds >= 300) problems.push_back("corpus run took too long");

  int matched = 0;
  for (const auto& c : runs.first.contracts) matched += c.ok && c.found == c.expected;
  std::ostringstream d;
  d << runs.first.contracts.size() << " contracts (" << matched << " match expectations), "
    << witnesses << " witnesses replayed, corpus run " << runs.first_seconds << " s";
  for (const auto& p : problems) d << "; " << p;
  return {problems.empty(), d.str()};
}

Outcome corpus_determinism(const CorpusRuns& runs) {
  int compared = 0;
  std::vector<std::string> differing;
  for (const auto& entry : fs::recursive_directory_iterator(runs.dir_a)) {
    if (!entry.is_regular_file()) continue;
    auto name = entry.path().filename().string();
    if (name != "report.json" && name != "coverage.csv") continue;
    fs::path other = runs.dir_b / fs::relative(entry.path(), runs.dir_a);
    ++compared;
    if (!fs::exists(other) ||
        campaign::read_file(entry.path()) != campaign::read_file(other))
      differing.push_back(fs::relative(entry.path(), runs.dir_a).string());
  }
  std::ostringstream d;
  d << compared << " report/coverage files compared";
  for (const auto& f : differing) d << "; differs: " << f;
  return {differing.empty() && compared > 0, d.str()};
}

}  // namespace
}  // namespace minifuzz

int main() {
  using namespace minifuzz;
  struct Row {
    const char* name;
    std::function<Outcome()> run;
  };
  std::unique_ptr<CorpusRuns> runs;
  auto corpus = [&]() -> const CorpusRuns& {
    if (!runs) runs = std::make_unique<CorpusRuns>(run_corpus_twice());
    return *runs;
  };
  const Row rows[] = {
      {"1 order priority worked example", order_example},
      {"2 branch distance property suite", distance_property},
      {"3 distance guidance ablation", distance_ablation},
      {"4 prolongation ablation", prolongation_ablation},
      {"5 energy allocation ablation", energy_ablation},
      {"6 branch search oracle equivalence", search_equivalence},
      {"7 end-to-end detection corpus", [&] { return detection_corpus(corpus()); }},
      {"8 corpus determinism", [&] { return corpus_determinism(corpus()); }},
  };
  int failures = 0;
  for (const auto& row : rows) {
    Outcome o;
    try {
      o = row.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << row.name << ": " << o.detail
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
