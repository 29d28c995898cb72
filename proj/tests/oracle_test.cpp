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

// Vulnerability oracles and report output.

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "minifuzz/campaign/campaign.hpp"
#include "minifuzz/oracle/detect.hpp"
#include "minifuzz/oracle/report.hpp"
#include "minifuzz/vm/trace_log.hpp"
#include "support/testing.hpp"

namespace minifuzz {
namespace {

using campaign::CampaignConfig;
using campaign::CampaignResult;
using campaign::Expectation;
using oracle::FindingKind;

CampaignConfig config(std::uint64_t seed, std::uint64_t budget) {
  CampaignConfig c;
  c.engine.seed = seed;
  c.engine.budget = budget;
  return c;
}

// Campaigns are deterministic, so each (contract, seed, budget) runs once per binary.
const CampaignResult& campaign_for(const std::string& name, std::uint64_t seed = 7,
                                   std::uint64_t budget = 50000) {
  static std::map<std::tuple<std::string, std::uint64_t, std::uint64_t>, CampaignResult> cache;
  auto key = std::make_tuple(name, seed, budget);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, campaign::run_campaign(testing::corpus_source(name),
                                                   config(seed, budget)))
             .first;
  }
  return it->second;
}

std::string log_of(const lang::BytecodeProgram& program,
                   const std::vector<vm::ExecutionTrace>& traces) {
  std::ostringstream out;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    vm::write_trace_log(out, program, traces[i], static_cast<int>(i));
  }
  return out.str();
}

Expectation found(const CampaignResult& r) {
  Expectation out;
  for (const auto& f : r.findings) {
    out.emplace(f.kind, r.contract.functions[f.function].name);
  }
  return out;
}

TEST(Detect, GuessNumReentrancyOnly) {
  const auto& r = campaign_for("guessnum");
  EXPECT_EQ(found(r), (Expectation{{FindingKind::kRE, "getReward"}}));
  ASSERT_EQ(r.findings.size(), 1u);
  const auto& w = r.findings[0].witness;
  EXPECT_EQ(w.reentry_depth, 1);
  ASSERT_LT(w.call, static_cast<int>(w.test.calls.size()));
  EXPECT_EQ(r.program.functions[w.test.calls[w.call].function].name, "getReward");
}

TEST(Detect, PatchedGuessNumIsClean) {
  EXPECT_TRUE(campaign_for("guessnum_patched").findings.empty());
}

TEST(Detect, StrictGameStrictBalanceAndEtherFreeze) {
  EXPECT_EQ(found(campaign_for("strictgame")),
            (Expectation{{FindingKind::kEF, "guess"}, {FindingKind::kSE, "guess"}}));
}

TEST(Detect, TimestampComparisonWithoutPayoutIsNotDependency) {
  EXPECT_TRUE(campaign_for("timestamp_safe").findings.empty());
}

TEST(Detect, ContractWithoutTransferHasNoReentrancy) {
  const std::string src = R"(contract Ledger {
  map(address => uint256) owed;
  fn add(uint256 x) { owed[msg.sender] = owed[msg.sender] + x % 1000; }
  fn clear() { require(owed[msg.sender] > 0); owed[msg.sender] = 0; }
})";
  auto r = campaign::run_campaign(src, config(3, 5000));
  for (const auto& f : r.findings) EXPECT_NE(f.kind, FindingKind::kRE);
}

TEST(Detect, EveryCorpusFindingReplays) {
  for (const auto& name : {"guessnum", "strictgame", "timestamp_lottery", "proxy",
                           "unchecked_send", "token_overflow", "reentrant_bank"}) {
    const auto& r = campaign_for(name);
    auto options = campaign::detect_options(config(7, 50000));
    ASSERT_FALSE(r.findings.empty()) << name;
    for (const auto& f : r.findings) {
      EXPECT_TRUE(oracle::replays(r.program, f, options))
          << name << " " << oracle::to_string(f.kind);
    }
  }
}

TEST(Detect, WitnessReplayIsDeterministic) {
  for (const auto& name : {"guessnum", "strictgame", "token_overflow"}) {
    const auto& r = campaign_for(name);
    auto options = campaign::detect_options(config(7, 50000));
    for (const auto& f : r.findings) {
      auto a = oracle::replay_witness(r.program, f.witness, options);
      auto b = oracle::replay_witness(r.program, f.witness, options);
      ASSERT_FALSE(a.empty());
      EXPECT_EQ(log_of(r.program, a), log_of(r.program, b)) << name;
    }
  }
}

TEST(Detect, FindingsAreSortedAndUnique) {
  for (const auto& name : {"strictgame", "guessnum", "timestamp_lottery"}) {
    const auto& fs = campaign_for(name).findings;
    EXPECT_TRUE(std::is_sorted(fs.begin(), fs.end(), oracle::finding_less)) << name;
    for (std::size_t i = 1; i < fs.size(); ++i) {
      EXPECT_TRUE(oracle::finding_less(fs[i - 1], fs[i])) << name;
    }
  }
}

TEST(Kinds, RoundTrip) {
  for (auto k : oracle::kAllKinds) {
    EXPECT_EQ(oracle::parse_kind(oracle::to_string(k)), k);
  }
  EXPECT_FALSE(oracle::parse_kind("XX").has_value());
}

TEST(Report, SchemaKeys) {
  auto report = nlohmann::json::parse(campaign_for("guessnum").report_json);
  for (const char* key : {"config", "contract", "coverage", "energy", "findings", "sequence"}) {
    EXPECT_TRUE(report.contains(key)) << key;
  }
  for (const char* key : {"branches", "covered", "discarded", "executions", "log_csv"}) {
    EXPECT_TRUE(report["coverage"].contains(key)) << key;
  }
  EXPECT_EQ(report["config"]["seed"], 7);
  EXPECT_EQ(report["config"]["budget"], 50000);
  EXPECT_EQ(report["sequence"], (nlohmann::json{"guess", "getReward"}));
  const auto& f = report["findings"].at(0);
  for (const char* key : {"kind", "function", "site", "confidence", "explanation", "witness"}) {
    EXPECT_TRUE(f.contains(key)) << key;
  }
  EXPECT_EQ(f["kind"], "RE");
  EXPECT_EQ(f["witness"]["reentry_depth"], 1);
  for (const auto& e : report["energy"]) {
    for (const char* key : {"branch_id", "R", "vulnerable", "energy"}) {
      EXPECT_TRUE(e.contains(key)) << key;
    }
  }
}

TEST(Report, EmptyFindingsIsValid) {
  auto report = nlohmann::json::parse(campaign_for("guessnum_patched").report_json);
  ASSERT_TRUE(report["findings"].is_array());
  EXPECT_TRUE(report["findings"].empty());
  EXPECT_NE(campaign_for("guessnum_patched").report_text.find("GuessNumPatched"),
            std::string::npos);
}

TEST(Report, CoverageCsvShape) {
  const auto& r = campaign_for("guessnum");
  const auto& csv = r.coverage_csv;
  EXPECT_EQ(csv.rfind("elapsed_ms,executions,branches_covered,total_branches\n", 0), 0u);
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')),
            r.suite.log.size() + 1);
}

TEST(Report, SuiteJsonListsEverySeed) {
  const auto& r = campaign_for("guessnum");
  auto suite = nlohmann::json::parse(r.suite_json);
  EXPECT_EQ(suite["contract"], "GuessNum");
  ASSERT_EQ(suite["seeds"].size(), r.suite.seeds.size());
  std::set<lang::EdgeId> covers;
  for (const auto& s : suite["seeds"]) {
    for (const auto& e : s["covers"]) covers.insert(e.get<lang::EdgeId>());
  }
  EXPECT_EQ(covers, r.suite.covered);
}

TEST(Report, SameSeedSameBytes) {
  auto a = campaign::run_campaign(testing::corpus_source("strictgame"), config(11, 8000));
  auto b = campaign::run_campaign(testing::corpus_source("strictgame"), config(11, 8000));
  EXPECT_EQ(a.report_json, b.report_json);
  EXPECT_EQ(a.report_text, b.report_text);
  EXPECT_EQ(a.coverage_csv, b.coverage_csv);
  EXPECT_EQ(a.suite_json, b.suite_json);
}

}  // namespace
}  // namespace minifuzz
