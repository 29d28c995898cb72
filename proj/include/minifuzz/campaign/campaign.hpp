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


// End-to-end pipeline: parse, analyze, compile, order, evolve, detect,
// report. Shared by the command-line tool and the tests.

#ifndef MINIFUZZ_CAMPAIGN_CAMPAIGN_HPP_
#define MINIFUZZ_CAMPAIGN_CAMPAIGN_HPP_

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "minifuzz/energy/branch_search.hpp"
#include "minifuzz/fuzz/engine.hpp"
#include "minifuzz/lang/ast.hpp"
#include "minifuzz/lang/bytecode.hpp"
#include "minifuzz/oracle/detect.hpp"

namespace minifuzz::campaign {

struct CampaignConfig {
  fuzz::EngineConfig engine;
  int reentry_depth = 1;
};

nlohmann::json config_json(const CampaignConfig& config);

struct CampaignResult {
  lang::Contract contract;
  lang::BytecodeProgram program;
  fuzz::TestSuite suite;
  energy::BranchSearch search;
  std::vector<oracle::Finding> findings;
  std::string report_json;
  std::string report_text;
  std::string coverage_csv;
  std::string suite_json;
  std::string trace_log;  // replay of every suite seed
};

oracle::DetectOptions detect_options(const CampaignConfig& config);

// Throws Diagnostic on parse or compile errors.
CampaignResult run_campaign(std::string_view source, const CampaignConfig& config);

// report.json, report.txt, coverage.csv and suite.json under `dir`.
void write_artifacts(const CampaignResult& result, const std::filesystem::path& dir);

// Expected findings of a corpus contract: one `KIND function` pair per line,
// `#` starts a comment.
using Expectation = std::set<std::pair<oracle::FindingKind, std::string>>;

Expectation parse_expectation(std::string_view text);

struct ContractOutcome {
  std::string name;
  bool ok = false;
  std::string error;
  Expectation expected;
  Expectation found;
  std::uint64_t executions = 0;
  std::size_t covered = 0;
  std::size_t total = 0;
  double wall_seconds = 0;  // not part of any deterministic output
};

struct ClassCounts {
  int tp = 0;
  int fp = 0;
  int fn = 0;
};

struct CorpusSummary {
  std::vector<ContractOutcome> contracts;  // sorted by name
  std::map<oracle::FindingKind, ClassCounts> classes;
};

// Runs every `*.msol` file of `dir` (sidecar `<name>.expect`) with `jobs`
// workers. Artifacts go to `out_dir/<name>/` when out_dir is non-empty.
CorpusSummary run_corpus(const std::filesystem::path& dir, const CampaignConfig& config,
                         int jobs, const std::filesystem::path& out_dir);

std::string summary_csv(const CorpusSummary& summary);
std::string classes_csv(const CorpusSummary& summary);

std::string read_file(const std::filesystem::path& path);

}  // namespace minifuzz::campaign

#endif  // MINIFUZZ_CAMPAIGN_CAMPAIGN_HPP_
