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

// Campaign driver, corpus runner, and command-line behavior.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "minifuzz/campaign/campaign.hpp"
#include "support/testing.hpp"

namespace minifuzz {
namespace {

namespace fs = std::filesystem;
using campaign::Expectation;
using oracle::FindingKind;

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("minifuzz_campaign_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

int run_cli(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " '" + std::string(MINIFUZZ_CLI_PATH) + "' " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

campaign::CampaignConfig config(std::uint64_t seed, std::uint64_t budget) {
  campaign::CampaignConfig c;
  c.engine.seed = seed;
  c.engine.budget = budget;
  return c;
}

TEST(Expectation, Parse) {
  EXPECT_TRUE(campaign::parse_expectation("").empty());
  EXPECT_TRUE(campaign::parse_expectation("# nothing\n\n").empty());
  EXPECT_EQ(campaign::parse_expectation("EF guess\nSE guess  # strict balance\n"),
            (Expectation{{FindingKind::kEF, "guess"}, {FindingKind::kSE, "guess"}}));
  EXPECT_THROW(campaign::parse_expectation("ZZ guess\n"), std::runtime_error);
  EXPECT_THROW(campaign::parse_expectation("RE\n"), std::runtime_error);
}

TEST(Expectation, EveryCorpusSidecarParses) {
  for (const auto& name : testing::corpus_names()) {
    auto sidecar = testing::corpus_dir() / (name + ".expect");
    ASSERT_TRUE(fs::exists(sidecar)) << name;
    auto expected = campaign::parse_expectation(campaign::read_file(sidecar));
    auto c = testing::build_corpus(name);
    for (const auto& [kind, function] : expected) {
      EXPECT_GE(c.contract.function_index(function), 0) << name << " " << function;
    }
  }
}

TEST(Artifacts, AllFilesWritten) {
  auto r = campaign::run_campaign(testing::corpus_source("guessnum"), config(1, 2000));
  auto dir = scratch("artifacts");
  campaign::write_artifacts(r, dir);
  for (const char* f : {"report.json", "report.txt", "coverage.csv", "suite.json", "traces.tsv"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  EXPECT_EQ(campaign::read_file(dir / "report.json"), r.report_json);
}

TEST(Artifacts, TraceLogHasOneBlockPerSeed) {
  auto r = campaign::run_campaign(testing::corpus_source("guessnum"), config(1, 2000));
  std::size_t seeds = 0, calls = 0, ends = 0;
  std::istringstream in(r.trace_log);
  for (std::string line; std::getline(in, line);) {
    auto tag = line.substr(0, line.find('\t'));
    seeds += tag == "SEED";
    calls += tag == "CALL";
    ends += tag == "END";
  }
  EXPECT_EQ(seeds, r.suite.seeds.size());
  std::size_t expected_calls = 0;
  for (const auto& s : r.suite.seeds) expected_calls += s.test.calls.size();
  EXPECT_EQ(calls, expected_calls);
  EXPECT_EQ(ends, expected_calls);
}

TEST(Corpus, EmptyDirectory) {
  auto dir = scratch("empty");
  auto s = campaign::run_corpus(dir, config(1, 100), 1, {});
  EXPECT_TRUE(s.contracts.empty());
  EXPECT_EQ(campaign::summary_csv(s),
            "contract,status,executions,branches_covered,total_branches,found,expected,tp,fp,fn\n");
  for (const auto& [kind, counts] : s.classes) {
    EXPECT_EQ(counts.tp + counts.fp + counts.fn, 0) << oracle::to_string(kind);
  }
}

TEST(Corpus, ParseErrorIsReportedPerContract) {
  auto dir = scratch("broken");
  write(dir / "bad.msol", "contract Bad { fn f( }");
  write(dir / "good.msol", testing::corpus_source("safe_counter"));
  auto s = campaign::run_corpus(dir, config(1, 500), 1, {});
  ASSERT_EQ(s.contracts.size(), 2u);
  EXPECT_EQ(s.contracts[0].name, "bad");
  EXPECT_FALSE(s.contracts[0].ok);
  EXPECT_FALSE(s.contracts[0].error.empty());
  EXPECT_TRUE(s.contracts[1].ok);
}

TEST(Corpus, ClassCountsFollowExpectations) {
  auto dir = scratch("counts");
  write(dir / "guessnum.msol", testing::corpus_source("guessnum"));
  write(dir / "guessnum.expect", "RE getReward\nUC guess\n");
  write(dir / "plain.msol", testing::corpus_source("guessnum_patched"));
  auto s = campaign::run_corpus(dir, config(7, 50000), 2, {});
  EXPECT_EQ(s.classes[FindingKind::kRE].tp, 1);
  EXPECT_EQ(s.classes[FindingKind::kRE].fp, 0);
  EXPECT_EQ(s.classes[FindingKind::kUC].fn, 1);
}

TEST(Corpus, SummaryIndependentOfWorkerCount) {
  auto dir = scratch("jobs");
  for (const char* name : {"guessnum", "safe_counter", "strictgame"}) {
    write(dir / (std::string(name) + ".msol"), testing::corpus_source(name));
  }
  auto a = campaign::run_corpus(dir, config(5, 3000), 1, {});
  auto b = campaign::run_corpus(dir, config(5, 3000), 3, {});
  EXPECT_EQ(campaign::summary_csv(a), campaign::summary_csv(b));
  EXPECT_EQ(campaign::classes_csv(a), campaign::classes_csv(b));
}

TEST(Cli, ExitCodes) {
  auto dir = scratch("cli");
  write(dir / "bad.msol", "contract Bad { fn f( }");
  auto out = (dir / "out").string();
  EXPECT_EQ(run_cli("fuzz " + (dir / "missing.msol").string() + " --out " + out), 2);
  EXPECT_EQ(run_cli("fuzz " + (dir / "bad.msol").string() + " --out " + out), 1);
  EXPECT_EQ(run_cli("fuzz " + (testing::corpus_dir() / "guessnum.msol").string() +
                    " --budget 500 --out " + out),
            0);
  EXPECT_TRUE(fs::exists(fs::path(out) / "report.json"));
  EXPECT_EQ(run_cli("corpus " + (dir / "nope").string() + " --out " + out), 2);
  EXPECT_NE(run_cli("fuzz"), 0);
  EXPECT_NE(run_cli("bogus"), 0);
  EXPECT_NE(run_cli("fuzz " + (testing::corpus_dir() / "guessnum.msol").string() +
                    " --ablation nope --out " + out),
            0);
}

TEST(Cli, OutputDirectoryFromEnvironment) {
  auto dir = scratch("env");
  auto out = dir / "from_env";
  EXPECT_EQ(run_cli("fuzz " + (testing::corpus_dir() / "safe_counter.msol").string() +
                        " --budget 300",
                    "MINIFUZZ_OUT='" + out.string() + "'"),
            0);
  EXPECT_TRUE(fs::exists(out / "report.json"));
}

TEST(Cli, EmptyCorpusSucceeds) {
  auto dir = scratch("cli_empty");
  fs::create_directories(dir / "in");
  EXPECT_EQ(run_cli("corpus " + (dir / "in").string() + " --out " + (dir / "out").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "out" / "corpus_summary.csv"));
}

}  // namespace
}  // namespace minifuzz
