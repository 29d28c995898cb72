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


// Command-line front end: `minifuzz fuzz <file>` and `minifuzz corpus <dir>`.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "minifuzz/campaign/campaign.hpp"
#include "minifuzz/common.hpp"
#include "minifuzz/oracle/detect.hpp"

namespace fs = std::filesystem;
using namespace minifuzz;

namespace {

struct Options {
  campaign::CampaignConfig config;
  std::string ablation;
  std::string out;
  std::string genesis_ether = "100";
  bool no_prolong = false;
  std::uint64_t time_limit_ms = 0;
};

void add_common(CLI::App& cmd, Options& o) {
  auto& e = o.config.engine;
  cmd.add_option("--seed", e.seed, "Random seed")->capture_default_str();
  cmd.add_option("--budget", e.budget, "Test-case executions per contract")->capture_default_str();
  cmd.add_option("--step-limit", e.exec.step_limit, "VM steps per call")->capture_default_str();
  cmd.add_option("--alpha", e.schedule.alpha, "Energy coefficient for vulnerable branches")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--base-energy", e.schedule.base, "Base energy E (mutations per target)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--rarity-power", e.schedule.rarity_power,
                 "Rarity multiplier r(R) = R^p")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--variants", e.variants, "Variants of the ordered sequence")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--reentry-depth", o.config.reentry_depth, "Nested re-invocations in the attack harness")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--ablation", o.ablation, "Disable one mechanism")
      ->check(CLI::IsMember({"wsg", "wdm", "wea"}));
  cmd.add_option("--out", o.out, "Output directory (default: $MINIFUZZ_OUT or ./minifuzz-out)");
  cmd.add_option("--genesis-balance", o.genesis_ether, "Contract balance at genesis, in ether")
      ->capture_default_str();
  cmd.add_flag("--no-prolong", o.no_prolong, "Never chain two sequence variants");
  cmd.add_option("--time-limit-ms", o.time_limit_ms,
                 "Wall-clock limit per contract; makes runs non-reproducible");
}

void finalize(Options& o) {
  auto& e = o.config.engine;
  if (o.ablation == "wsg") e.ordering = false;
  if (o.ablation == "wdm") e.distance = false;
  if (o.ablation == "wea") e.energy = false;
  e.prolong = !o.no_prolong;
  e.genesis.contract_balance = parse_u256(o.genesis_ether) * kEther;
  if (o.time_limit_ms > 0) e.time_limit_ms = o.time_limit_ms;
  if (o.out.empty()) {
    const char* env = std::getenv("MINIFUZZ_OUT");
    o.out = env && *env ? env : "minifuzz-out";
  }
}

int cmd_fuzz(const std::string& path, Options& o) {
  if (!fs::is_regular_file(path)) {
    std::cerr << "minifuzz: no such file: " << path << "\n";
    return 2;
  }
  auto start = std::chrono::steady_clock::now();
  campaign::CampaignResult r;
  try {
    r = campaign::run_campaign(campaign::read_file(path), o.config);
  } catch (const Diagnostic& d) {
    std::cerr << path << ":" << d.what() << "\n";
    return 1;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  campaign::write_artifacts(r, o.out);
  std::cout << r.report_text;
  std::cout << std::fixed << std::setprecision(0) << "throughput: "
            << (secs > 0 ? r.suite.executions / secs : 0.0) << " executions/sec\n";
  std::cout << "artifacts: " << o.out << "\n";
  return 0;
}

int cmd_corpus(const std::string& dir, Options& o, int jobs) {
  if (!fs::is_directory(dir)) {
    std::cerr << "minifuzz: no such directory: " << dir << "\n";
    return 2;
  }
  auto start = std::chrono::steady_clock::now();
  campaign::CorpusSummary s = campaign::run_corpus(dir, o.config, jobs, o.out);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  fs::create_directories(o.out);
  std::string summary = campaign::summary_csv(s);
  std::string classes = campaign::classes_csv(s);
  {
    std::ofstream(fs::path(o.out) / "corpus_summary.csv") << summary;
    std::ofstream(fs::path(o.out) / "corpus_classes.csv") << classes;
  }
  std::uint64_t executions = 0;
  int errors = 0;
  for (const auto& c : s.contracts) {
    executions += c.executions;
    std::cout << std::left << std::setw(24) << c.name;
    if (!c.ok) {
      ++errors;
      std::cout << "error: " << c.error << "\n";
      continue;
    }
    std::cout << std::setw(9) << (std::to_string(c.covered) + "/" + std::to_string(c.total));
    std::cout << (c.found == c.expected ? "match   " : "MISMATCH");
    for (const auto& [k, f] : c.found) std::cout << ' ' << oracle::to_string(k) << ':' << f;
    std::cout << "\n";
  }
  std::cout << "\nkind  tp  fp  fn\n";
  for (const auto& [k, c] : s.classes)
    std::cout << std::left << std::setw(6) << oracle::to_string(k) << std::setw(4) << c.tp
              << std::setw(4) << c.fp << c.fn << "\n";
  std::cout << std::fixed << std::setprecision(0) << "\n" << s.contracts.size()
            << " contracts, " << executions << " executions, "
            << (secs > 0 ? executions / secs : 0.0) << " executions/sec\n";
  std::cout << "summary: " << (fs::path(o.out) / "corpus_summary.csv").string() << "\n";
  return errors == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Greybox fuzzer for MiniSol contracts"};
  app.require_subcommand(1);

  Options fuzz_opts;
  std::string file;
  auto* fuzz = app.add_subcommand("fuzz", "Fuzz one contract and report findings");
  fuzz->add_option("path", file, "MiniSol source file")->required();
  add_common(*fuzz, fuzz_opts);

  Options corpus_opts;
  std::string dir;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  auto* corpus = app.add_subcommand("corpus", "Fuzz every contract in a directory");
  corpus->add_option("dir", dir, "Directory of .msol files with .expect sidecars")->required();
  corpus->add_option("--jobs", jobs, "Parallel workers")->check(CLI::PositiveNumber);
  add_common(*corpus, corpus_opts);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*fuzz) {
      finalize(fuzz_opts);
      return cmd_fuzz(file, fuzz_opts);
    }
    finalize(corpus_opts);
    return cmd_corpus(dir, corpus_opts, jobs);
  } catch (const std::exception& e) {
    std::cerr << "minifuzz: " << e.what() << "\n";
    return 1;
  }
}
