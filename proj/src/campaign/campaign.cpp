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


#include "minifuzz/campaign/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "minifuzz/lang/compiler.hpp"
#include "minifuzz/lang/parser.hpp"
#include "minifuzz/oracle/report.hpp"
#include "minifuzz/vm/trace_log.hpp"

namespace minifuzz::campaign {

using nlohmann::json;

json config_json(const CampaignConfig& c) {
  const auto& e = c.engine;
  json ablations = json::array();
  if (!e.ordering) ablations.push_back("wsg");
  if (!e.distance) ablations.push_back("wdm");
  if (!e.energy) ablations.push_back("wea");
  return {{"seed", e.seed},
          {"budget", e.budget},
          {"step_limit", e.exec.step_limit},
          {"alpha", e.schedule.alpha},
          {"base_energy", e.schedule.base},
          {"rarity_power", e.schedule.rarity_power},
          {"variants", e.variants},
          {"reentry_depth", c.reentry_depth},
          {"prolong", e.prolong},
          {"genesis_balance", to_string(e.genesis.contract_balance)},
          {"ablations", ablations}};
}

oracle::DetectOptions detect_options(const CampaignConfig& config) {
  oracle::DetectOptions o;
  o.genesis = config.engine.genesis;
  o.exec = config.engine.exec;
  o.reentry_depth = config.reentry_depth;
  return o;
}

CampaignResult run_campaign(std::string_view source, const CampaignConfig& config) {
  CampaignResult r;
  r.contract = lang::parse(source);
  r.program = lang::compile(r.contract);
  oracle::Observations obs(r.program);
  r.suite = fuzz::evolve(r.program, r.contract, config.engine,
                         [&obs](const fuzz::TestCase& t, const std::vector<vm::ExecutionTrace>& tr) {
                           obs.observe(t, tr);
                         });
  const auto vulnerable = energy::default_vulnerable_set();
  std::ostringstream log;
  for (std::size_t i = 0; i < r.suite.seeds.size(); ++i) {
    const auto traces = fuzz::replay(r.program, r.suite.seeds[i].test, config.engine.genesis,
                                     config.engine.exec);
    log << "SEED\t" << i << '\n';
    for (std::size_t c = 0; c < traces.size(); ++c) {
      energy::accumulate(r.search, traces[c], r.program, vulnerable);
      vm::write_trace_log(log, r.program, traces[c], static_cast<int>(c));
    }
  }
  r.trace_log = log.str();
  r.findings = oracle::detect(r.program, r.contract, r.suite, obs, detect_options(config));

  const auto decisions = oracle::energy_decisions(r.search, config.engine.schedule);
  oracle::ReportInput in{r.program, r.suite, r.findings, decisions,
                         config.engine.genesis.callers, config_json(config), "coverage.csv"};
  r.report_json = oracle::report_json(in).dump(2) + "\n";
  r.report_text = oracle::report_text(in);
  r.coverage_csv = oracle::coverage_csv(r.suite);
  r.suite_json = oracle::suite_json(r.program, r.suite, config.engine.genesis.callers).dump(2) + "\n";
  return r;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_artifacts(const CampaignResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_file(dir / "report.json", result.report_json);
  write_file(dir / "report.txt", result.report_text);
  write_file(dir / "coverage.csv", result.coverage_csv);
  write_file(dir / "suite.json", result.suite_json);
  write_file(dir / "traces.tsv", result.trace_log);
}

Expectation parse_expectation(std::string_view text) {
  Expectation out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    line = line.substr(0, line.find('#'));
    std::istringstream fields(line);
    std::string kind, function;
    if (!(fields >> kind)) continue;
    if (!(fields >> function)) throw std::runtime_error("expectation line lacks a function: " + line);
    auto k = oracle::parse_kind(kind);
    if (!k) throw std::runtime_error("unknown finding kind '" + kind + "'");
    out.emplace(*k, function);
  }
  return out;
}

namespace {

ContractOutcome run_one(const std::filesystem::path& source, const CampaignConfig& config,
                        const std::filesystem::path& out_dir) {
  ContractOutcome o;
  o.name = source.stem().string();
  auto start = std::chrono::steady_clock::now();
  try {
    auto sidecar = std::filesystem::path(source).replace_extension(".expect");
    if (std::filesystem::exists(sidecar)) o.expected = parse_expectation(read_file(sidecar));
    CampaignResult r = run_campaign(read_file(source), config);
    for (const auto& f : r.findings)
      o.found.emplace(f.kind, r.program.functions[f.function].name);
    o.executions = r.suite.executions;
    o.covered = r.suite.covered.size();
    o.total = r.suite.total_edges;
    if (!out_dir.empty()) write_artifacts(r, out_dir / o.name);
    o.ok = true;
  } catch (const std::exception& e) {
    o.error = e.what();
  }
  o.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return o;
}

}  // namespace

CorpusSummary run_corpus(const std::filesystem::path& dir, const CampaignConfig& config,
                         int jobs, const std::filesystem::path& out_dir) {
  std::vector<std::filesystem::path> sources;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".msol")
      sources.push_back(entry.path());
  std::sort(sources.begin(), sources.end());

  CorpusSummary summary;
  summary.contracts.resize(sources.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < sources.size(); i = next++)
      summary.contracts[i] = run_one(sources[i], config, out_dir);
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < std::max(1, jobs); ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (oracle::FindingKind k : oracle::kAllKinds) summary.classes[k] = {};
  for (const auto& c : summary.contracts) {
    for (const auto& f : c.found) {
      if (c.expected.count(f)) ++summary.classes[f.first].tp;
      else ++summary.classes[f.first].fp;
    }
    for (const auto& e : c.expected)
      if (!c.found.count(e)) ++summary.classes[e.first].fn;
  }
  return summary;
}

namespace {

std::string join(const Expectation& e) {
  std::string s;
  for (const auto& [k, f] : e) {
    if (!s.empty()) s += ' ';
    s += std::string(oracle::to_string(k)) + ":" + f;
  }
  return s;
}

}  // namespace

std::string summary_csv(const CorpusSummary& summary) {
  std::ostringstream out;
  out << "contract,status,executions,branches_covered,total_branches,found,expected,tp,fp,fn\n";
  for (const auto& c : summary.contracts) {
    int tp = 0, fp = 0, fn = 0;
    for (const auto& f : c.found) (c.expected.count(f) ? tp : fp)++;
    for (const auto& e : c.expected)
      if (!c.found.count(e)) ++fn;
    out << c.name << ',' << (c.ok ? "ok" : "error") << ',' << c.executions << ',' << c.covered
        << ',' << c.total << ',' << join(c.found) << ',' << join(c.expected) << ',' << tp << ','
        << fp << ',' << fn << '\n';
  }
  return out.str();
}

std::string classes_csv(const CorpusSummary& summary) {
  std::ostringstream out;
  out << "kind,tp,fp,fn\n";
  for (const auto& [k, c] : summary.classes)
    out << oracle::to_string(k) << ',' << c.tp << ',' << c.fp << ',' << c.fn << '\n';
  return out.str();
}

}  // namespace minifuzz::campaign
