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


#ifndef MINIFUZZ_ORACLE_REPORT_HPP_
#define MINIFUZZ_ORACLE_REPORT_HPP_

#include <string>
#include <vector>

#include <json.hpp>

#include "minifuzz/energy/branch_search.hpp"
#include "minifuzz/energy/schedule.hpp"
#include "minifuzz/fuzz/engine.hpp"
#include "minifuzz/lang/ast.hpp"
#include "minifuzz/lang/bytecode.hpp"
#include "minifuzz/oracle/detect.hpp"

namespace minifuzz::oracle {

struct EnergyDecision {
  lang::EdgeId branch = 0;
  int rarity = 1;
  bool vulnerable = false;
  std::uint64_t energy = 0;
};

// Energy the schedule assigns to every discovered branch.
std::vector<EnergyDecision> energy_decisions(const energy::BranchSearch& search,
                                             const energy::EnergySchedule& schedule);

struct ReportInput {
  const lang::BytecodeProgram& program;
  const fuzz::TestSuite& suite;
  const std::vector<Finding>& findings;
  const std::vector<EnergyDecision>& energy;
  const std::vector<u256>& callers;
  nlohmann::json config;
  std::string log_csv;  // file name of the coverage log
};

nlohmann::json case_json(const lang::BytecodeProgram& program, const fuzz::TestCase& test,
                         const std::vector<u256>& callers);
nlohmann::json witness_json(const lang::BytecodeProgram& program, const Witness& w,
                            const std::vector<u256>& callers);

// Deterministic JSON report: keys sorted, findings in report order.
nlohmann::json report_json(const ReportInput& in);
std::string report_text(const ReportInput& in);

// `elapsed_ms,executions,branches_covered,total_branches` with a header row.
std::string coverage_csv(const fuzz::TestSuite& suite);

// Archived cases with the edges each covers.
nlohmann::json suite_json(const lang::BytecodeProgram& program, const fuzz::TestSuite& suite,
                          const std::vector<u256>& callers);

std::string edge_name(const lang::BytecodeProgram& program, lang::EdgeId e);

}  // namespace minifuzz::oracle

#endif  // MINIFUZZ_ORACLE_REPORT_HPP_
