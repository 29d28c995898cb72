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


#include "minifuzz/oracle/report.hpp"

#include <sstream>

namespace minifuzz::oracle {

using nlohmann::json;

std::vector<EnergyDecision> energy_decisions(const energy::BranchSearch& search,
                                             const energy::EnergySchedule& schedule) {
  std::vector<EnergyDecision> out;
  for (const auto& [edge, r] : search.rarity) {
    bool rare = search.rare.count(edge) > 0;
    bool vulnerable = search.vulnerable.count(edge) > 0;
    out.push_back({edge, r, vulnerable, energy::energy_for(r, rare, vulnerable, schedule)});
  }
  return out;
}

std::string edge_name(const lang::BytecodeProgram& program, lang::EdgeId e) {
  const auto& site = program.branch_table[lang::edge_site(e)];
  return std::to_string(site.id) + ":" + lang::to_string(lang::edge_direction(e)) + "@" +
         minifuzz::to_string(site.loc);
}

json case_json(const lang::BytecodeProgram& program, const fuzz::TestCase& test,
               const std::vector<u256>& callers) {
  json calls = json::array();
  for (const auto& c : test.calls) {
    json args = json::array();
    for (const auto& a : c.args) args.push_back(minifuzz::to_string(a));
    calls.push_back({{"function", program.functions[c.function].name},
                     {"args", args},
                     {"value", minifuzz::to_string(c.value)},
                     {"caller", to_hex(c.caller)},
                     {"timestamp", minifuzz::to_string(c.timestamp)},
                     {"number", minifuzz::to_string(c.number)}});
  }
  return {{"calls", calls}, {"encoding", fuzz::hex_bytes(fuzz::encode(test, callers))}};
}

json witness_json(const lang::BytecodeProgram& program, const Witness& w,
                  const std::vector<u256>& callers) {
  json j = case_json(program, w.test, callers);
  j["call"] = w.call;
  j["reentry_depth"] = w.reentry_depth;
  j["timestamp_override"] = w.alt_timestamp ? json(minifuzz::to_string(*w.alt_timestamp)) : json();
  j["number_override"] = w.alt_number ? json(minifuzz::to_string(*w.alt_number)) : json();
  return j;
}

json report_json(const ReportInput& in) {
  json sequence = json::array();
  for (int f : in.suite.sequence) sequence.push_back(in.program.functions[f].name);
  json findings = json::array();
  for (const auto& f : in.findings) {
    findings.push_back({{"kind", to_string(f.kind)},
                        {"function", in.program.functions[f.function].name},
                        {"site", minifuzz::to_string(f.site)},
                        {"site_id", f.site_id},
                        {"witness", witness_json(in.program, f.witness, in.callers)},
                        {"confidence", f.confidence},
                        {"explanation", f.explanation}});
  }
  json energy = json::array();
  for (const auto& d : in.energy) {
    energy.push_back({{"branch_id", d.branch},
                      {"branch", edge_name(in.program, d.branch)},
                      {"R", d.rarity},
                      {"vulnerable", d.vulnerable},
                      {"energy", d.energy}});
  }
  return {{"contract", in.program.contract},
          {"sequence", sequence},
          {"coverage",
           {{"branches", in.suite.total_edges},
            {"covered", in.suite.covered.size()},
            {"executions", in.suite.executions},
            {"discarded", in.suite.discarded},
            {"log_csv", in.log_csv}}},
          {"findings", findings},
          {"config", in.config},
          {"energy", energy}};
}

std::string report_text(const ReportInput& in) {
  std::ostringstream out;
  out << "contract " << in.program.contract << "\n";
  out << "sequence:";
  for (int f : in.suite.sequence) out << ' ' << in.program.functions[f].name;
  out << "\ncoverage: " << in.suite.covered.size() << '/' << in.suite.total_edges
      << " branches after " << in.suite.executions << " executions\n";
  out << "findings: " << in.findings.size() << "\n";
  for (const auto& f : in.findings) {
    out << "  " << to_string(f.kind) << ' ' << in.program.functions[f.function].name << " at "
        << minifuzz::to_string(f.site) << " [" << f.confidence << "] " << f.explanation << "\n";
    out << "    witness:";
    for (std::size_t i = 0; i < f.witness.test.calls.size(); ++i) {
      const auto& c = f.witness.test.calls[i];
      out << (i ? " -> " : " ") << in.program.functions[c.function].name << '(';
      for (std::size_t a = 0; a < c.args.size(); ++a) out << (a ? "," : "") << minifuzz::to_string(c.args[a]);
      out << ')';
      if (c.value > 0) out << "{value " << minifuzz::to_string(c.value) << '}';
    }
    if (f.witness.reentry_depth > 0) out << " under reentry depth " << f.witness.reentry_depth;
    if (f.witness.alt_timestamp) out << " with timestamp " << minifuzz::to_string(*f.witness.alt_timestamp);
    if (f.witness.alt_number) out << " with block number " << minifuzz::to_string(*f.witness.alt_number);
    out << "\n";
  }
  return out.str();
}

std::string coverage_csv(const fuzz::TestSuite& suite) {
  std::ostringstream out;
  out << "elapsed_ms,executions,branches_covered,total_branches\n";
  for (const auto& p : suite.log)
    out << p.elapsed_ms << ',' << p.executions << ',' << p.covered << ',' << p.total << '\n';
  return out.str();
}

json suite_json(const lang::BytecodeProgram& program, const fuzz::TestSuite& suite,
                const std::vector<u256>& callers) {
  json seeds = json::array();
  for (const auto& s : suite.seeds) {
    json j = case_json(program, s.test, callers);
    j["covers"] = s.covered;
    j["priority"] = s.priority;
    seeds.push_back(j);
  }
  return {{"contract", program.contract}, {"seeds", seeds}};
}

}  // namespace minifuzz::oracle
