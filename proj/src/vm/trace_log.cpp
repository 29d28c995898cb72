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


#include "minifuzz/vm/trace_log.hpp"

namespace minifuzz::vm {

namespace {

void write_event(std::ostream& out, const lang::BytecodeProgram& program, const Event& e,
                 int call_index) {
  out << "EVENT\t" << call_index << '\t' << to_string(e.kind) << '\t'
      << program.functions[e.function].name << '\t' << e.pc << '\t' << to_string(e.loc)
      << '\t' << e.frame << '\t' << e.step << '\t' << to_hex(e.target) << '\t'
      << minifuzz::to_string(e.amount) << '\t' << e.flag << '\t' << e.consumed << '\t' << e.committed
      << '\n';
}

}  // namespace

void write_trace_log(std::ostream& out, const lang::BytecodeProgram& program,
                     const ExecutionTrace& trace, int call_index) {
  out << "CALL\t" << call_index << '\t' << program.functions[trace.function].name << '\n';
  std::size_t ev = 0;
  for (std::size_t i = 0; i < trace.path.size(); ++i) {
    for (; ev < trace.events.size() && trace.events[ev].step <= static_cast<int>(i); ++ev)
      write_event(out, program, trace.events[ev], call_index);
    const PathStep& s = trace.path[i];
    out << "STEP\t" << call_index << '\t' << i << '\t' << s.site << '\t'
        << lang::to_string(s.dir) << '\t' << s.frame << '\t' << s.rarity << '\n';
    const ComparisonRecord& c = trace.comparisons[i];
    out << "CMP\t" << call_index << '\t' << i << '\t' << c.site << '\t'
        << lang::to_string(c.relation) << '\t' << minifuzz::to_string(c.x) << '\t' << minifuzz::to_string(c.k)
        << '\t' << c.taken << '\t' << static_cast<int>(c.taint) << '\n';
  }
  for (; ev < trace.events.size(); ++ev) write_event(out, program, trace.events[ev], call_index);
  out << "END\t" << call_index << '\t' << to_string(trace.terminal) << '\t' << trace.steps
      << '\n';
}

}  // namespace minifuzz::vm
