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


#include "minifuzz/sequence/order.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace minifuzz::sequence {

std::vector<std::uint64_t> order_priority(
    const std::vector<std::vector<lang::GlobalAccess>>& accesses) {
  // Per variable: writes of each function and reads summed over all
  // functions. Pair counting then reduces to W_i(v) * (R(v) - R_i(v)).
  std::map<std::string, std::uint64_t> total_reads;
  std::vector<std::map<std::string, std::uint64_t>> reads(accesses.size());
  std::vector<std::map<std::string, std::uint64_t>> writes(accesses.size());
  for (std::size_t i = 0; i < accesses.size(); ++i) {
    for (const auto& a : accesses[i]) {
      if (a.op == lang::AccessOp::kRead) {
        ++reads[i][a.var];
        ++total_reads[a.var];
      } else {
        ++writes[i][a.var];
      }
    }
  }
  std::vector<std::uint64_t> op(accesses.size(), 0);
  for (std::size_t i = 0; i < accesses.size(); ++i) {
    for (const auto& [var, w] : writes[i]) {
      auto own = reads[i].find(var);
      std::uint64_t others = total_reads[var] - (own == reads[i].end() ? 0 : own->second);
      op[i] += w * others;
    }
  }
  return op;
}

std::vector<std::vector<lang::GlobalAccess>> accesses_by_function(const lang::Contract& c) {
  std::vector<std::vector<lang::GlobalAccess>> out;
  out.reserve(c.functions.size());
  for (const auto& f : c.functions) {
    auto it = c.accesses.find(f.name);
    out.push_back(it == c.accesses.end() ? std::vector<lang::GlobalAccess>{} : it->second);
  }
  return out;
}

std::vector<int> build_sequence(const std::vector<std::uint64_t>& priority) {
  std::vector<int> order(priority.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return priority[a] > priority[b]; });
  return order;
}

std::vector<int> build_sequence(const lang::Contract& contract) {
  return build_sequence(order_priority(accesses_by_function(contract)));
}

int differing_parameters(const SequenceVariant& a, const SequenceVariant& b) {
  int diff = 0;
  for (std::size_t c = 0; c < std::min(a.size(), b.size()); ++c) {
    const auto& x = a[c].args;
    const auto& y = b[c].args;
    for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i)
      if (x[i] != y[i]) ++diff;
  }
  return diff;
}

bool admissible_pair(const SequenceVariant& a, const SequenceVariant& b) {
  std::size_t params = 0;
  for (const auto& call : a) params += call.args.size();
  int threshold = params <= 2 ? 1 : 2;
  return differing_parameters(a, b) >= threshold;
}

std::vector<std::pair<int, int>> select_pairs(const std::vector<SequenceVariant>& variants) {
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < variants.size(); ++i)
    for (std::size_t j = i + 1; j < variants.size(); ++j)
      if (admissible_pair(variants[i], variants[j]))
        pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
  return pairs;
}

SequenceVariant prolong(const SequenceVariant& first, const SequenceVariant& second) {
  SequenceVariant out = first;
  out.insert(out.end(), second.begin(), second.end());
  return out;
}

}  // namespace minifuzz::sequence
