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


#include "minifuzz/fuzz/engine.hpp"

#include <algorithm>
#include <chrono>

#include "minifuzz/fuzz/distance.hpp"
#include "minifuzz/sequence/order.hpp"

namespace minifuzz::fuzz {

using lang::EdgeId;

bool RepeatFilter::seen(const Bytes& encoding) const {
  return archived_.count(encoding) > 0 || recent_.count(encoding) > 0;
}

void RepeatFilter::remember(const Bytes& encoding) {
  if (recent_.count(encoding)) return;
  if (ring_.size() < kRecentCases) {
    ring_.push_back(encoding);
  } else {
    recent_.erase(ring_[next_]);
    ring_[next_] = encoding;
    next_ = (next_ + 1) % kRecentCases;
  }
  recent_.insert(encoding);
}

void RepeatFilter::archive(const Bytes& encoding) { archived_.insert(encoding); }

std::vector<EdgeId> edges_of(const std::vector<vm::ExecutionTrace>& traces) {
  std::set<EdgeId> edges;
  for (const auto& t : traces)
    for (const auto& s : t.path) edges.insert(lang::edge_id(s.site, s.dir));
  return {edges.begin(), edges.end()};
}

std::map<EdgeId, u512> missed_distances(const std::vector<vm::ExecutionTrace>& traces,
                                        const std::set<EdgeId>& covered) {
  std::map<EdgeId, u512> out;
  for (const auto& t : traces) {
    for (const auto& c : t.comparisons) {
      lang::Direction missed = c.taken ? lang::Direction::kElse : lang::Direction::kThen;
      EdgeId e = lang::edge_id(c.site, missed);
      if (covered.count(e)) continue;
      u512 d = distance(c, missed);
      auto [it, inserted] = out.emplace(e, d);
      if (!inserted && d < it->second) it->second = d;
    }
  }
  return out;
}

std::vector<vm::ExecutionTrace> replay(const lang::BytecodeProgram& program,
                                       const TestCase& test, const vm::Genesis& genesis,
                                       const vm::ExecOptions& options) {
  vm::WorldState state = vm::WorldState::genesis(program, genesis);
  vm::ExecOptions o = options;
  o.contract_address = genesis.contract_address;
  return vm::execute_sequence(program, state, test.calls, o);
}

namespace {

class Engine {
 public:
  Engine(const lang::BytecodeProgram& program, const lang::Contract& contract,
         const EngineConfig& config, const ExecutionObserver& observer)
      : program_(program), config_(config), observer_(observer), rng_(config.seed),
        pool_(harvest_pool(contract, config.genesis)),
        ctx_{program, pool_, config.genesis},
        genesis_state_(vm::WorldState::genesis(program, config.genesis)),
        coverers_(program.total_edges(), 0),
        started_(std::chrono::steady_clock::now()) {
    suite_.total_edges = program.total_edges();
    suite_.sequence = sequence::build_sequence(contract);
    exec_ = config.exec;
    exec_.contract_address = config.genesis.contract_address;
    for (EdgeId e = 0; e < program.total_edges(); ++e) {
      static_rarity_.push_back(program.branch_table[lang::edge_site(e)].depth);
      static_vulnerable_.push_back(
          energy::statically_vulnerable(program, e, energy::default_vulnerable_set()));
    }
  }

  TestSuite run() {
    log_point();
    if (!config_.distance) random_generation();
    else {
      initial_population();
      while (!exhausted()) {
        const std::uint64_t before = suite_.executions;
        evolution_round();
        if (suite_.executions == before) break;  // every mutant was a repeat
      }
    }
    log_point();
    return finish();
  }

 private:
  bool exhausted() const {
    if (suite_.executions >= config_.budget) return true;
    if (config_.time_limit_ms) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - started_).count();
      if (static_cast<std::uint64_t>(ms) >= *config_.time_limit_ms) return true;
    }
    return false;
  }

  void log_point() {
    CoveragePoint p{suite_.vm_steps / kStepsPerMillisecond, suite_.executions,
                    suite_.covered.size(), suite_.total_edges};
    if (!suite_.log.empty() && suite_.log.back() == p) return;
    suite_.log.push_back(p);
  }

  std::vector<int> variant_order() {
    std::vector<int> order = suite_.sequence;
    if (!config_.ordering) {
      for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng_.below(i)]);
    }
    return order;
  }

  static std::vector<int> functions_of(const TestCase& t) {
    std::vector<int> f;
    for (const auto& c : t.calls) f.push_back(c.function);
    return f;
  }

  void initial_population() {
    std::vector<TestCase> variants;
    for (int v = 0; v < std::max(1, config_.variants) && !exhausted(); ++v) {
      variants.push_back(init_case(variant_order(), ctx_, rng_));
      execute(variants.back(), -1, /*force_archive=*/v == 0, true);
    }
    if (!config_.prolong) return;
    for (std::size_t i = 0; i < variants.size(); ++i) {
      for (std::size_t j = i + 1; j < variants.size() && !exhausted(); ++j) {
        if (functions_of(variants[i]) != functions_of(variants[j])) continue;
        if (!sequence::admissible_pair(variants[i].calls, variants[j].calls)) continue;
        execute(TestCase{sequence::prolong(variants[i].calls, variants[j].calls)}, -1, false,
                false);
      }
    }
  }

  void random_generation() {
    const std::vector<int>& order = suite_.sequence;
    bool first = true;
    while (!exhausted()) {
      TestCase t = random_case(order, ctx_, rng_);
      bool single = true;
      if (config_.prolong && rng_.chance(1, 2)) {
        TestCase second = random_case(order, ctx_, rng_);
        t.calls = sequence::prolong(t.calls, second.calls);
        single = false;
      }
      execute(t, -1, first, single, /*track_distance=*/false);
      first = false;
    }
  }

  // Returns the number of newly covered edges.
  std::size_t execute(const TestCase& test, int parent, bool force_archive, bool single,
                      bool track_distance = true) {
    ++suite_.executions;
    vm::WorldState state = genesis_state_;
    std::vector<vm::ExecutionTrace> traces =
        vm::execute_sequence(program_, state, test.calls, exec_);
    Bytes encoding = encode(test, config_.genesis.callers);
    repeat_.remember(encoding);
    bool limited = false;
    for (const auto& t : traces) {
      suite_.vm_steps += t.steps;
      limited = limited || t.terminal == vm::Terminal::kStepLimit;
    }
    if (limited) {
      ++suite_.discarded;
      return 0;
    }
    if (observer_) observer_(test, traces);

    std::vector<EdgeId> edges = edges_of(traces);
    std::vector<EdgeId> fresh;
    for (EdgeId e : edges)
      if (!suite_.covered.count(e)) fresh.push_back(e);
    for (EdgeId e : fresh) {
      suite_.covered.insert(e);
      auto it = suite_.best.find(e);
      if (it != suite_.best.end()) {
        suite_.seeds[it->second.seed].tracked.erase(e);
        suite_.best.erase(it);
      }
    }

    std::vector<EdgeId> improved;
    std::map<EdgeId, u512> dists;
    if (track_distance) {
      dists = missed_distances(traces, suite_.covered);
      for (const auto& [e, d] : dists) {
        auto it = suite_.best.find(e);
        if (it == suite_.best.end() || d < it->second.distance) improved.push_back(e);
      }
    }

    if (!fresh.empty() || !improved.empty() || force_archive) {
      int idx = archive(test, std::move(encoding), edges, single);
      for (EdgeId e : improved) {
        auto it = suite_.best.find(e);
        int old = it == suite_.best.end() ? -1 : it->second.seed;
        suite_.best[e] = BestCase{idx, dists[e]};
        suite_.seeds[idx].tracked.insert(e);
        if (old >= 0) {
          suite_.seeds[old].tracked.erase(e);
          maybe_evict(old);
        }
      }
    }
    if (!fresh.empty()) {
      if (parent >= 0 && alive_[parent]) suite_.seeds[parent].priority += fresh.size();
      log_point();
    }
    return fresh.size();
  }

  int archive(const TestCase& test, Bytes encoding, const std::vector<EdgeId>& edges,
              bool single) {
    Seed s;
    s.test = test;
    s.encoding = std::move(encoding);
    s.covered = edges;
    s.single = single;
    repeat_.archive(s.encoding);
    for (EdgeId e : edges) ++coverers_[e];
    suite_.seeds.push_back(std::move(s));
    alive_.push_back(true);
    return static_cast<int>(suite_.seeds.size()) - 1;
  }

  // A replaced seed leaves the archive only when it is no edge's closest
  // case and no covered edge would lose its last coverer.
  void maybe_evict(int idx) {
    Seed& s = suite_.seeds[idx];
    if (!alive_[idx] || !s.tracked.empty() || idx == 0) return;
    for (EdgeId e : s.covered)
      if (coverers_[e] <= 1) return;
    for (EdgeId e : s.covered) --coverers_[e];
    alive_[idx] = false;
  }

  int weighted_seed() {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < suite_.seeds.size(); ++i)
      if (alive_[i]) total += suite_.seeds[i].priority + 1;
    std::uint64_t r = rng_.below(total);
    for (std::size_t i = 0; i < suite_.seeds.size(); ++i) {
      if (!alive_[i]) continue;
      std::uint64_t w = suite_.seeds[i].priority + 1;
      if (r < w) return static_cast<int>(i);
      r -= w;
    }
    return 0;
  }

  int select_input(EdgeId target) {
    auto it = suite_.best.find(target);
    if (it != suite_.best.end() && !rng_.chance(1, kExploreOneIn)) return it->second.seed;
    return weighted_seed();
  }

  // Occasionally chains the base with another single-pass seed of the same
  // function order.
  std::optional<TestCase> prolonged(int base) {
    const Seed& s = suite_.seeds[base];
    if (!config_.prolong || !s.single || !rng_.chance(1, 16)) return std::nullopt;
    std::vector<int> partners;
    const std::vector<int> order = functions_of(s.test);
    for (std::size_t i = 0; i < suite_.seeds.size(); ++i) {
      const Seed& p = suite_.seeds[i];
      if (!alive_[i] || !p.single || static_cast<int>(i) == base) continue;
      if (functions_of(p.test) != order) continue;
      if (!sequence::admissible_pair(s.test.calls, p.test.calls)) continue;
      partners.push_back(static_cast<int>(i));
    }
    if (partners.empty()) return std::nullopt;
    const Seed& p = suite_.seeds[partners[rng_.below(partners.size())]];
    TestCase t{rng_.chance(1, 2) ? sequence::prolong(s.test.calls, p.test.calls)
                                 : sequence::prolong(p.test.calls, s.test.calls)};
    if (rng_.chance(1, 2)) t = mutate(t, ctx_, rng_);
    return t;
  }

  std::uint64_t energy_of(EdgeId target) const {
    if (!config_.energy) return config_.schedule.base;
    int r = static_rarity_[target];
    return energy::energy_for(r, r >= 2, static_vulnerable_[target], config_.schedule);
  }

  std::vector<EdgeId> ordered_targets() const {
    std::vector<EdgeId> targets;
    std::vector<std::vector<EdgeId>> covered;
    for (const auto& [e, b] : suite_.best) {
      targets.push_back(e);
      covered.push_back(suite_.seeds[b.seed].covered);
    }
    if (!config_.energy) return targets;
    std::set<EdgeId> vulnerable;
    for (EdgeId e : suite_.covered)
      if (static_vulnerable_[e]) vulnerable.insert(e);
    std::vector<EdgeId> out;
    for (int i : energy::feedback_priority(covered, vulnerable)) out.push_back(targets[i]);
    return out;
  }

  // One mutation and execution; returns the newly covered edge count, or
  // nothing when the mutant repeats an earlier case and is not run.
  std::optional<std::size_t> fuzz_once(int base) {
    std::optional<TestCase> candidate = prolonged(base);
    bool single = !candidate.has_value() && suite_.seeds[base].single;
    if (!candidate) candidate = mutate(suite_.seeds[base].test, ctx_, rng_);
    Bytes enc = encode(*candidate, config_.genesis.callers);
    if (repeat_.seen(enc)) return std::nullopt;
    return execute(*candidate, base, false, single);
  }

  // Runs mutants until `energy` of them have executed. Repeats are skipped
  // without charge, at most kSkipsPerEnergy times the energy. Returns whether
  // any mutant covered a new edge.
  template <typename Pick, typename Done>
  bool spend(std::uint64_t energy, Pick pick, Done done) {
    bool productive = false;
    std::uint64_t spent = 0, skipped = 0;
    while (spent < energy && skipped < energy * kSkipsPerEnergy && !exhausted()) {
      std::optional<std::size_t> fresh = fuzz_once(pick());
      if (!fresh) {
        ++skipped;
        continue;
      }
      ++spent;
      if (*fresh > 0) productive = true;
      if (done()) break;
    }
    return productive;
  }

  void evolution_round() {
    std::vector<EdgeId> targets = ordered_targets();
    if (targets.empty()) {
      // Nothing just missed: havoc from priority-weighted seeds.
      spend(config_.schedule.base, [&] { return weighted_seed(); }, [] { return false; });
      return;
    }
    for (EdgeId target : targets) {
      if (!suite_.best.count(target)) continue;
      std::set<int> bases;
      bool productive = spend(
          energy_of(target),
          [&] {
            int base = select_input(target);
            bases.insert(base);
            return base;
          },
          [&] { return !suite_.best.count(target); });
      if (!productive)
        for (int b : bases) suite_.seeds[b].priority /= 2;
      if (exhausted()) return;
    }
  }

  TestSuite finish() {
    TestSuite out = suite_;
    out.seeds.clear();
    std::vector<int> remap(suite_.seeds.size(), -1);
    for (std::size_t i = 0; i < suite_.seeds.size(); ++i) {
      if (!alive_[i]) continue;
      remap[i] = static_cast<int>(out.seeds.size());
      out.seeds.push_back(suite_.seeds[i]);
    }
    for (auto& [e, b] : out.best) b.seed = remap[b.seed];
    return out;
  }

  const lang::BytecodeProgram& program_;
  const EngineConfig& config_;
  const ExecutionObserver& observer_;
  Rng rng_;
  ValuePool pool_;
  GenContext ctx_;
  vm::WorldState genesis_state_;
  vm::ExecOptions exec_;
  TestSuite suite_;
  RepeatFilter repeat_;
  std::vector<bool> alive_;
  std::vector<int> coverers_;
  std::vector<int> static_rarity_;
  std::vector<bool> static_vulnerable_;
  std::chrono::steady_clock::time_point started_;
};

}  // namespace

TestSuite evolve(const lang::BytecodeProgram& program, const lang::Contract& contract,
                 const EngineConfig& config, const ExecutionObserver& observer) {
  return Engine(program, contract, config, observer).run();
}

}  // namespace minifuzz::fuzz
