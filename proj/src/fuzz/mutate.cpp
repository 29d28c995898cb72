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


#include "minifuzz/fuzz/mutate.hpp"

#include <algorithm>
#include <functional>

namespace minifuzz::fuzz {

using lang::Type;

bool ValuePool::contains(const u256& v) const {
  return std::binary_search(values.begin(), values.end(), v);
}

std::vector<u256> fixed_interesting_values() {
  return {0, 1, 2, 10, kFinney * 50, u256(1) << 255, kMaxU256};
}

namespace {

void collect_comparison_literals(const lang::Expr& e, std::vector<u256>& out,
                                 std::vector<int>& globals) {
  if (e.kind == lang::ExprKind::kBinary && lang::is_comparison(e.op)) {
    for (const lang::Expr* side : {e.lhs.get(), e.rhs.get()}) {
      if (side->kind == lang::ExprKind::kIntLit) out.push_back(side->value);
      if (side->kind == lang::ExprKind::kVar && side->ref.scope == lang::VarRef::Scope::kGlobal)
        globals.push_back(side->ref.index);
    }
  }
  if (e.lhs) collect_comparison_literals(*e.lhs, out, globals);
  if (e.rhs) collect_comparison_literals(*e.rhs, out, globals);
}

void collect_block(const lang::Block& b, std::vector<u256>& out, std::vector<int>& globals);

void collect_stmt(const lang::Stmt& s, std::vector<u256>& out, std::vector<int>& globals) {
  for (const lang::Expr* e : {s.index.get(), s.value.get(), s.target.get()})
    if (e) collect_comparison_literals(*e, out, globals);
  if (s.init) collect_stmt(*s.init, out, globals);
  if (s.update) collect_stmt(*s.update, out, globals);
  collect_block(s.then_body, out, globals);
  collect_block(s.else_body, out, globals);
}

void collect_block(const lang::Block& b, std::vector<u256>& out, std::vector<int>& globals) {
  for (const auto& s : b) collect_stmt(*s, out, globals);
}

u256 small_random(Rng& rng) { return u256(rng.below(256)); }

u256 draw_uint(const ValuePool& pool, Rng& rng) {
  switch (rng.below(3)) {
    case 0: return pool.values[rng.below(pool.values.size())];
    case 1: return small_random(rng);
    default: return rng.word();
  }
}

u256 draw_address(const ValuePool& pool, Rng& rng) {
  if (rng.chance(3, 4)) return pool.addresses[rng.below(pool.addresses.size())];
  return rng.word() & (kAddressLimit - 1);
}

u256 draw_arg(Type t, const ValuePool& pool, Rng& rng) {
  switch (t) {
    case Type::kBool: return rng.below(2);
    case Type::kAddress: return draw_address(pool, rng);
    default: return draw_uint(pool, rng);
  }
}

u256 field_mask(const Field& f) {
  return f.width_bits >= 256 ? kMaxU256 : (u256(1) << f.width_bits) - 1;
}

int pick_bit(const Field& f, Rng& rng) {
  // Half of the flips land in the low 16 bits, where small counters and
  // indices live.
  int width = f.width_bits;
  if (width > 16 && rng.chance(1, 2)) width = 16;
  return static_cast<int>(rng.below(width));
}

bool numeric(const Field& f) {
  return f.kind != FieldKind::kCaller && !(f.kind == FieldKind::kArg && f.type == Type::kBool);
}

}  // namespace

ValuePool harvest_pool(const lang::Contract& contract, const vm::Genesis& genesis) {
  ValuePool pool;
  pool.values = fixed_interesting_values();
  std::vector<int> globals;
  for (const auto& f : contract.functions) collect_block(f.body, pool.values, globals);
  for (int g : globals)
    if (contract.globals[g].init) pool.values.push_back(*contract.globals[g].init);
  std::sort(pool.values.begin(), pool.values.end());
  pool.values.erase(std::unique(pool.values.begin(), pool.values.end()), pool.values.end());
  pool.addresses = genesis.callers;
  pool.addresses.push_back(genesis.contract_address);
  pool.addresses.push_back(0);
  return pool;
}

TestCase init_case(const std::vector<int>& order, const GenContext& ctx, Rng& rng) {
  TestCase test;
  for (int fid : order) {
    const auto& fn = ctx.program.functions[fid];
    vm::FunctionCall c;
    c.function = fid;
    for (Type t : fn.params) c.args.push_back(draw_arg(t, ctx.pool, rng));
    if (fn.payable && rng.chance(3, 4)) {
      c.value = rng.chance(1, 2) ? ctx.pool.values[rng.below(ctx.pool.values.size())]
                                 : small_random(rng) * kFinney;
    }
    c.caller = ctx.genesis.callers[rng.below(ctx.genesis.callers.size())];
    c.timestamp = kBaseTimestamp + rng.below(100000);
    c.number = kBaseBlockNumber + rng.below(10000);
    test.calls.push_back(std::move(c));
  }
  return test;
}

TestCase random_case(const std::vector<int>& order, const GenContext& ctx, Rng& rng) {
  TestCase test;
  for (int fid : order) {
    const auto& fn = ctx.program.functions[fid];
    vm::FunctionCall c;
    c.function = fid;
    for (Type t : fn.params) {
      u256 w = rng.word();
      if (t == Type::kBool) w &= 1;
      if (t == Type::kAddress) w &= kAddressLimit - 1;
      c.args.push_back(w);
    }
    if (fn.payable) c.value = rng.word();
    c.caller = ctx.genesis.callers[rng.below(ctx.genesis.callers.size())];
    c.timestamp = rng.word();
    c.number = rng.word();
    test.calls.push_back(std::move(c));
  }
  return test;
}

MutatorWeights default_weights() { return {3, 1, 1, 4, 3, 1, 1, 1}; }

u256 get_field(const Bytes& bytes, const Field& field) {
  if (field.kind == FieldKind::kCaller) return bytes[field.offset];
  return read_word(bytes, field.offset);
}

void set_field(Bytes& bytes, const Field& field, const u256& v) {
  if (field.kind == FieldKind::kCaller) bytes[field.offset] = static_cast<std::uint8_t>(v & 0xFF);
  else write_word(bytes, field.offset, v & field_mask(field));
}

void flip_bit(Bytes& bytes, const Field& field, int bit) {
  set_field(bytes, field, get_field(bytes, field) ^ (u256(1) << bit));
}

namespace {

// One operator application; false when the operator has nothing to act on.
bool apply(Mutator op, Bytes& bytes, const std::vector<Field>& fields, const GenContext& ctx,
           const TestCase& test, Rng& rng) {
  std::vector<const Field*> pick;
  auto choose = [&](const std::function<bool(const Field&)>& pred) -> const Field* {
    pick.clear();
    for (const auto& f : fields)
      if (pred(f)) pick.push_back(&f);
    return pick.empty() ? nullptr : pick[rng.below(pick.size())];
  };
  auto payable = [&](const Field& f) {
    return ctx.program.functions[test.calls[f.call].function].payable;
  };
  auto mutable_numeric = [&](const Field& f) {
    return numeric(f) && (f.kind != FieldKind::kValue || payable(f));
  };
  switch (op) {
    case Mutator::kBitFlip: {
      const Field* f = choose([&](const Field& x) {
        return x.kind != FieldKind::kCaller && (x.kind != FieldKind::kValue || payable(x));
      });
      if (!f) return false;
      flip_bit(bytes, *f, pick_bit(*f, rng));
      return true;
    }
    case Mutator::kMultiBitFlip: {
      const Field* f = choose(mutable_numeric);
      if (!f) return false;
      int n = 2 + static_cast<int>(rng.below(7));
      for (int i = 0; i < n; ++i) flip_bit(bytes, *f, pick_bit(*f, rng));
      return true;
    }
    case Mutator::kByteFlip: {
      const Field* f = choose(mutable_numeric);
      if (!f) return false;
      int byte = static_cast<int>(rng.below(f->width_bits / 8));
      set_field(bytes, *f, get_field(bytes, *f) ^ (u256(0xFF) << (8 * byte)));
      return true;
    }
    case Mutator::kArith: {
      const Field* f = choose([&](const Field& x) {
        return mutable_numeric(x) && x.type != Type::kAddress;
      });
      if (!f) return false;
      u256 delta = 1 + rng.below(35);
      u256 v = get_field(bytes, *f);
      set_field(bytes, *f, rng.chance(1, 2) ? v + delta : v - delta);
      return true;
    }
    case Mutator::kSplice: {
      const Field* f = choose([](const Field& x) { return x.kind == FieldKind::kArg; });
      if (!f) return false;
      if (f->type == Type::kBool) set_field(bytes, *f, rng.below(2));
      else if (f->type == Type::kAddress)
        set_field(bytes, *f, ctx.pool.addresses[rng.below(ctx.pool.addresses.size())]);
      else set_field(bytes, *f, ctx.pool.values[rng.below(ctx.pool.values.size())]);
      return true;
    }
    case Mutator::kValueFromPool: {
      const Field* f = choose([&](const Field& x) {
        return x.kind == FieldKind::kValue && payable(x);
      });
      if (!f) return false;
      set_field(bytes, *f, ctx.pool.values[rng.below(ctx.pool.values.size())]);
      return true;
    }
    case Mutator::kCallerSwap: {
      const Field* f = choose([](const Field& x) { return x.kind == FieldKind::kCaller; });
      if (!f || ctx.genesis.callers.size() < 2) return false;
      u256 now = get_field(bytes, *f);
      u256 next = (now + 1 + rng.below(ctx.genesis.callers.size() - 1)) %
                  ctx.genesis.callers.size();
      set_field(bytes, *f, next);
      return true;
    }
    case Mutator::kBlockNudge: {
      const Field* f = choose([](const Field& x) {
        return x.kind == FieldKind::kTimestamp || x.kind == FieldKind::kNumber;
      });
      if (!f) return false;
      u256 delta = 1 + rng.below(f->kind == FieldKind::kTimestamp ? 900 : 64);
      u256 v = get_field(bytes, *f);
      set_field(bytes, *f, rng.chance(1, 2) ? v + delta : v - delta);
      return true;
    }
  }
  return false;
}

Mutator pick_mutator(const MutatorWeights& w, Rng& rng) {
  int total = 0;
  for (int x : w) total += x;
  int r = static_cast<int>(rng.below(total));
  for (int i = 0; i < kMutatorCount; ++i) {
    if (r < w[i]) return static_cast<Mutator>(i);
    r -= w[i];
  }
  return Mutator::kArith;
}

}  // namespace

TestCase mutate(const TestCase& test, const GenContext& ctx, Rng& rng,
                const MutatorWeights& weights) {
  const Bytes original = encode(test, ctx.genesis.callers);
  const std::vector<Field> fields = layout(test, ctx.program);
  for (int attempt = 0; attempt < kMutationAttempts; ++attempt) {
    Bytes bytes = original;
    if (!apply(pick_mutator(weights, rng), bytes, fields, ctx, test, rng)) continue;
    auto decoded = decode(bytes, ctx.program, ctx.genesis.callers);
    if (decoded && validity_check(*decoded, ctx.program, ctx.genesis.callers)) return *decoded;
  }
  rng.next();
  return test;
}

}  // namespace minifuzz::fuzz
