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

#ifndef MINIFUZZ_COMMON_HPP_
#define MINIFUZZ_COMMON_HPP_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace minifuzz {

// 256-bit unsigned machine word. Arithmetic wraps modulo 2^256.
using u256 = boost::multiprecision::uint256_t;
// Wide enough to hold any difference of two u256 values plus one.
using u512 = boost::multiprecision::uint512_t;

inline const u256 kFinney = u256(1000000000000000ULL);
inline const u256 kEther = kFinney * 1000;
inline const u256 kMaxU256 = ~u256(0);
inline const u256 kAddressLimit = u256(1) << 160;

std::string to_string(const u256& v);
std::string to_hex(const u256& v);
u256 parse_u256(const std::string& text);  // decimal or 0x-prefixed hex

struct SourceLoc {
  int line = 0;
  int column = 0;

  friend bool operator==(const SourceLoc&, const SourceLoc&) = default;
  friend auto operator<=>(const SourceLoc&, const SourceLoc&) = default;
};

std::string to_string(const SourceLoc& loc);

// Error carrying a source position; thrown by the front end.
class Diagnostic : public std::runtime_error {
 public:
  Diagnostic(SourceLoc loc, const std::string& message)
      : std::runtime_error(to_string(loc) + ": " + message), loc_(loc),
        message_(message) {}

  const SourceLoc& loc() const { return loc_; }
  const std::string& message() const { return message_; }

 private:
  SourceLoc loc_;
  std::string message_;
};

// Deterministic random source. All campaign randomness flows through one
// instance so a fixed seed reproduces a run bit for bit. The bounded draws
// avoid std distributions, whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform-ish in [0, n); n must be > 0.
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  bool chance(std::uint64_t numerator, std::uint64_t denominator) {
    return below(denominator) < numerator;
  }
  u256 word() {
    u256 v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 64) | u256(engine_());
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace minifuzz

#endif  // MINIFUZZ_COMMON_HPP_
