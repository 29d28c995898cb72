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


#include "minifuzz/common.hpp"

namespace minifuzz {

std::string to_string(const u256& v) { return v.str(); }

std::string to_hex(const u256& v) {
  static const char* const kDigits = "0123456789abcdef";
  if (v == 0) return "0x0";
  std::string out;
  u256 x = v;
  while (x != 0) {
    out.push_back(kDigits[static_cast<unsigned>(x & 0xf)]);
    x >>= 4;
  }
  return "0x" + std::string(out.rbegin(), out.rend());
}

u256 parse_u256(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  u512 acc = 0;
  std::size_t i = 0;
  unsigned base = 10;
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    base = 16;
    i = 2;
  }
  for (; i < text.size(); ++i) {
    char c = text[i];
    unsigned d;
    if (c >= '0' && c <= '9') {
      d = c - '0';
    } else if (base == 16 && c >= 'a' && c <= 'f') {
      d = c - 'a' + 10;
    } else if (base == 16 && c >= 'A' && c <= 'F') {
      d = c - 'A' + 10;
    } else {
      throw std::invalid_argument("bad digit in number: " + text);
    }
    acc = acc * base + d;
    if (acc > u512(kMaxU256)) throw std::out_of_range("number exceeds 2^256-1: " + text);
  }
  return u256(acc);
}

std::string to_string(const SourceLoc& loc) {
  return std::to_string(loc.line) + ":" + std::to_string(loc.column);
}

}  // namespace minifuzz
