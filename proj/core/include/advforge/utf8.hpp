// Copyright 2026 The advforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ADVFORGE_UTF8_HPP_
#define ADVFORGE_UTF8_HPP_

#include <string>
#include <string_view>

namespace advforge::utf8 {

// Decodes UTF-8 into Unicode scalar values. Each byte of an ill-formed
// sequence decodes to its own value in U+DC80..U+DCFF (lone low surrogates
// never produced by valid input), so malformed text still compares
// byte-faithfully and encode(decode(s)) == s for every s.
std::u32string decode(std::string_view text);

std::string encode(std::u32string_view text);

// Length in scalar values under the decode() convention.
std::size_t length(std::string_view text);

// Word character: ASCII letter, digit, or any non-ASCII scalar value.
constexpr bool is_alnum(char32_t c) {
  return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z') ||
         (c >= U'0' && c <= U'9') || c >= 0x80;
}

constexpr char32_t to_lower_ascii(char32_t c) {
  return (c >= U'A' && c <= U'Z') ? c + (U'a' - U'A') : c;
}

}  // namespace advforge::utf8

#endif  // ADVFORGE_UTF8_HPP_
