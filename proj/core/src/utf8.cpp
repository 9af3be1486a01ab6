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

#include "advforge/utf8.hpp"

#include <cstdint>

namespace advforge::utf8 {
namespace {

constexpr char32_t kEscapeBase = 0xDC00;

// Returns the sequence length implied by a lead byte, 0 if it cannot lead.
int sequence_length(std::uint8_t lead) {
  if (lead < 0x80) return 1;
  if (lead >= 0xC2 && lead <= 0xDF) return 2;
  if (lead >= 0xE0 && lead <= 0xEF) return 3;
  if (lead >= 0xF0 && lead <= 0xF4) return 4;
  return 0;
}

bool is_continuation(std::uint8_t b) { return (b & 0xC0) == 0x80; }

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

}  // namespace

std::u32string decode(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto lead = static_cast<std::uint8_t>(text[i]);
    const int len = sequence_length(lead);
    bool ok = len > 0 && i + len <= text.size();
    char32_t cp = 0;
    if (ok) {
      if (len == 1) {
        cp = lead;
      } else {
        cp = lead & (0xFF >> (len + 1));
        for (int k = 1; k < len && ok; ++k) {
          const auto b = static_cast<std::uint8_t>(text[i + k]);
          ok = is_continuation(b);
          cp = (cp << 6) | (b & 0x3F);
        }
        // Reject overlong forms, surrogates and values above U+10FFFF.
        if (ok) {
          ok = !(len == 3 && cp < 0x800) && !(len == 4 && cp < 0x10000) &&
               !(cp >= 0xD800 && cp <= 0xDFFF) && cp <= 0x10FFFF;
        }
      }
    }
    if (ok) {
      out.push_back(cp);
      i += static_cast<std::size_t>(len);
    } else {
      out.push_back(kEscapeBase + lead);
      ++i;
    }
  }
  return out;
}

std::string encode(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) {
    if (cp >= kEscapeBase + 0x80 && cp <= kEscapeBase + 0xFF) {
      out.push_back(static_cast<char>(cp - kEscapeBase));
    } else {
      append_utf8(out, cp);
    }
  }
  return out;
}

std::size_t length(std::string_view text) { return decode(text).size(); }

}  // namespace advforge::utf8
