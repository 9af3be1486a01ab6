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

#include "advforge/numeric_format.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

namespace advforge {
namespace {

double scaled_magnitude(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const double scaled = std::fabs(value) * scale;
  const double nudge = 1e-9 * std::max(1.0, scaled);
  return std::floor(scaled + 0.5 + nudge);
}

}  // namespace

double round_half_up(double value, int decimals) {
  const double magnitude =
      scaled_magnitude(value, decimals) / std::pow(10.0, decimals);
  return std::signbit(value) ? -magnitude : magnitude;
}

std::string format_fixed(double value, int decimals) {
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : "inf";
  const double magnitude = scaled_magnitude(value, decimals);
  std::string digits =
      std::to_string(static_cast<std::uint64_t>(magnitude));
  if (decimals > 0) {
    if (digits.size() <= static_cast<std::size_t>(decimals)) {
      digits.insert(0, static_cast<std::size_t>(decimals) + 1 - digits.size(),
                    '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(decimals), 1, '.');
  }
  if (std::signbit(value) && magnitude > 0) digits.insert(0, 1, '-');
  return digits;
}

}  // namespace advforge
