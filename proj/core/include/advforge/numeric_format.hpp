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

#ifndef ADVFORGE_NUMERIC_FORMAT_HPP_
#define ADVFORGE_NUMERIC_FORMAT_HPP_

#include <string>

namespace advforge {

// Rounds half away from zero at `decimals` places, treating values within
// 1e-9 (relative) of a tie as the tie so 0.285 renders "0.29" despite its
// binary representation sitting just below.
double round_half_up(double value, int decimals);

// Fixed-point rendering of round_half_up(value, decimals) with exactly
// `decimals` fractional digits.
std::string format_fixed(double value, int decimals);

}  // namespace advforge

#endif  // ADVFORGE_NUMERIC_FORMAT_HPP_
