// Copyright 2026 the tcjoin authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <bit>
#include <cstdint>

namespace tcjoin {

/// FP32 addition rounded toward zero, computed without touching the FP
/// environment.
///
/// TwoSum recovers the exact rounding error of the nearest-rounded sum. When
/// that error points back toward zero the nearest result overshot the exact
/// value in magnitude and the RZ result is one ulp closer to zero, which for
/// any finite nonzero float is the bit pattern minus one. An infinite
/// nearest-rounded sum is left untouched so overflow stays observable.
///
/// Requires strict IEEE evaluation (no FMA contraction, no fast-math).
inline float add_rz(float a, float b) {
  const float s = a + b;
  const float bv = s - a;
  const float av = s - bv;
  const float err = (a - av) + (b - bv);
  const std::uint32_t sb = std::bit_cast<std::uint32_t>(s);
  const std::uint32_t eb = std::bit_cast<std::uint32_t>(err);
  const bool overshoot = (err != 0.0f) & (((sb ^ eb) >> 31) != 0u) &
                         ((sb & 0x7f800000u) != 0x7f800000u);
  return std::bit_cast<float>(sb - static_cast<std::uint32_t>(overshoot));
}

}  // namespace tcjoin
