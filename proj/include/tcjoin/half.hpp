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

/// IEEE 754 binary16 value stored as raw bits.
///
/// Conversion from FP32 rounds to nearest, ties to even; values whose
/// magnitude rounds past 65504 become infinity. Widening to FP32 is exact.
struct Half {
  std::uint16_t bits = 0;

  static constexpr Half from_bits(std::uint16_t b) { return Half{b}; }
  static Half from_float(float f);

  float to_float() const;

  bool is_finite() const { return (bits & 0x7c00u) != 0x7c00u; }

  friend constexpr bool operator==(Half, Half) = default;
};

inline constexpr float kHalfMax = 65504.0f;

std::uint16_t float_to_half_bits(float f);

inline float half_bits_to_float(std::uint16_t h) {
  const std::uint32_t sign = static_cast<std::uint32_t>(h & 0x8000u) << 16;
  const std::uint32_t exp = (h >> 10) & 0x1fu;
  const std::uint32_t mant = h & 0x3ffu;
  if (exp == 0) {
    // zero or subnormal: mant * 2^-24 is exact in FP32
    const float mag = static_cast<float>(mant) * 0x1p-24f;
    return std::bit_cast<float>(std::bit_cast<std::uint32_t>(mag) | sign);
  }
  if (exp == 0x1f) {
    return std::bit_cast<float>(sign | 0x7f800000u | (mant << 13));
  }
  return std::bit_cast<float>(sign | ((exp + 112u) << 23) | (mant << 13));
}

inline Half Half::from_float(float f) { return Half{float_to_half_bits(f)}; }
inline float Half::to_float() const { return half_bits_to_float(bits); }

}  // namespace tcjoin
