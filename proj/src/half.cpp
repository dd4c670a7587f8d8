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
#include "tcjoin/half.hpp"

namespace tcjoin {

std::uint16_t float_to_half_bits(float f) {
  const std::uint32_t x = std::bit_cast<std::uint32_t>(f);
  const std::uint16_t sign = static_cast<std::uint16_t>((x >> 16) & 0x8000u);
  const std::uint32_t ax = x & 0x7fffffffu;

  if (ax >= 0x7f800000u) {
    // inf stays inf; NaN keeps a quiet payload bit
    return sign | 0x7c00u | (ax > 0x7f800000u ? 0x0200u : 0u);
  }
  // 65520 is halfway between 65504 (odd significand) and 2^16, so ties-to-even
  // sends it to infinity.
  if (ax >= 0x477ff000u) return sign | 0x7c00u;

  if (ax < 0x38800000u) {
    // below the smallest normal half (2^-14)
    if (ax < 0x33000000u) return sign;  // under 2^-25, including the tie
    const std::uint32_t e = ax >> 23;
    const std::uint32_t mant = (ax & 0x7fffffu) | 0x800000u;
    const std::uint32_t shift = 126u - e;  // 14..24
    std::uint32_t m = mant >> shift;
    const std::uint32_t rem = mant & ((1u << shift) - 1u);
    const std::uint32_t halfway = 1u << (shift - 1u);
    if (rem > halfway || (rem == halfway && (m & 1u))) ++m;
    return static_cast<std::uint16_t>(sign | m);
  }

  std::uint32_t h = (ax >> 13) - (112u << 10);
  const std::uint32_t rem = ax & 0x1fffu;
  if (rem > 0x1000u || (rem == 0x1000u && (h & 1u))) ++h;
  return static_cast<std::uint16_t>(sign | h);
}

}  // namespace tcjoin
