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

#include <array>
#include <cstddef>

#include "tcjoin/half.hpp"
#include "tcjoin/rounding.hpp"

namespace tcjoin {

inline constexpr int kFragRows = 16;  // points per P fragment
inline constexpr int kFragCols = 8;   // query points per Q fragment
inline constexpr int kFragK = 16;     // dimensions per MMA step

/// 16 dimensions of 16 points; at(r, k) is dimension k of point r.
struct FragmentP {
  std::array<Half, kFragRows * kFragK> v{};
  Half& at(int r, int k) { return v[r * kFragK + k]; }
  Half at(int r, int k) const { return v[r * kFragK + k]; }
};

/// 16 dimensions of 8 query points in the transposed role; at(k, c) is
/// dimension k of query point c.
struct FragmentQ {
  std::array<Half, kFragK * kFragCols> v{};
  Half& at(int k, int c) { return v[k * kFragCols + c]; }
  Half at(int k, int c) const { return v[k * kFragCols + c]; }
};

struct FragmentAcc {
  std::array<float, kFragRows * kFragCols> v{};
  float& at(int r, int c) { return v[r * kFragCols + c]; }
  float at(int r, int c) const { return v[r * kFragCols + c]; }
};

/// D = P x Q + C for one 16x8x16 step.
///
/// Each output starts from C and adds the 16 exact products p(r,k)*q(k,c) for
/// k = 0..15 in ascending order, every addition in FP32 rounded toward zero.
/// Throws OverflowError naming the first (row, col) that becomes non-finite.
FragmentAcc mma(const FragmentP& p, const FragmentQ& q, const FragmentAcc& c);

/// acc[i * ld + j] accumulates sum_k p_panel[k * rows + i] * q_panel[k * cols + j]
/// over k = 0..depth-1 with exactly the per-element contract of mma().
/// Panels hold FP16 values already widened to FP32. Overflow is not checked
/// here; non-finite accumulators are sticky and the caller inspects them.
void accumulate_panel(const float* p_panel, const float* q_panel, int rows,
                      int cols, int depth, float* acc, std::size_t ld);

/// Squared distance -2a + s_i + s_j, evaluated as ((-2a) + s_i) + s_j in
/// FP32 round-to-nearest. May be slightly negative when points nearly
/// coincide; see squared_distance().
inline float combine_distance(float a, float s_i, float s_j) {
  const float m = -2.0f * a;
  const float t = m + s_i;
  return t + s_j;
}

inline float squared_distance(float a, float s_i, float s_j) {
  const float v = combine_distance(a, s_i, s_j);
  return v > 0.0f ? v : 0.0f;
}

}  // namespace tcjoin
