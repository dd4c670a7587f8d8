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
#include "tcjoin/mma.hpp"

#include <cmath>
#include <sstream>

#include "tcjoin/errors.hpp"

namespace tcjoin {

FragmentAcc mma(const FragmentP& p, const FragmentQ& q, const FragmentAcc& c) {
  FragmentAcc d = c;
  for (int r = 0; r < kFragRows; ++r) {
    for (int col = 0; col < kFragCols; ++col) {
      float acc = c.at(r, col);
      for (int k = 0; k < kFragK; ++k) {
        acc = add_rz(acc, p.at(r, k).to_float() * q.at(k, col).to_float());
      }
      if (!std::isfinite(acc)) {
        std::ostringstream msg;
        msg << "FP32 accumulator overflow at (" << r << ", " << col << ")";
        throw OverflowError(msg.str(), r, col);
      }
      d.at(r, col) = acc;
    }
  }
  return d;
}

void accumulate_panel(const float* p_panel, const float* q_panel, int rows,
                      int cols, int depth, float* acc, std::size_t ld) {
  for (int i = 0; i < rows; ++i) {
    float* __restrict arow = acc + static_cast<std::size_t>(i) * ld;
    for (int k = 0; k < depth; ++k) {
      const float pv = p_panel[static_cast<std::size_t>(k) * rows + i];
      const float* __restrict qrow = q_panel + static_cast<std::size_t>(k) * cols;
      for (int j = 0; j < cols; ++j) {
        arow[j] = add_rz(arow[j], pv * qrow[j]);
      }
    }
  }
}

}  // namespace tcjoin
