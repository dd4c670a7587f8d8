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
#include "tcjoin/oracle.hpp"

#include <cmath>
#include <vector>

#include "tcjoin/errors.hpp"
#include "tcjoin/mma.hpp"

namespace tcjoin::oracle {

ResultSet brute_force_fp64(const Dataset& ds, double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw ArgumentError("epsilon must be finite and >= 0");
  }
  ResultSet rs;
  rs.n = ds.n();
  rs.epsilon = epsilon;
  const std::size_t d = ds.d();
  for (std::size_t i = 0; i < ds.n(); ++i) {
    const float* pi = ds.row(i).data();
    for (std::size_t j = 0; j < ds.n(); ++j) {
      const float* pj = ds.row(j).data();
      double sum = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double diff = static_cast<double>(pi[k]) - static_cast<double>(pj[k]);
        sum += diff * diff;
      }
      if (std::sqrt(sum) <= epsilon) {
        rs.pairs.push_back({static_cast<std::uint32_t>(i),
                            static_cast<std::uint32_t>(j), sum});
      }
    }
  }
  return rs;  // generated in (i, j) order
}

ResultSet reference_mixed_scalar(const HalfDataset& hd, float epsilon) {
  if (!std::isfinite(epsilon) || epsilon < 0.0f) {
    throw ArgumentError("epsilon must be finite and >= 0");
  }
  const float eps_sq = epsilon * epsilon;
  const std::size_t n = hd.n_logical();
  const std::size_t d = hd.d_padded();

  std::vector<float> wide(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = hd.row(i);
    for (std::size_t k = 0; k < d; ++k) wide[i * d + k] = row[k].to_float();
  }

  ResultSet rs;
  rs.n = n;
  rs.epsilon = epsilon;
  const auto& norms = hd.norms();
  for (std::size_t i = 0; i < n; ++i) {
    const float* pi = wide.data() + i * d;
    for (std::size_t j = 0; j < n; ++j) {
      const float* pj = wide.data() + j * d;
      float acc = 0.0f;
      for (std::size_t k = 0; k < d; ++k) acc = add_rz(acc, pi[k] * pj[k]);
      if (!std::isfinite(acc)) {
        throw OverflowError("FP32 accumulator overflow in scalar reference",
                            static_cast<int>(i), static_cast<int>(j));
      }
      const float dsq = squared_distance(acc, norms[i], norms[j]);
      if (dsq <= eps_sq) {
        rs.pairs.push_back({static_cast<std::uint32_t>(i),
                            static_cast<std::uint32_t>(j), dsq});
      }
    }
  }
  return rs;
}

}  // namespace tcjoin::oracle
