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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "tcjoin/half.hpp"

namespace tcjoin {

/// Row-major n x d matrix of FP32 point coordinates. Always n >= 1, d >= 1
/// and every value finite.
class Dataset {
 public:
  Dataset(std::size_t n, std::size_t d, std::vector<float> values);

  std::size_t n() const { return n_; }
  std::size_t d() const { return d_; }
  const std::vector<float>& values() const { return values_; }

  std::span<const float> row(std::size_t i) const {
    return {values_.data() + i * d_, d_};
  }

  // FNV-1a over (n, d, coordinate bits); identifies a dataset across runs.
  std::uint64_t fingerprint() const;

 private:
  std::size_t n_;
  std::size_t d_;
  std::vector<float> values_;
};

/// FP16 copy of a dataset, zero padded to whole tiles, with the FP32 squared
/// norm of every (padded) point.
///
/// Padding rows are all-zero points with norm 0. Padding columns are zero for
/// every point, so they never change a norm or a dot product.
class HalfDataset {
 public:
  std::size_t n_logical() const { return n_logical_; }
  std::size_t d_logical() const { return d_logical_; }
  std::size_t n_padded() const { return n_padded_; }
  std::size_t d_padded() const { return d_padded_; }

  const std::vector<Half>& values() const { return values_; }
  const std::vector<float>& norms() const { return norms_; }

  std::span<const Half> row(std::size_t i) const {
    return {values_.data() + i * d_padded_, d_padded_};
  }

 private:
  friend HalfDataset to_half(const Dataset&, std::size_t, std::size_t);

  std::size_t n_logical_ = 0;
  std::size_t d_logical_ = 0;
  std::size_t n_padded_ = 0;
  std::size_t d_padded_ = 0;
  std::vector<Half> values_;
  std::vector<float> norms_;
};

/// Reads the fvecs format: per record a little-endian int32 dimension
/// followed by that many little-endian FP32 values.
Dataset load_fvecs(const std::filesystem::path& path);
void save_fvecs(const std::filesystem::path& path, const Dataset& ds);

/// i.i.d. uniform coordinates on [lo, hi). Bit-identical for equal arguments
/// on every platform.
Dataset generate_synthetic(std::size_t n, std::size_t d, std::uint64_t seed,
                           float lo = 0.0f, float hi = 1.0f);

HalfDataset to_half(const Dataset& ds, std::size_t block_side = 128,
                    std::size_t kslice = 16);

/// Sequential ascending-k sum of the exact FP32 squares of each point's FP16
/// coordinates, every addition rounded toward zero.
std::vector<float> compute_squared_norms(const HalfDataset& hd);

inline std::size_t round_up(std::size_t x, std::size_t multiple) {
  return (x + multiple - 1) / multiple * multiple;
}

}  // namespace tcjoin
