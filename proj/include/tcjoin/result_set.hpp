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
#include <vector>

namespace tcjoin {

/// One ordered pair within the search radius. Indices are 0-based. dist_sq
/// holds the engine's value widened to double: FP32 results are exact, the
/// FP64 oracle keeps full precision.
struct Pair {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  double dist_sq = 0.0;

  friend bool operator==(const Pair&, const Pair&) = default;
};

/// Self-join output: every pair with distance <= epsilon, including the n
/// self-pairs, sorted by (i, j).
struct ResultSet {
  std::vector<Pair> pairs;
  std::size_t n = 0;
  double epsilon = 0.0;

  void sort();
  bool same_pairs(const ResultSet& other) const;  // indices only
};

/// Little-endian: u64 count, then count x (u32 i, u32 j, f32 dist_sq).
void write_pairs(const std::filesystem::path& path, const ResultSet& rs);
std::vector<Pair> read_pairs(const std::filesystem::path& path);

}  // namespace tcjoin
