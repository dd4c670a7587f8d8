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
#include <vector>

#include "tcjoin/dataset.hpp"
#include "tcjoin/result_set.hpp"

namespace tcjoin {

/// Tiling hierarchy of the self-join.
///
/// A block tile covers block_side x block_side distances. Its points are
/// staged block_kslice dimensions at a time (the shared-memory slab), and
/// each staged slab is consumed by warp_side x warp_side warp tiles in
/// warp_kslice-dimension MMA steps. Block tiles are dispatched in
/// dispatch_square x dispatch_square groups; a square of 1 is plain
/// row-major order. prefetch_depth 2 stages the next slab before the current
/// one is consumed, 1 stages on demand.
struct TileConfig {
  std::size_t block_side = 128;
  std::size_t block_kslice = 64;
  std::size_t warp_side = 64;
  std::size_t warp_kslice = 16;
  std::size_t dispatch_square = 8;
  int prefetch_depth = 2;
  unsigned workers = 1;

  /// Throws ConfigError on the first violated constraint.
  void validate() const;
};

struct TileCoord {
  std::size_t row_block = 0;
  std::size_t col_block = 0;

  friend bool operator==(const TileCoord&, const TileCoord&) = default;
};

/// All grid_rows x grid_cols tiles exactly once, square x square groups in
/// row-major group order, row-major inside each group. Edge groups are
/// partial.
std::vector<TileCoord> rasterize_tiles(std::size_t grid_rows,
                                       std::size_t grid_cols,
                                       std::size_t square);

struct TileCounters {
  std::uint64_t block_iterations = 0;
  std::uint64_t staged_elements = 0;      // FP16 values copied into slabs
  std::uint64_t accumulator_updates = 0;  // multiply-adds issued

  TileCounters& operator+=(const TileCounters& o) {
    block_iterations += o.block_iterations;
    staged_elements += o.staged_elements;
    accumulator_updates += o.accumulator_updates;
    return *this;
  }
};

struct JoinStats {
  TileCounters counters;
  std::size_t tiles = 0;
  double kernel_seconds = 0.0;
  double merge_seconds = 0.0;
};

/// Pairs of one block tile with dist_sq <= eps_sq whose indices are both
/// real points. Not sorted.
std::vector<Pair> compute_block_tile(const HalfDataset& hd, TileCoord coord,
                                     float eps_sq, const TileConfig& cfg,
                                     TileCounters* counters = nullptr);

/// The full epsilon self-join. The comparison is dist_sq <= eps*eps with the
/// square taken once in FP32. Output is sorted and bit-identical for any
/// legal configuration and worker count.
ResultSet self_join(const HalfDataset& hd, float epsilon, const TileConfig& cfg,
                    JoinStats* stats = nullptr);

}  // namespace tcjoin
