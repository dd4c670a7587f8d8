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
#include <algorithm>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "tcjoin/analysis.hpp"
#include "tcjoin/errors.hpp"
#include "tcjoin/oracle.hpp"
#include "tcjoin/tiling.hpp"

namespace tcjoin {
namespace {

void expect_bit_identical(const ResultSet& a, const ResultSet& b) {
  ASSERT_EQ(a.pairs.size(), b.pairs.size());
  for (std::size_t k = 0; k < a.pairs.size(); ++k) {
    ASSERT_EQ(a.pairs[k].i, b.pairs[k].i) << k;
    ASSERT_EQ(a.pairs[k].j, b.pairs[k].j) << k;
    ASSERT_EQ(std::bit_cast<std::uint64_t>(a.pairs[k].dist_sq),
              std::bit_cast<std::uint64_t>(b.pairs[k].dist_sq))
        << a.pairs[k].i << "," << a.pairs[k].j;
  }
}

TEST(RasterizeTiles, SingleGroup) {
  EXPECT_EQ(rasterize_tiles(2, 2, 8),
            (std::vector<TileCoord>{{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
}

TEST(RasterizeTiles, FirstSquareComesFirst) {
  const auto order = rasterize_tiles(16, 16, 8);
  ASSERT_EQ(order.size(), 256u);
  for (std::size_t k = 0; k < 64; ++k) {
    EXPECT_LT(order[k].row_block, 8u);
    EXPECT_LT(order[k].col_block, 8u);
  }
}

TEST(RasterizeTiles, RaggedGridGroups) {
  const auto order = rasterize_tiles(9, 9, 8);
  ASSERT_EQ(order.size(), 81u);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> group_sizes;
  std::vector<std::pair<std::size_t, std::size_t>> group_order;
  for (const TileCoord& c : order) {
    EXPECT_TRUE(seen.insert({c.row_block, c.col_block}).second);
    const auto g = std::make_pair(c.row_block / 8, c.col_block / 8);
    if (group_sizes[g]++ == 0) group_order.push_back(g);
  }
  std::vector<std::size_t> sizes;
  for (const auto& g : group_order) sizes.push_back(group_sizes[g]);
  EXPECT_EQ(sizes, (std::vector<std::size_t>{64, 8, 8, 1}));
  // each group is emitted contiguously
  std::size_t switches = 0;
  for (std::size_t k = 1; k < order.size(); ++k) {
    switches += (order[k].row_block / 8 != order[k - 1].row_block / 8) ||
                (order[k].col_block / 8 != order[k - 1].col_block / 8);
  }
  EXPECT_EQ(switches, 3u);
}

TEST(RasterizeTiles, SquareOneIsRowMajor) {
  const auto order = rasterize_tiles(3, 4, 1);
  for (std::size_t k = 0; k < order.size(); ++k) {
    EXPECT_EQ(order[k], (TileCoord{k / 4, k % 4}));
  }
}

TEST(TileConfig, Validation) {
  EXPECT_NO_THROW(TileConfig{}.validate());
  TileConfig c;
  c.block_side = 96;
  EXPECT_THROW(c.validate(), ConfigError);
  c = TileConfig{};
  c.warp_side = 24;
  c.block_side = 48;
  EXPECT_THROW(c.validate(), ConfigError);
  c = TileConfig{};
  c.prefetch_depth = 3;
  EXPECT_THROW(c.validate(), ConfigError);
  c = TileConfig{};
  c.workers = 0;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(ComputeBlockTile, PaddingOnlyTileIsEmpty) {
  // padded to 256 rows, so block row 1 holds only padding
  const HalfDataset hd = to_half(generate_synthetic(100, 16, 1), 256);
  ASSERT_EQ(hd.n_padded(), 256u);
  EXPECT_TRUE(compute_block_tile(hd, {1, 1}, 1e9f, TileConfig{}).empty());
  EXPECT_TRUE(compute_block_tile(hd, {0, 1}, 1e9f, TileConfig{}).empty());
  EXPECT_EQ(compute_block_tile(hd, {0, 0}, 1e9f, TileConfig{}).size(), 100u * 100u);

  const HalfDataset partial = to_half(generate_synthetic(65, 16, 1), 64);
  TileConfig cfg;
  cfg.block_side = 64;
  EXPECT_EQ(compute_block_tile(partial, {1, 1}, 1e9f, cfg).size(), 1u);
}

TEST(ComputeBlockTile, DiagonalAtZeroGivesSelfPairs) {
  const HalfDataset hd = to_half(generate_synthetic(200, 32, 2));
  const auto pairs = compute_block_tile(hd, {0, 0}, 0.0f, TileConfig{});
  ASSERT_EQ(pairs.size(), 128u);
  for (const Pair& p : pairs) {
    EXPECT_EQ(p.i, p.j);
    EXPECT_EQ(p.dist_sq, 0.0);
  }
  EXPECT_TRUE(compute_block_tile(hd, {0, 1}, 0.0f, TileConfig{}).empty());
}

TEST(ComputeBlockTile, MatchesScalarOracleOnRandomTile) {
  const HalfDataset hd = to_half(generate_synthetic(256, 64, 3));
  const float eps = 3.3f;
  ResultSet ref = oracle::reference_mixed_scalar(hd, eps);
  std::vector<Pair> want;
  for (const Pair& p : ref.pairs) {
    if (p.i >= 128 && p.j < 128) want.push_back(p);
  }
  ASSERT_GT(want.size(), 100u);
  ResultSet got;
  got.pairs = compute_block_tile(hd, {1, 0}, eps * eps, TileConfig{});
  got.sort();
  ResultSet w;
  w.pairs = want;
  expect_bit_identical(got, w);
}

TEST(ComputeBlockTile, RejectsIncompatibleDataset) {
  const HalfDataset hd = to_half(generate_synthetic(10, 16, 3), 64);
  EXPECT_THROW(compute_block_tile(hd, {0, 0}, 1.0f, TileConfig{}), ConfigError);
  EXPECT_THROW(compute_block_tile(to_half(generate_synthetic(10, 16, 3)), {1, 0}, 1.0f,
                                  TileConfig{}),
               ArgumentError);
}

TEST(SelfJoin, ThreeFourFiveIsInclusive) {
  const HalfDataset hd = to_half(Dataset(2, 2, {0, 0, 3, 4}));
  const ResultSet rs = self_join(hd, 5.0f, TileConfig{});
  ASSERT_EQ(rs.pairs.size(), 4u);
  EXPECT_EQ(rs.pairs[1], (Pair{0, 1, 25.0}));
  EXPECT_EQ(rs.pairs[2], (Pair{1, 0, 25.0}));
  EXPECT_EQ(self_join(hd, 4.99f, TileConfig{}).pairs.size(), 2u);
}

TEST(SelfJoin, ZeroEpsilonGivesSelfPairs) {
  const HalfDataset hd = to_half(generate_synthetic(300, 24, 4));
  const ResultSet rs = self_join(hd, 0.0f, TileConfig{});
  ASSERT_EQ(rs.pairs.size(), 300u);
  for (std::size_t k = 0; k < 300; ++k) EXPECT_EQ(rs.pairs[k], (Pair{uint32_t(k), uint32_t(k), 0.0}));
  EXPECT_THROW(self_join(hd, -1.0f, TileConfig{}), ArgumentError);
  EXPECT_THROW(self_join(hd, NAN, TileConfig{}), ArgumentError);
}

TEST(SelfJoin, MatchesScalarOracleAcrossConfigurations) {
  const HalfDataset hd = to_half(generate_synthetic(300, 40, 5));
  const ResultSet ref = oracle::reference_mixed_scalar(hd, 2.3f);
  ASSERT_GT(selectivity(ref), 3.0);
  std::vector<TileConfig> configs;
  for (unsigned w : {1u, 2u, 3u, 8u}) {
    for (std::size_t ws : {16u, 32u, 64u}) {
      for (std::size_t sq : {1u, 2u, 8u}) {
        for (int depth : {1, 2}) {
          TileConfig c;
          c.workers = w;
          c.warp_side = ws;
          c.dispatch_square = sq;
          c.prefetch_depth = depth;
          c.block_kslice = depth == 1 ? 16 : 64;
          configs.push_back(c);
        }
      }
    }
  }
  for (const TileConfig& c : configs) {
    const ResultSet rs = self_join(hd, 2.3f, c);
    expect_bit_identical(rs, ref);
  }
}

TEST(SelfJoin, BlockSideDoesNotChangeResults) {
  const Dataset ds = generate_synthetic(200, 48, 6);
  const ResultSet ref = oracle::reference_mixed_scalar(to_half(ds), 2.6f);
  for (std::size_t bs : {16u, 32u, 64u, 128u, 256u}) {
    TileConfig c;
    c.block_side = bs;
    c.warp_side = std::min<std::size_t>(bs, 64);
    c.workers = 3;
    expect_bit_identical(self_join(to_half(ds, bs), 2.6f, c), ref);
  }
}

TEST(SelfJoin, IsSymmetricWithZeroDiagonal) {
  const ResultSet rs = self_join(to_half(generate_synthetic(150, 20, 7)), 1.2f, TileConfig{});
  std::map<std::pair<uint32_t, uint32_t>, double> m;
  for (const Pair& p : rs.pairs) m[{p.i, p.j}] = p.dist_sq;
  for (const Pair& p : rs.pairs) {
    if (p.i == p.j) {
      EXPECT_EQ(p.dist_sq, 0.0);
    }
    auto it = m.find({p.j, p.i});
    ASSERT_NE(it, m.end());
  }
}

TEST(SelfJoin, CountersMatchReuseAccounting) {
  const HalfDataset hd = to_half(generate_synthetic(300, 100, 8));
  TileConfig cfg;
  cfg.workers = 2;
  JoinStats stats;
  self_join(hd, 1.0f, cfg, &stats);
  const std::size_t grid = hd.n_padded() / cfg.block_side;
  EXPECT_EQ(stats.tiles, grid * grid);
  const TileReuse reuse = tile_reuse(cfg);
  EXPECT_EQ(stats.counters.accumulator_updates,
            stats.tiles * cfg.block_side * cfg.block_side * hd.d_padded());
  EXPECT_EQ(2 * stats.counters.accumulator_updates / stats.counters.staged_elements,
            reuse.block_reuse);
  EXPECT_EQ(stats.counters.block_iterations,
            stats.tiles * ((hd.d_padded() + cfg.block_kslice - 1) / cfg.block_kslice));
}

}  // namespace
}  // namespace tcjoin
