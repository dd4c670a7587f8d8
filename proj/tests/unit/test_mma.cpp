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
#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "tcjoin/errors.hpp"
#include "tcjoin/mma.hpp"
#include "tcjoin/rounding.hpp"

namespace tcjoin {
namespace {

FragmentP random_p(std::mt19937& rng, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  FragmentP p;
  for (auto& h : p.v) h = Half::from_float(static_cast<float>(dist(rng)));
  return p;
}

FragmentQ random_q(std::mt19937& rng, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  FragmentQ q;
  for (auto& h : q.v) h = Half::from_float(static_cast<float>(dist(rng)));
  return q;
}

TEST(Mma, ZeroInputsGiveZero) {
  const FragmentAcc d = mma(FragmentP{}, FragmentQ{}, FragmentAcc{});
  for (float v : d.v) EXPECT_EQ(v, 0.0f);
}

TEST(Mma, IdentityCopiesQ) {
  FragmentP p;
  for (int r = 0; r < kFragRows; ++r) p.at(r, r) = Half::from_float(1.0f);
  std::mt19937 rng(1);
  std::uniform_real_distribution<float> u(-10.0f, 10.0f);
  FragmentQ q;
  for (auto& h : q.v) h = Half::from_float(u(rng));
  const FragmentAcc d = mma(p, q, FragmentAcc{});
  for (int r = 0; r < kFragRows; ++r) {
    for (int c = 0; c < kFragCols; ++c) EXPECT_EQ(d.at(r, c), q.at(r, c).to_float());
  }
}

TEST(Mma, IntegerProductIsExact) {
  std::mt19937 rng(2);
  for (int t = 0; t < 50; ++t) {
    const FragmentP p = random_p(rng, -8, 8);
    const FragmentQ q = random_q(rng, -8, 8);
    const FragmentAcc d = mma(p, q, FragmentAcc{});
    for (int r = 0; r < kFragRows; ++r) {
      for (int c = 0; c < kFragCols; ++c) {
        long want = 0;
        for (int k = 0; k < kFragK; ++k) {
          want += static_cast<long>(p.at(r, k).to_float()) *
                  static_cast<long>(q.at(k, c).to_float());
        }
        ASSERT_EQ(d.at(r, c), static_cast<float>(want));
      }
    }
  }
}

TEST(Mma, AccumulatesInAscendingKTowardZero) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<float> u(-1.0f, 1.0f);
  FragmentP p;
  FragmentQ q;
  FragmentAcc c;
  for (auto& h : p.v) h = Half::from_float(u(rng));
  for (auto& h : q.v) h = Half::from_float(u(rng));
  for (auto& v : c.v) v = u(rng);
  const FragmentAcc d = mma(p, q, c);
  for (int r = 0; r < kFragRows; ++r) {
    for (int col = 0; col < kFragCols; ++col) {
      float acc = c.at(r, col);
      for (int k = 0; k < kFragK; ++k) {
        acc = add_rz(acc, p.at(r, k).to_float() * q.at(k, col).to_float());
      }
      ASSERT_EQ(std::bit_cast<std::uint32_t>(d.at(r, col)), std::bit_cast<std::uint32_t>(acc));
    }
  }
}

TEST(Mma, OverflowIsReported) {
  // FP16 products cannot reach FP32 overflow from a finite accumulator
  FragmentP p;
  FragmentQ q;
  for (auto& h : p.v) h = Half::from_float(65504.0f);
  for (auto& h : q.v) h = Half::from_float(65504.0f);
  FragmentAcc c;
  c.v.fill(std::numeric_limits<float>::max());
  EXPECT_NO_THROW(mma(p, q, c));
  c.at(3, 5) = INFINITY;
  try {
    mma(p, q, c);
    FAIL() << "expected OverflowError";
  } catch (const OverflowError& e) {
    EXPECT_EQ(e.row(), 3);
    EXPECT_EQ(e.col(), 5);
  }
}

TEST(AccumulatePanel, MatchesChainedMma) {
  std::mt19937 rng(4);
  std::uniform_real_distribution<float> u(-2.0f, 2.0f);
  constexpr int rows = 32;
  constexpr int cols = 16;
  constexpr int depth = 48;
  std::vector<Half> a(rows * depth);
  std::vector<Half> b(cols * depth);
  for (auto& h : a) h = Half::from_float(u(rng));
  for (auto& h : b) h = Half::from_float(u(rng));

  // k-major widened panels
  std::vector<float> pp(depth * rows);
  std::vector<float> qp(depth * cols);
  for (int k = 0; k < depth; ++k) {
    for (int r = 0; r < rows; ++r) pp[k * rows + r] = a[r * depth + k].to_float();
    for (int c = 0; c < cols; ++c) qp[k * cols + c] = b[c * depth + k].to_float();
  }
  std::vector<float> acc(rows * cols, 0.0f);
  accumulate_panel(pp.data(), qp.data(), rows, cols, depth, acc.data(), cols);

  for (int rb = 0; rb < rows; rb += kFragRows) {
    for (int cb = 0; cb < cols; cb += kFragCols) {
      FragmentAcc f;
      for (int kb = 0; kb < depth; kb += kFragK) {
        FragmentP p;
        FragmentQ q;
        for (int r = 0; r < kFragRows; ++r)
          for (int k = 0; k < kFragK; ++k) p.at(r, k) = a[(rb + r) * depth + kb + k];
        for (int k = 0; k < kFragK; ++k)
          for (int c = 0; c < kFragCols; ++c) q.at(k, c) = b[(cb + c) * depth + kb + k];
        f = mma(p, q, f);
      }
      for (int r = 0; r < kFragRows; ++r)
        for (int c = 0; c < kFragCols; ++c)
          ASSERT_EQ(std::bit_cast<std::uint32_t>(acc[(rb + r) * cols + cb + c]),
                    std::bit_cast<std::uint32_t>(f.at(r, c)));
    }
  }
}

TEST(CombineDistance, Examples) {
  EXPECT_EQ(combine_distance(0.0f, 1.0f, 1.0f), 2.0f);
  EXPECT_EQ(combine_distance(3.0f, 5.0f, 4.0f), 3.0f);
  std::mt19937 rng(5);
  std::uniform_real_distribution<float> u(0.0f, 1000.0f);
  for (int t = 0; t < 100000; ++t) {
    const float s = u(rng);
    ASSERT_EQ(combine_distance(s, s, s), 0.0f);
  }
  EXPECT_EQ(squared_distance(1.0f, 0.5f, 0.5f), 0.0f);  // clamped
}

}  // namespace
}  // namespace tcjoin
