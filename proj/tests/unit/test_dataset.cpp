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
#include <cmath>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "tcjoin/dataset.hpp"
#include "tcjoin/errors.hpp"
#include "tcjoin/rounding.hpp"

namespace tcjoin {
namespace {

using testing::append_record;
using testing::append_u32;
using testing::TempDir;
using testing::write_bytes;

TEST(LoadFvecs, DecodesRecords) {
  TempDir dir;
  std::vector<unsigned char> buf;
  append_record(buf, {1.0f, 2.0f});
  append_record(buf, {3.0f, 4.0f});
  write_bytes(dir.file("a.fvecs"), buf);
  const Dataset ds = load_fvecs(dir.file("a.fvecs"));
  EXPECT_EQ(ds.n(), 2u);
  EXPECT_EQ(ds.d(), 2u);
  EXPECT_EQ(ds.values(), (std::vector<float>{1, 2, 3, 4}));
}

TEST(LoadFvecs, RejectsEmptyFile) {
  TempDir dir;
  write_bytes(dir.file("e.fvecs"), {});
  EXPECT_THROW(load_fvecs(dir.file("e.fvecs")), FormatError);
}

TEST(LoadFvecs, RejectsInconsistentDimension) {
  TempDir dir;
  std::vector<unsigned char> buf;
  append_record(buf, {1.0f, 2.0f});
  append_record(buf, {1.0f, 2.0f, 3.0f});
  write_bytes(dir.file("b.fvecs"), buf);
  try {
    load_fvecs(dir.file("b.fvecs"));
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("byte offset 12"), std::string::npos) << e.what();
  }
}

TEST(LoadFvecs, RejectsTruncatedAndInvalidRecords) {
  TempDir dir;
  std::vector<unsigned char> buf;
  append_record(buf, {1.0f, 2.0f});
  buf.resize(buf.size() - 2);
  write_bytes(dir.file("t.fvecs"), buf);
  EXPECT_THROW(load_fvecs(dir.file("t.fvecs")), FormatError);

  buf.clear();
  append_u32(buf, 0);
  write_bytes(dir.file("z.fvecs"), buf);
  EXPECT_THROW(load_fvecs(dir.file("z.fvecs")), FormatError);

  buf.clear();
  append_record(buf, {1.0f, NAN});
  write_bytes(dir.file("n.fvecs"), buf);
  EXPECT_THROW(load_fvecs(dir.file("n.fvecs")), FormatError);

  EXPECT_THROW(load_fvecs(dir.file("missing.fvecs")), FormatError);
}

TEST(LoadFvecs, RoundTripsThroughSave) {
  TempDir dir;
  const Dataset ds = generate_synthetic(17, 5, 3, -2.0f, 2.0f);
  save_fvecs(dir.file("r.fvecs"), ds);
  const Dataset back = load_fvecs(dir.file("r.fvecs"));
  EXPECT_EQ(back.n(), ds.n());
  EXPECT_EQ(back.d(), ds.d());
  EXPECT_EQ(back.values(), ds.values());
  EXPECT_EQ(back.fingerprint(), ds.fingerprint());
}

TEST(Dataset, ValidatesShapeAndValues) {
  EXPECT_THROW(Dataset(0, 2, {}), ArgumentError);
  EXPECT_THROW(Dataset(1, 0, {}), ArgumentError);
  EXPECT_THROW(Dataset(2, 2, {1, 2, 3}), ArgumentError);
  EXPECT_THROW(Dataset(1, 2, {1, INFINITY}), ArgumentError);
}

TEST(GenerateSynthetic, IsDeterministic) {
  const Dataset a = generate_synthetic(4, 8, 7);
  const Dataset b = generate_synthetic(4, 8, 7);
  EXPECT_EQ(a.values(), b.values());
  EXPECT_NE(a.values(), generate_synthetic(4, 8, 8).values());
}

TEST(GenerateSynthetic, StaysInRangeWithExpectedMean) {
  const Dataset one = generate_synthetic(1, 1, 0);
  EXPECT_GE(one.values()[0], 0.0f);
  EXPECT_LT(one.values()[0], 1.0f);

  const Dataset ds = generate_synthetic(1000, 64, 5, -3.0f, 5.0f);
  double sum = 0;
  for (float v : ds.values()) {
    ASSERT_GE(v, -3.0f);
    ASSERT_LT(v, 5.0f);
    sum += v;
  }
  EXPECT_NEAR(sum / static_cast<double>(ds.values().size()), 1.0, 0.02 * 8);
  EXPECT_THROW(generate_synthetic(1, 1, 0, 1.0f, 1.0f), ArgumentError);
}

TEST(ToHalf, PadsToBlockAndSlice) {
  const Dataset ds = generate_synthetic(3, 5, 1);
  const HalfDataset hd = to_half(ds);
  EXPECT_EQ(hd.n_logical(), 3u);
  EXPECT_EQ(hd.d_logical(), 5u);
  EXPECT_EQ(hd.n_padded(), 128u);
  EXPECT_EQ(hd.d_padded(), 16u);
  ASSERT_EQ(hd.values().size(), 128u * 16u);
  for (std::size_t i = 0; i < hd.n_padded(); ++i) {
    for (std::size_t k = 0; k < hd.d_padded(); ++k) {
      if (i < 3 && k < 5) continue;
      ASSERT_EQ(hd.row(i)[k].bits, 0u);
    }
  }
  EXPECT_EQ(to_half(generate_synthetic(129, 17, 1)).n_padded(), 256u);
  EXPECT_EQ(to_half(generate_synthetic(129, 17, 1)).d_padded(), 32u);
}

TEST(ToHalf, ConvertsWithRoundToNearest) {
  const HalfDataset hd = to_half(Dataset(1, 1, {0.1f}));
  EXPECT_EQ(hd.row(0)[0].to_float(), 0.0999755859375f);
}

TEST(ToHalf, RejectsOutOfRangeCoordinate) {
  try {
    to_half(Dataset(2, 3, {0, 0, 0, 0, 70000.0f, 0}));
    FAIL() << "expected RangeError";
  } catch (const RangeError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("70000"), std::string::npos) << msg;
  }
  EXPECT_NO_THROW(to_half(Dataset(1, 1, {-65504.0f})));
}

TEST(SquaredNorms, Examples) {
  const HalfDataset hd = to_half(Dataset(3, 16, [] {
    std::vector<float> v(48, 0.0f);
    v[16] = 1.0f;                                    // e1
    std::fill(v.begin() + 32, v.end(), 0.1f);        // 16 x 0.1
    return v;
  }()));
  const std::vector<float> norms = compute_squared_norms(hd);
  EXPECT_EQ(norms[0], 0.0f);
  EXPECT_EQ(norms[1], 1.0f);
  EXPECT_EQ(std::bit_cast<std::uint32_t>(norms[2]), 0x3e23c290u);
  EXPECT_EQ(norms, hd.norms());
  for (std::size_t i = 3; i < hd.n_padded(); ++i) EXPECT_EQ(norms[i], 0.0f);
}

TEST(SquaredNorms, AccumulateSequentiallyTowardZero) {
  const HalfDataset hd = to_half(generate_synthetic(50, 40, 11, -3.0f, 3.0f));
  for (std::size_t i = 0; i < hd.n_logical(); ++i) {
    float acc = 0.0f;
    for (Half h : hd.row(i)) acc = add_rz(acc, h.to_float() * h.to_float());
    ASSERT_EQ(std::bit_cast<std::uint32_t>(hd.norms()[i]), std::bit_cast<std::uint32_t>(acc));
  }
}

TEST(Dataset, FingerprintTracksContentAndShape) {
  EXPECT_NE(Dataset(1, 2, {1, 2}).fingerprint(), Dataset(2, 1, {1, 2}).fingerprint());
  EXPECT_NE(Dataset(1, 2, {1, 2}).fingerprint(), Dataset(1, 2, {1, 3}).fingerprint());
  EXPECT_EQ(Dataset(1, 2, {1, 2}).fingerprint(), Dataset(1, 2, {1, 2}).fingerprint());
}

}  // namespace
}  // namespace tcjoin
