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
#include "tcjoin/dataset.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <random>
#include <sstream>

#include "tcjoin/errors.hpp"
#include "tcjoin/rounding.hpp"

namespace tcjoin {

namespace {

std::uint32_t read_u32_le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void write_u32_le(std::ostream& os, std::uint32_t v) {
  const char b[4] = {static_cast<char>(v & 0xff),
                     static_cast<char>((v >> 8) & 0xff),
                     static_cast<char>((v >> 16) & 0xff),
                     static_cast<char>((v >> 24) & 0xff)};
  os.write(b, 4);
}

}  // namespace

Dataset::Dataset(std::size_t n, std::size_t d, std::vector<float> values)
    : n_(n), d_(d), values_(std::move(values)) {
  if (n_ == 0 || d_ == 0) {
    throw ArgumentError("dataset must have n >= 1 and d >= 1");
  }
  if (values_.size() != n_ * d_) {
    std::ostringstream msg;
    msg << "dataset value count " << values_.size() << " != n*d = " << n_ * d_;
    throw ArgumentError(msg.str());
  }
  for (std::size_t idx = 0; idx < values_.size(); ++idx) {
    if (!std::isfinite(values_[idx])) {
      std::ostringstream msg;
      msg << "non-finite coordinate at point " << idx / d_ << ", dim "
          << idx % d_;
      throw ArgumentError(msg.str());
    }
  }
}

std::uint64_t Dataset::fingerprint() const {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](std::uint64_t word, int bytes) {
    for (int b = 0; b < bytes; ++b) {
      h ^= (word >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(n_, 8);
  mix(d_, 8);
  for (float v : values_) mix(std::bit_cast<std::uint32_t>(v), 4);
  return h;
}

Dataset load_fvecs(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open fvecs file: " + path.string());
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                         std::istreambuf_iterator<char>());

  std::size_t d = 0;
  std::size_t n = 0;
  std::vector<float> values;
  std::size_t off = 0;
  while (off < bytes.size()) {
    if (bytes.size() - off < 4) {
      std::ostringstream msg;
      msg << path.string() << ": truncated record header at byte offset "
          << off;
      throw FormatError(msg.str());
    }
    const auto dim = static_cast<std::int32_t>(read_u32_le(&bytes[off]));
    if (dim <= 0) {
      std::ostringstream msg;
      msg << path.string() << ": invalid dimension " << dim
          << " at byte offset " << off;
      throw FormatError(msg.str());
    }
    if (n == 0) {
      d = static_cast<std::size_t>(dim);
    } else if (static_cast<std::size_t>(dim) != d) {
      std::ostringstream msg;
      msg << path.string() << ": inconsistent dimension " << dim
          << " (expected " << d << ") in record " << n << " at byte offset "
          << off;
      throw FormatError(msg.str());
    }
    const std::size_t payload = 4 * d;
    if (bytes.size() - off - 4 < payload) {
      std::ostringstream msg;
      msg << path.string() << ": record " << n << " at byte offset " << off
          << " needs " << payload << " payload bytes, only "
          << bytes.size() - off - 4 << " remain";
      throw FormatError(msg.str());
    }
    off += 4;
    for (std::size_t k = 0; k < d; ++k, off += 4) {
      const float v = std::bit_cast<float>(read_u32_le(&bytes[off]));
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << path.string() << ": non-finite value at byte offset " << off;
        throw FormatError(msg.str());
      }
      values.push_back(v);
    }
    ++n;
  }
  if (n == 0) throw FormatError(path.string() + ": no records");
  return Dataset(n, d, std::move(values));
}

void save_fvecs(const std::filesystem::path& path, const Dataset& ds) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot create fvecs file: " + path.string());
  for (std::size_t i = 0; i < ds.n(); ++i) {
    write_u32_le(out, static_cast<std::uint32_t>(ds.d()));
    for (float v : ds.row(i)) write_u32_le(out, std::bit_cast<std::uint32_t>(v));
  }
  if (!out) throw FormatError("write failed: " + path.string());
}

Dataset generate_synthetic(std::size_t n, std::size_t d, std::uint64_t seed,
                           float lo, float hi) {
  if (n == 0 || d == 0) throw ArgumentError("synthetic dataset needs n, d >= 1");
  if (!(lo < hi) || !std::isfinite(hi - lo)) {
    throw ArgumentError("synthetic range requires lo < hi with finite width");
  }
  // mt19937_64 output is fixed by the standard; uniform_real_distribution is
  // not, so the mapping to [lo, hi) is done by hand.
  std::mt19937_64 rng(seed);
  const double width = static_cast<double>(hi) - static_cast<double>(lo);
  const float below_hi = std::nextafter(hi, lo);
  std::vector<float> values(n * d);
  for (float& v : values) {
    const double u = static_cast<double>(rng() >> 11) * 0x1p-53;
    const float x = static_cast<float>(static_cast<double>(lo) + width * u);
    v = x < hi ? x : below_hi;
  }
  return Dataset(n, d, std::move(values));
}

HalfDataset to_half(const Dataset& ds, std::size_t block_side,
                    std::size_t kslice) {
  if (block_side == 0 || kslice == 0) {
    throw ArgumentError("block_side and kslice must be positive");
  }
  HalfDataset hd;
  hd.n_logical_ = ds.n();
  hd.d_logical_ = ds.d();
  hd.n_padded_ = round_up(ds.n(), block_side);
  hd.d_padded_ = round_up(ds.d(), kslice);
  hd.values_.assign(hd.n_padded_ * hd.d_padded_, Half{});
  for (std::size_t i = 0; i < ds.n(); ++i) {
    const auto src = ds.row(i);
    Half* dst = hd.values_.data() + i * hd.d_padded_;
    for (std::size_t k = 0; k < ds.d(); ++k) {
      const Half h = Half::from_float(src[k]);
      if (!h.is_finite()) {
        std::ostringstream msg;
        msg.precision(9);
        msg << "point " << i << " dim " << k << " value " << src[k]
            << " overflows FP16 (max " << kHalfMax << ")";
        throw RangeError(msg.str());
      }
      dst[k] = h;
    }
  }
  hd.norms_ = compute_squared_norms(hd);
  return hd;
}

std::vector<float> compute_squared_norms(const HalfDataset& hd) {
  std::vector<float> norms(hd.n_padded(), 0.0f);
  for (std::size_t i = 0; i < hd.n_padded(); ++i) {
    float acc = 0.0f;
    for (const Half h : hd.row(i)) {
      const float w = h.to_float();
      acc = add_rz(acc, w * w);
    }
    norms[i] = acc;
  }
  return norms;
}

}  // namespace tcjoin
