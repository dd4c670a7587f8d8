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
#include "tcjoin/result_set.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

#include "tcjoin/errors.hpp"

namespace tcjoin {

namespace {

template <typename T>
void put_le(std::ostream& os, T v) {
  char b[sizeof(T)];
  for (std::size_t k = 0; k < sizeof(T); ++k) {
    b[k] = static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * k)) & 0xff);
  }
  os.write(b, sizeof(T));
}

template <typename T>
T get_le(const unsigned char* p) {
  std::uint64_t v = 0;
  for (std::size_t k = 0; k < sizeof(T); ++k) {
    v |= static_cast<std::uint64_t>(p[k]) << (8 * k);
  }
  return static_cast<T>(v);
}

}  // namespace

void ResultSet::sort() {
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
}

bool ResultSet::same_pairs(const ResultSet& other) const {
  if (n != other.n || pairs.size() != other.pairs.size()) return false;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (pairs[k].i != other.pairs[k].i || pairs[k].j != other.pairs[k].j) {
      return false;
    }
  }
  return true;
}

void write_pairs(const std::filesystem::path& path, const ResultSet& rs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot create pairs file: " + path.string());
  put_le<std::uint64_t>(out, rs.pairs.size());
  for (const Pair& p : rs.pairs) {
    put_le<std::uint32_t>(out, p.i);
    put_le<std::uint32_t>(out, p.j);
    put_le<std::uint32_t>(
        out, std::bit_cast<std::uint32_t>(static_cast<float>(p.dist_sq)));
  }
  if (!out) throw FormatError("write failed: " + path.string());
}

std::vector<Pair> read_pairs(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open pairs file: " + path.string());
  unsigned char head[8];
  if (!in.read(reinterpret_cast<char*>(head), 8)) {
    throw FormatError(path.string() + ": missing pair count header");
  }
  const auto count = get_le<std::uint64_t>(head);
  std::vector<Pair> pairs;
  pairs.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(count, 1u << 24)));
  unsigned char rec[12];
  for (std::uint64_t k = 0; k < count; ++k) {
    if (!in.read(reinterpret_cast<char*>(rec), 12)) {
      std::ostringstream msg;
      msg << path.string() << ": truncated at record " << k << " of " << count
          << " (byte offset " << 8 + 12 * k << ")";
      throw FormatError(msg.str());
    }
    pairs.push_back({get_le<std::uint32_t>(rec), get_le<std::uint32_t>(rec + 4),
                     std::bit_cast<float>(get_le<std::uint32_t>(rec + 8))});
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw FormatError(path.string() + ": trailing bytes after last record");
  }
  return pairs;
}

}  // namespace tcjoin
