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

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

namespace tcjoin::layout {

// A shared-memory row is 128 bytes: eight 16-byte chunks, each holding eight
// FP16 dimensions and covering a group of four 4-byte banks. Conflicts are
// counted per chunk slot.
inline constexpr unsigned kSlotsPerRow = 8;
inline constexpr unsigned kLanesPerPhase = 8;

enum class Layout { swizzled, row_major };

std::string_view to_string(Layout layout);

struct SlotAddress {
  std::size_t row = 0;
  unsigned slot = 0;  // 0..7

  friend bool operator==(const SlotAddress&, const SlotAddress&) = default;
};

/// Destination of 8-dimension slice `slice` (0..7) of point `point`.
///
/// `point` is 1-based: the flat destination is 8(i-1) + (s XOR ((i-1) mod 8)),
/// with the XOR applied to the slot only. Throws ArgumentError for point 0 or
/// slice > 7.
SlotAddress swizzle_address(std::size_t point, unsigned slice);

/// Plain row-major placement, slot == slice.
SlotAddress row_major_address(std::size_t point, unsigned slice);

SlotAddress place(Layout layout, std::size_t point, unsigned slice);

struct Access {
  unsigned lane = 0;
  SlotAddress addr;
};

using Phase = std::array<Access, kLanesPerPhase>;

/// One 128-byte transaction per phase, eight 16-byte accesses each.
struct AccessTrace {
  std::vector<Phase> phases;
};

struct ConflictReport {
  std::vector<unsigned> degrees;  // per phase, 1 == conflict-free
  unsigned max_degree = 0;
};

/// Storing one 64-dimension k-slice of points first_point..first_point+7.
/// Phase s writes slice s of all eight points; lane l is point first_point+l.
AccessTrace store_trace(std::size_t first_point, Layout layout);

/// The four phases of an x4 ldmatrix loading a 16x16 fragment: 16 points
/// starting at first_point, 8-dimension slices slice_base and slice_base+1.
///   phase 0: points 1..8,  slice_base
///   phase 1: points 9..16, slice_base
///   phase 2: points 1..8,  slice_base + 1
///   phase 3: points 9..16, slice_base + 1
/// slice_base must be in 0..6.
AccessTrace ldmatrix_trace(std::size_t first_point, unsigned slice_base,
                           Layout layout);

/// Degree per phase = largest number of accesses sharing one slot. Rows are
/// ignored (different rows in the same slot still conflict) and identical
/// addresses are not treated as broadcasts.
ConflictReport count_conflicts(const AccessTrace& trace);

}  // namespace tcjoin::layout
