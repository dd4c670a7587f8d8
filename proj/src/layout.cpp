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
#include "tcjoin/layout.hpp"

#include <algorithm>
#include <string>

#include "tcjoin/errors.hpp"

namespace tcjoin::layout {

namespace {

void check_point(std::size_t point) {
  if (point == 0) throw ArgumentError("point index is 1-based; got 0");
}

void check_slice(unsigned slice) {
  if (slice >= kSlotsPerRow) {
    throw ArgumentError("slice index " + std::to_string(slice) +
                        " outside 0..7");
  }
}

}  // namespace

std::string_view to_string(Layout layout) {
  return layout == Layout::swizzled ? "swizzled" : "row-major";
}

SlotAddress swizzle_address(std::size_t point, unsigned slice) {
  check_point(point);
  check_slice(slice);
  const std::size_t i0 = point - 1;
  const std::size_t flat =
      kSlotsPerRow * i0 + (slice ^ static_cast<unsigned>(i0 % kSlotsPerRow));
  return {flat / kSlotsPerRow, static_cast<unsigned>(flat % kSlotsPerRow)};
}

SlotAddress row_major_address(std::size_t point, unsigned slice) {
  check_point(point);
  check_slice(slice);
  return {point - 1, slice};
}

SlotAddress place(Layout layout, std::size_t point, unsigned slice) {
  return layout == Layout::swizzled ? swizzle_address(point, slice)
                                    : row_major_address(point, slice);
}

AccessTrace store_trace(std::size_t first_point, Layout layout) {
  check_point(first_point);
  AccessTrace trace;
  for (unsigned s = 0; s < kSlotsPerRow; ++s) {
    Phase phase{};
    for (unsigned lane = 0; lane < kLanesPerPhase; ++lane) {
      phase[lane] = {lane, place(layout, first_point + lane, s)};
    }
    trace.phases.push_back(phase);
  }
  return trace;
}

AccessTrace ldmatrix_trace(std::size_t first_point, unsigned slice_base,
                           Layout layout) {
  check_point(first_point);
  if (slice_base + 1 >= kSlotsPerRow) {
    throw ArgumentError("ldmatrix slice_base must be in 0..6");
  }
  AccessTrace trace;
  for (unsigned half_k = 0; half_k < 2; ++half_k) {
    for (unsigned half_pts = 0; half_pts < 2; ++half_pts) {
      Phase phase{};
      for (unsigned lane = 0; lane < kLanesPerPhase; ++lane) {
        const std::size_t point = first_point + half_pts * 8 + lane;
        phase[lane] = {lane, place(layout, point, slice_base + half_k)};
      }
      trace.phases.push_back(phase);
    }
  }
  return trace;
}

ConflictReport count_conflicts(const AccessTrace& trace) {
  ConflictReport report;
  for (const Phase& phase : trace.phases) {
    std::array<unsigned, kSlotsPerRow> hits{};
    for (const Access& a : phase) ++hits[a.addr.slot];
    const unsigned degree = *std::max_element(hits.begin(), hits.end());
    report.degrees.push_back(degree);
    report.max_degree = std::max(report.max_degree, degree);
  }
  return report;
}

}  // namespace tcjoin::layout
