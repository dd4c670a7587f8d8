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
#include "tcjoin/tiling.hpp"

namespace tcjoin {

/// Peak MMA throughput and bandwidths of the device the tiling targets.
/// Throughputs in TFLOPS, bandwidths in TB/s.
struct HardwareModel {
  double peak_tflops = 312.0;
  double element_bytes = 2.0;
  double dram_bw = 1.5;
  double l2_bw = 6.4;
  double smem_bw = 17.9;

  static HardwareModel a100() { return {}; }
  void validate() const;
};

struct RequiredReuse {
  long global_reuse = 0;  // per element read through L2
  long shared_reuse = 0;  // per element read from shared memory
  double global_exact = 0.0;
  double shared_exact = 0.0;
};

/// At peak, one element is consumed per FLOP (two FLOPs per two elements);
/// each level must reuse a value demand/bandwidth times, rounded to nearest.
RequiredReuse required_reuse(const HardwareModel& hw);

struct TileReuse {
  std::size_t block_reuse = 0;         // MACs fed by each staged element
  std::size_t warp_reuse = 0;          // MACs fed by each warp-panel element
  std::size_t p_fragment_uses = 0;     // MMAs per loaded 16x16 P fragment
  std::size_t q_fragment_uses = 0;     // MMAs per loaded 16x8 Q fragment
  std::size_t staged_per_iteration = 0;
  RequiredReuse required;
  bool meets_global = false;
  bool meets_shared = false;
};

/// Reuse achieved by a tiling. Fragment counts are the geometric ones: a
/// warp tile holds warp_side/16 P fragments and warp_side/8 Q fragments and
/// multiplies every P with every Q, so each P is used warp_side/8 times and
/// each Q warp_side/16 times.
TileReuse tile_reuse(const TileConfig& cfg,
                     const HardwareModel& hw = HardwareModel::a100());

/// Mean over points of |N_test ∩ N_truth| / |N_test ∪ N_truth|, a point
/// whose two neighbor sets are both empty scoring 1. Self-pairs count like
/// any other neighbor.
double overlap_accuracy(const ResultSet& test, const ResultSet& truth);

struct ErrorStats {
  std::size_t count = 0;  // matched pairs
  bool defined = false;   // false when nothing matched
  double mean = 0.0;
  double stddev = 0.0;    // population
  double min = 0.0;
  double max = 0.0;
  std::vector<std::size_t> histogram;  // linear bins over [min, max]
};

inline constexpr std::size_t kDefaultHistogramBins = 61;

/// Signed error sqrt(test dist_sq) - sqrt(truth dist_sq) over pairs present
/// in both sets.
ErrorStats distance_error_stats(const ResultSet& test, const ResultSet& truth,
                                std::size_t bins = kDefaultHistogramBins);

struct AccuracyReport {
  double overlap = 0.0;
  ErrorStats errors;
};

/// Number of local maxima of the 3-bin moving average holding at least
/// min_fraction of the peak count.
std::size_t count_histogram_modes(const std::vector<std::size_t>& histogram,
                                  double min_fraction = 0.05);

/// (|R| - n) / n
double selectivity(const ResultSet& rs);

struct Calibration {
  double epsilon = 0.0;
  double selectivity = 0.0;  // estimated on the sample
  int iterations = 0;
  std::size_t sample = 0;
};

/// Bisection on epsilon until the sampled selectivity is within
/// tol * target_s, or 40 probes. `sample` query points, chosen by `seed`,
/// are searched against the whole dataset in FP64.
Calibration calibrate_epsilon(const Dataset& ds, double target_s, double tol,
                              std::size_t sample, std::uint64_t seed);

/// 2 * n_padded^2 * d_padded / elapsed, in TFLOPS.
double derived_tflops(std::size_t n_padded, std::size_t d_padded,
                      double elapsed_seconds);

}  // namespace tcjoin
