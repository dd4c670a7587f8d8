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
#include "tcjoin/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "tcjoin/errors.hpp"

namespace tcjoin {

void HardwareModel::validate() const {
  if (!(peak_tflops > 0) || !(element_bytes > 0) || !(dram_bw > 0) ||
      !(l2_bw > 0) || !(smem_bw > 0)) {
    throw ArgumentError("hardware model values must be strictly positive");
  }
}

RequiredReuse required_reuse(const HardwareModel& hw) {
  hw.validate();
  const double elements_per_s = hw.peak_tflops * 1e12;
  const double bytes_per_s = elements_per_s * hw.element_bytes;
  RequiredReuse r;
  r.global_exact = bytes_per_s / (hw.l2_bw * 1e12);
  r.shared_exact = bytes_per_s / (hw.smem_bw * 1e12);
  // every element is used at least once
  r.global_reuse = std::max(1L, std::lround(r.global_exact));
  r.shared_reuse = std::max(1L, std::lround(r.shared_exact));
  return r;
}

TileReuse tile_reuse(const TileConfig& cfg, const HardwareModel& hw) {
  cfg.validate();
  TileReuse t;
  t.block_reuse = cfg.block_side;
  t.warp_reuse = cfg.warp_side;
  t.p_fragment_uses = cfg.warp_side / 8;
  t.q_fragment_uses = cfg.warp_side / 16;
  t.staged_per_iteration = 2 * cfg.block_side * cfg.block_kslice;
  t.required = required_reuse(hw);
  t.meets_global = static_cast<long>(t.block_reuse) >= t.required.global_reuse;
  t.meets_shared = static_cast<long>(t.warp_reuse) >= t.required.shared_reuse;
  return t;
}

namespace {

// Calls f(i, test_range, truth_range) for every point, where the ranges are
// the pairs of point i in each (sorted) set.
template <typename F>
void for_each_point(const ResultSet& test, const ResultSet& truth, F&& f) {
  std::size_t a = 0;
  std::size_t b = 0;
  for (std::size_t i = 0; i < test.n; ++i) {
    const std::size_t a0 = a;
    const std::size_t b0 = b;
    while (a < test.pairs.size() && test.pairs[a].i == i) ++a;
    while (b < truth.pairs.size() && truth.pairs[b].i == i) ++b;
    f(i, a0, a, b0, b);
  }
}

void check_same_n(const ResultSet& test, const ResultSet& truth) {
  if (test.n != truth.n) {
    std::ostringstream msg;
    msg << "result sets built over different datasets (n=" << test.n
        << " vs n=" << truth.n << ")";
    throw ArgumentError(msg.str());
  }
}

}  // namespace

double overlap_accuracy(const ResultSet& test, const ResultSet& truth) {
  check_same_n(test, truth);
  if (test.n == 0) throw ArgumentError("overlap needs n >= 1");
  double total = 0.0;
  for_each_point(test, truth, [&](std::size_t, std::size_t a0, std::size_t a1,
                                  std::size_t b0, std::size_t b1) {
    std::size_t inter = 0;
    std::size_t a = a0;
    std::size_t b = b0;
    while (a < a1 && b < b1) {
      if (test.pairs[a].j == truth.pairs[b].j) {
        ++inter, ++a, ++b;
      } else if (test.pairs[a].j < truth.pairs[b].j) {
        ++a;
      } else {
        ++b;
      }
    }
    const std::size_t uni = (a1 - a0) + (b1 - b0) - inter;
    total += uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
  });
  return total / static_cast<double>(test.n);
}

ErrorStats distance_error_stats(const ResultSet& test, const ResultSet& truth,
                                std::size_t bins) {
  check_same_n(test, truth);
  if (bins == 0) throw ArgumentError("histogram needs at least one bin");
  std::vector<double> errs;
  for_each_point(test, truth, [&](std::size_t, std::size_t a, std::size_t a1,
                                  std::size_t b, std::size_t b1) {
    while (a < a1 && b < b1) {
      const Pair& x = test.pairs[a];
      const Pair& y = truth.pairs[b];
      if (x.j == y.j) {
        errs.push_back(std::sqrt(std::max(0.0, x.dist_sq)) -
                       std::sqrt(std::max(0.0, y.dist_sq)));
        ++a, ++b;
      } else if (x.j < y.j) {
        ++a;
      } else {
        ++b;
      }
    }
  });

  ErrorStats st;
  st.count = errs.size();
  st.histogram.assign(bins, 0);
  if (errs.empty()) return st;
  st.defined = true;
  st.mean = std::accumulate(errs.begin(), errs.end(), 0.0) /
            static_cast<double>(errs.size());
  double ss = 0.0;
  for (double e : errs) ss += (e - st.mean) * (e - st.mean);
  st.stddev = std::sqrt(ss / static_cast<double>(errs.size()));
  const auto [lo, hi] = std::minmax_element(errs.begin(), errs.end());
  st.min = *lo;
  st.max = *hi;
  const double width = st.max - st.min;
  for (double e : errs) {
    std::size_t b = bins / 2;  // degenerate range: everything in the centre
    if (width > 0) {
      b = static_cast<std::size_t>((e - st.min) / width * static_cast<double>(bins));
      b = std::min(b, bins - 1);
    }
    ++st.histogram[b];
  }
  return st;
}

std::size_t count_histogram_modes(const std::vector<std::size_t>& histogram,
                                  double min_fraction) {
  const std::size_t nb = histogram.size();
  if (nb == 0) return 0;
  std::vector<double> smooth(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    double sum = 0.0;
    int cnt = 0;
    for (std::size_t k = b == 0 ? 0 : b - 1; k <= std::min(b + 1, nb - 1); ++k) {
      sum += static_cast<double>(histogram[k]);
      ++cnt;
    }
    smooth[b] = sum / cnt;
  }
  const double peak = *std::max_element(smooth.begin(), smooth.end());
  if (peak <= 0) return 0;
  std::size_t modes = 0;
  std::size_t b = 0;
  while (b < nb) {
    // treat runs of equal values as one plateau
    std::size_t e = b;
    while (e + 1 < nb && smooth[e + 1] == smooth[b]) ++e;
    const bool left_lower = b == 0 || smooth[b - 1] < smooth[b];
    const bool right_lower = e == nb - 1 || smooth[e + 1] < smooth[b];
    if (left_lower && right_lower && smooth[b] >= min_fraction * peak) ++modes;
    b = e + 1;
  }
  return modes;
}

double selectivity(const ResultSet& rs) {
  if (rs.n == 0) throw ArgumentError("selectivity needs n >= 1");
  return (static_cast<double>(rs.pairs.size()) - static_cast<double>(rs.n)) /
         static_cast<double>(rs.n);
}

Calibration calibrate_epsilon(const Dataset& ds, double target_s, double tol,
                              std::size_t sample, std::uint64_t seed) {
  if (!(target_s > 0) || !std::isfinite(target_s)) {
    throw ArgumentError("target selectivity must be positive");
  }
  if (!(tol > 0)) throw ArgumentError("calibration tolerance must be positive");
  const std::size_t n = ds.n();
  if (sample == 0 || sample > n) {
    throw ArgumentError("calibration sample must be in 1..n");
  }
  const std::size_t m = sample;
  if (m * n > (std::size_t{1} << 27)) {
    throw ArgumentError("calibration sample too large: sample*n exceeds 2^27");
  }

  // deterministic subset: partial Fisher-Yates with a fixed engine
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t r = k + static_cast<std::size_t>(rng() % (n - k));
    std::swap(idx[k], idx[r]);
  }

  std::vector<double> dists;
  dists.reserve(m * n);
  const std::size_t d = ds.d();
  for (std::size_t s = 0; s < m; ++s) {
    const float* q = ds.row(idx[s]).data();
    for (std::size_t j = 0; j < n; ++j) {
      const float* p = ds.row(j).data();
      double sum = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double diff = static_cast<double>(q[k]) - static_cast<double>(p[k]);
        sum += diff * diff;
      }
      dists.push_back(std::sqrt(sum));
    }
  }
  std::sort(dists.begin(), dists.end());

  const double md = static_cast<double>(m);
  auto estimate = [&](double eps) {
    const auto count = std::upper_bound(dists.begin(), dists.end(), eps) - dists.begin();
    return (static_cast<double>(count) - md) / md;
  };
  const double band = tol * target_s;
  auto accept = [&](double s) { return std::abs(s - target_s) <= band; };

  Calibration c;
  c.sample = m;
  double hi = dists.back() > 0 ? dists.back() : 1.0;
  double lo = 0.0;
  const double s_hi = estimate(hi);
  const double s_lo = estimate(lo);
  if (target_s > static_cast<double>(n - 1) || s_hi < target_s - band ||
      s_lo > target_s + band) {
    std::ostringstream msg;
    msg << "selectivity " << target_s << " unreachable: sampled range is ["
        << s_lo << ", " << s_hi << "]";
    throw CalibrationError(msg.str(), s_lo, s_hi);
  }
  if (accept(s_hi)) return {hi, s_hi, 0, m};
  if (accept(s_lo)) return {lo, s_lo, 0, m};

  double mid = hi;
  double s_mid = s_hi;
  for (int it = 1; it <= 40; ++it) {
    mid = 0.5 * (lo + hi);
    s_mid = estimate(mid);
    c.iterations = it;
    if (accept(s_mid)) break;
    if (s_mid < target_s) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  c.epsilon = mid;
  c.selectivity = s_mid;
  return c;
}

double derived_tflops(std::size_t n_padded, std::size_t d_padded,
                      double elapsed_seconds) {
  if (!(elapsed_seconds > 0)) throw ArgumentError("elapsed time must be > 0");
  const double np = static_cast<double>(n_padded);
  return 2.0 * np * np * static_cast<double>(d_padded) / elapsed_seconds / 1e12;
}

}  // namespace tcjoin
