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
#include "tcjoin/tiling.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "tcjoin/errors.hpp"
#include "tcjoin/mma.hpp"

namespace tcjoin {

void TileConfig::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError(what); };
  if (warp_kslice != static_cast<std::size_t>(kFragK)) {
    fail("warp_kslice must be 16");
  }
  if (block_side == 0 || warp_side == 0 || block_kslice == 0) {
    fail("tile sizes must be positive");
  }
  if (block_side % warp_side != 0) {
    fail("block_side must be a multiple of warp_side");
  }
  if (warp_side % kFragRows != 0 || warp_side % kFragCols != 0) {
    fail("warp_side must be a multiple of 16");
  }
  if (block_kslice % warp_kslice != 0) {
    fail("block_kslice must be a multiple of warp_kslice");
  }
  if (dispatch_square == 0) fail("dispatch_square must be >= 1");
  if (prefetch_depth != 1 && prefetch_depth != 2) {
    fail("prefetch_depth must be 1 or 2");
  }
  if (workers == 0) fail("workers must be >= 1");
}

std::vector<TileCoord> rasterize_tiles(std::size_t grid_rows,
                                       std::size_t grid_cols,
                                       std::size_t square) {
  if (grid_rows == 0 || grid_cols == 0 || square == 0) {
    throw ArgumentError("rasterize_tiles needs positive grid and square");
  }
  std::vector<TileCoord> order;
  order.reserve(grid_rows * grid_cols);
  for (std::size_t gr = 0; gr < grid_rows; gr += square) {
    for (std::size_t gc = 0; gc < grid_cols; gc += square) {
      const std::size_t r_end = std::min(gr + square, grid_rows);
      const std::size_t c_end = std::min(gc + square, grid_cols);
      for (std::size_t r = gr; r < r_end; ++r) {
        for (std::size_t c = gc; c < c_end; ++c) order.push_back({r, c});
      }
    }
  }
  return order;
}

namespace {

// Per-worker scratch: the staged slabs (shared-memory analog), the widened
// warp panels (register-fragment analog) and the block accumulator.
class TileWorkspace {
 public:
  explicit TileWorkspace(const TileConfig& cfg)
      : cfg_(cfg),
        slab_size_(cfg.block_side * cfg.block_kslice),
        slabs_(static_cast<std::size_t>(cfg.prefetch_depth) * 2 * slab_size_),
        p_panel_(cfg.warp_kslice * cfg.warp_side),
        q_panel_(cfg.warp_kslice * cfg.warp_side),
        acc_(cfg.block_side * cfg.block_side) {}

  void run(const HalfDataset& hd, TileCoord coord, float eps_sq,
           std::vector<Pair>& out, TileCounters& counters);

 private:
  Half* slab_p(int buf) { return slabs_.data() + buf * 2 * slab_size_; }
  Half* slab_q(int buf) { return slab_p(buf) + slab_size_; }

  void stage(const HalfDataset& hd, std::size_t r0, std::size_t c0,
             std::size_t iter, int buf, TileCounters& counters);
  void consume(std::size_t kb, int buf, TileCounters& counters);

  const TileConfig& cfg_;
  std::size_t slab_size_;
  std::vector<Half> slabs_;
  std::vector<float> p_panel_;
  std::vector<float> q_panel_;
  std::vector<float> acc_;
};

void TileWorkspace::stage(const HalfDataset& hd, std::size_t r0,
                          std::size_t c0, std::size_t iter, int buf,
                          TileCounters& counters) {
  const std::size_t bk = cfg_.block_kslice;
  const std::size_t k0 = iter * bk;
  const std::size_t kb = std::min(bk, hd.d_padded() - k0);
  Half* p = slab_p(buf);
  Half* q = slab_q(buf);
  for (std::size_t r = 0; r < cfg_.block_side; ++r) {
    const Half* src_p = hd.row(r0 + r).data() + k0;
    const Half* src_q = hd.row(c0 + r).data() + k0;
    std::copy(src_p, src_p + kb, p + r * bk);
    std::copy(src_q, src_q + kb, q + r * bk);
  }
  counters.staged_elements += 2 * cfg_.block_side * kb;
  ++counters.block_iterations;
}

void TileWorkspace::consume(std::size_t kb, int buf, TileCounters& counters) {
  const std::size_t bs = cfg_.block_side;
  const std::size_t bk = cfg_.block_kslice;
  const std::size_t ws = cfg_.warp_side;
  const std::size_t wk = cfg_.warp_kslice;
  const Half* p = slab_p(buf);
  const Half* q = slab_q(buf);
  for (std::size_t wr = 0; wr < bs; wr += ws) {
    for (std::size_t wc = 0; wc < bs; wc += ws) {
      float* acc = acc_.data() + wr * bs + wc;
      for (std::size_t ks = 0; ks < kb; ks += wk) {
        // widen one 16-dimension slice of the warp's points into k-major
        // panels
        for (std::size_t i = 0; i < ws; ++i) {
          const Half* prow = p + (wr + i) * bk + ks;
          const Half* qrow = q + (wc + i) * bk + ks;
          for (std::size_t k = 0; k < wk; ++k) {
            p_panel_[k * ws + i] = prow[k].to_float();
            q_panel_[k * ws + i] = qrow[k].to_float();
          }
        }
        accumulate_panel(p_panel_.data(), q_panel_.data(),
                         static_cast<int>(ws), static_cast<int>(ws),
                         static_cast<int>(wk), acc, bs);
        counters.accumulator_updates += ws * ws * wk;
      }
    }
  }
}

void TileWorkspace::run(const HalfDataset& hd, TileCoord coord, float eps_sq,
                        std::vector<Pair>& out, TileCounters& counters) {
  const std::size_t bs = cfg_.block_side;
  const std::size_t r0 = coord.row_block * bs;
  const std::size_t c0 = coord.col_block * bs;
  if (r0 + bs > hd.n_padded() || c0 + bs > hd.n_padded()) {
    throw ArgumentError("tile coordinate outside the padded dataset");
  }
  std::fill(acc_.begin(), acc_.end(), 0.0f);

  const std::size_t iters =
      (hd.d_padded() + cfg_.block_kslice - 1) / cfg_.block_kslice;
  auto width = [&](std::size_t it) {
    return std::min(cfg_.block_kslice, hd.d_padded() - it * cfg_.block_kslice);
  };
  if (cfg_.prefetch_depth == 2) {
    stage(hd, r0, c0, 0, 0, counters);
    for (std::size_t it = 0; it < iters; ++it) {
      if (it + 1 < iters) {
        stage(hd, r0, c0, it + 1, static_cast<int>((it + 1) % 2), counters);
      }
      consume(width(it), static_cast<int>(it % 2), counters);
    }
  } else {
    for (std::size_t it = 0; it < iters; ++it) {
      stage(hd, r0, c0, it, 0, counters);
      consume(width(it), 0, counters);
    }
  }

  const std::size_t n = hd.n_logical();
  const auto& norms = hd.norms();
  for (std::size_t i = 0; i < bs && r0 + i < n; ++i) {
    const std::size_t gi = r0 + i;
    const float* arow = acc_.data() + i * bs;
    for (std::size_t j = 0; j < bs && c0 + j < n; ++j) {
      const std::size_t gj = c0 + j;
      const float a = arow[j];
      if (!std::isfinite(a)) {
        std::ostringstream msg;
        msg << "FP32 accumulator overflow for pair (" << gi << ", " << gj << ")";
        throw OverflowError(msg.str(), static_cast<int>(gi),
                            static_cast<int>(gj));
      }
      const float dsq = squared_distance(a, norms[gi], norms[gj]);
      if (dsq <= eps_sq) {
        out.push_back({static_cast<std::uint32_t>(gi),
                       static_cast<std::uint32_t>(gj), dsq});
      }
    }
  }
}

void check_compatible(const HalfDataset& hd, const TileConfig& cfg) {
  cfg.validate();
  if (hd.n_padded() % cfg.block_side != 0) {
    std::ostringstream msg;
    msg << "dataset padded to " << hd.n_padded()
        << " points, not a multiple of block_side " << cfg.block_side;
    throw ConfigError(msg.str());
  }
  if (hd.d_padded() % cfg.warp_kslice != 0) {
    throw ConfigError("dataset dimensionality not padded to warp_kslice");
  }
}

}  // namespace

std::vector<Pair> compute_block_tile(const HalfDataset& hd, TileCoord coord,
                                     float eps_sq, const TileConfig& cfg,
                                     TileCounters* counters) {
  check_compatible(hd, cfg);
  TileWorkspace ws(cfg);
  std::vector<Pair> out;
  TileCounters local;
  ws.run(hd, coord, eps_sq, out, local);
  if (counters) *counters += local;
  return out;
}

ResultSet self_join(const HalfDataset& hd, float epsilon, const TileConfig& cfg,
                    JoinStats* stats) {
  check_compatible(hd, cfg);
  if (!std::isfinite(epsilon) || epsilon < 0.0f) {
    throw ArgumentError("epsilon must be finite and >= 0");
  }
  const float eps_sq = epsilon * epsilon;
  const std::size_t grid = hd.n_padded() / cfg.block_side;
  const std::vector<TileCoord> tiles =
      rasterize_tiles(grid, grid, cfg.dispatch_square);

  const auto t0 = std::chrono::steady_clock::now();
  const unsigned nworkers = static_cast<unsigned>(
      std::min<std::size_t>(cfg.workers, tiles.size()));

  struct WorkerState {
    std::vector<Pair> pairs;
    TileCounters counters;
    std::exception_ptr error;
    std::size_t error_tile = 0;
  };
  std::vector<WorkerState> states(nworkers);
  std::atomic<std::size_t> cursor{0};
  std::atomic<bool> abort{false};

  auto work = [&](unsigned w) {
    WorkerState& st = states[w];
    TileWorkspace ws(cfg);
    while (!abort.load(std::memory_order_relaxed)) {
      const std::size_t t = cursor.fetch_add(1, std::memory_order_relaxed);
      if (t >= tiles.size()) break;
      try {
        ws.run(hd, tiles[t], eps_sq, st.pairs, st.counters);
      } catch (...) {
        st.error = std::current_exception();
        st.error_tile = t;
        abort.store(true);
        break;
      }
    }
  };

  if (nworkers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(nworkers);
    for (unsigned w = 0; w < nworkers; ++w) threads.emplace_back(work, w);
    for (auto& th : threads) th.join();
  }

  // Report the failure from the earliest tile in dispatch order.
  const WorkerState* failed = nullptr;
  for (const auto& st : states) {
    if (st.error && (!failed || st.error_tile < failed->error_tile)) {
      failed = &st;
    }
  }
  if (failed) std::rethrow_exception(failed->error);

  const auto t1 = std::chrono::steady_clock::now();
  ResultSet rs;
  rs.n = hd.n_logical();
  rs.epsilon = epsilon;
  std::size_t total = 0;
  for (const auto& st : states) total += st.pairs.size();
  rs.pairs.reserve(total);
  TileCounters counters;
  for (auto& st : states) {
    rs.pairs.insert(rs.pairs.end(), st.pairs.begin(), st.pairs.end());
    counters += st.counters;
  }
  rs.sort();
  const auto t2 = std::chrono::steady_clock::now();

  if (stats) {
    stats->counters = counters;
    stats->tiles = tiles.size();
    stats->kernel_seconds = std::chrono::duration<double>(t1 - t0).count();
    stats->merge_seconds = std::chrono::duration<double>(t2 - t1).count();
  }
  return rs;
}

}  // namespace tcjoin
