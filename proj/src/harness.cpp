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
#include "tcjoin/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "tcjoin/analysis.hpp"
#include "tcjoin/dataset.hpp"
#include "tcjoin/errors.hpp"
#include "tcjoin/layout.hpp"
#include "tcjoin/oracle.hpp"
#include "tcjoin/report.hpp"
#include "tcjoin/tiling.hpp"

namespace tcjoin::cli {

using json = nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

struct DataSource {
  std::string fvecs;
  std::string synthetic;
  std::uint64_t seed = 42;
  float lo = 0.0f;
  float hi = 1.0f;

  void add_options(CLI::App* cmd) {
    auto* f = cmd->add_option("--fvecs", fvecs, "Input dataset in fvecs format");
    auto* s = cmd->add_option("--synthetic", synthetic,
                              "Uniform synthetic dataset NxD, e.g. 1000x64");
    f->excludes(s);
    cmd->add_option("--seed", seed, "Synthetic generator seed")
        ->capture_default_str();
    cmd->add_option("--lo", lo, "Synthetic lower bound (inclusive)")
        ->capture_default_str();
    cmd->add_option("--hi", hi, "Synthetic upper bound (exclusive)")
        ->capture_default_str();
  }

  Dataset load() const {
    if (fvecs.empty() == synthetic.empty()) {
      throw ArgumentError("exactly one of --fvecs or --synthetic is required");
    }
    if (!fvecs.empty()) return load_fvecs(fvecs);
    const SyntheticSpec spec = parse_synthetic(synthetic);
    return generate_synthetic(spec.n, spec.d, seed, lo, hi);
  }

  json to_json(const Dataset& ds) const {
    json j;
    if (!fvecs.empty()) {
      j["fvecs"] = fvecs;
    } else {
      j["synthetic"] = synthetic;
      j["seed"] = seed;
      j["lo"] = lo;
      j["hi"] = hi;
    }
    j["n"] = ds.n();
    j["d"] = ds.d();
    j["hash"] = hex64(ds.fingerprint());
    return j;
  }
};

struct ConfigOptions {
  TileConfig cfg;
  bool no_raster = false;
  bool no_prefetch = false;

  ConfigOptions() {
    cfg.workers = std::max(1u, std::thread::hardware_concurrency());
  }

  void add_options(CLI::App* cmd) {
    cmd->add_option("--block-side", cfg.block_side, "Points per block-tile edge")
        ->capture_default_str();
    cmd->add_option("--block-kslice", cfg.block_kslice,
                    "Dimensions staged per block iteration")
        ->capture_default_str();
    cmd->add_option("--warp-side", cfg.warp_side, "Points per warp-tile edge")
        ->capture_default_str();
    cmd->add_option("--dispatch-square", cfg.dispatch_square,
                    "Side of the tile rasterization square")
        ->capture_default_str();
    cmd->add_flag("--no-raster-order", no_raster,
                  "Dispatch block tiles in plain row-major order");
    cmd->add_flag("--no-prefetch", no_prefetch,
                  "Stage each k-slice on demand (pipeline depth 1)");
    cmd->add_option("--workers", cfg.workers, "Worker threads")
        ->capture_default_str();
  }

  TileConfig resolve() const {
    TileConfig c = cfg;
    if (no_raster) c.dispatch_square = 1;
    if (no_prefetch) c.prefetch_depth = 1;
    c.validate();
    return c;
  }
};

json config_json(const TileConfig& c) {
  return {{"block_side", c.block_side},
          {"block_kslice", c.block_kslice},
          {"warp_side", c.warp_side},
          {"warp_kslice", c.warp_kslice},
          {"dispatch_square", c.dispatch_square},
          {"prefetch_depth", c.prefetch_depth},
          {"workers", c.workers}};
}

struct EpsilonOptions {
  std::optional<double> epsilon;
  std::optional<double> target;
  double tol = 0.05;
  std::optional<std::size_t> sample;

  void add_options(CLI::App* cmd) {
    auto* e = cmd->add_option("--epsilon", epsilon, "Search radius");
    auto* t = cmd->add_option("--target-selectivity", target,
                              "Calibrate epsilon to this selectivity");
    e->excludes(t);
    cmd->add_option("--calib-tol", tol, "Relative calibration tolerance")
        ->capture_default_str();
    cmd->add_option("--calib-sample", sample,
                    "Calibration query sample (default min(n, 1000))");
  }

  void check() const {
    if (epsilon && (!std::isfinite(*epsilon) || *epsilon < 0)) {
      throw ArgumentError("--epsilon must be finite and >= 0");
    }
    if (target && !(*target > 0)) {
      throw ArgumentError("--target-selectivity must be > 0");
    }
  }

  // Resolves epsilon, calibrating when a selectivity was requested.
  double resolve(const Dataset& ds, std::uint64_t seed, json& manifest) const {
    if (epsilon) return *epsilon;
    if (!target) throw ArgumentError("one of --epsilon or --target-selectivity is required");
    const std::size_t m = sample ? *sample : std::min<std::size_t>(ds.n(), 1000);
    const Calibration c = calibrate_epsilon(ds, *target, tol, m, seed);
    manifest["calibration"] = {{"target_selectivity", *target},
                               {"tolerance", tol},
                               {"sample", c.sample},
                               {"iterations", c.iterations},
                               {"epsilon", c.epsilon},
                               {"estimated_selectivity", c.selectivity}};
    return c.epsilon;
  }
};

json base_manifest(const std::string& command) {
  return {{"command", command}, {"tool_version", kVersion}};
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
}

void emit(std::ostream& out, const Report& report, const std::string& format) {
  if (format == "json") {
    out << to_json(report) << '\n';
  } else {
    out << to_key_value(report);
  }
}

// ---------------------------------------------------------------- join

struct JoinCommand {
  DataSource source;
  ConfigOptions config;
  EpsilonOptions eps;
  std::string pairs_out;
  std::string manifest_out;
  std::string format = "text";

  void attach(CLI::App* cmd) {
    source.add_options(cmd);
    config.add_options(cmd);
    eps.add_options(cmd);
    cmd->add_option("--pairs-out", pairs_out, "Write the pair list (binary)");
    cmd->add_option("--manifest-out", manifest_out, "Write the run manifest (JSON)");
    cmd->add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
  }

  int run(std::ostream& out) const {
    eps.check();
    const TileConfig cfg = config.resolve();
    json manifest = base_manifest("join");
    const auto t_total = Clock::now();

    auto t = Clock::now();
    const Dataset ds = source.load();
    const double ingest_s = seconds_since(t);
    manifest["dataset"] = source.to_json(ds);

    const double epsilon = eps.resolve(ds, source.seed, manifest);

    t = Clock::now();
    const HalfDataset hd = to_half(ds, cfg.block_side, cfg.warp_kslice);
    const double convert_s = seconds_since(t);

    JoinStats stats;
    const ResultSet rs = self_join(hd, static_cast<float>(epsilon), cfg, &stats);
    if (!pairs_out.empty()) write_pairs(pairs_out, rs);
    const double total_s = seconds_since(t_total);

    const double s = selectivity(rs);
    const double kernel_tflops =
        stats.kernel_seconds > 0
            ? derived_tflops(hd.n_padded(), hd.d_padded(), stats.kernel_seconds)
            : 0.0;
    manifest["epsilon"] = epsilon;
    manifest["config"] = config_json(cfg);
    manifest["timings"] = {{"ingest", ingest_s},
                           {"convert", convert_s},
                           {"join", stats.kernel_seconds},
                           {"merge", stats.merge_seconds},
                           {"total", total_s}};
    manifest["results"] = {{"pairs", rs.pairs.size()},
                           {"selectivity", s},
                           {"kernel_tflops", kernel_tflops}};
    if (!pairs_out.empty()) manifest["pairs_file"] = pairs_out;
    if (!manifest_out.empty()) write_text_file(manifest_out, manifest.dump(2) + "\n");

    Report r;
    r.push_back({"n", static_cast<std::int64_t>(ds.n())});
    r.push_back({"d", static_cast<std::int64_t>(ds.d())});
    r.push_back({"epsilon", epsilon});
    r.push_back({"pairs", static_cast<std::int64_t>(rs.pairs.size())});
    r.push_back({"selectivity", s});
    r.push_back({"convert_s", convert_s});
    r.push_back({"join_s", stats.kernel_seconds});
    r.push_back({"merge_s", stats.merge_seconds});
    r.push_back({"total_s", total_s});
    r.push_back({"kernel_tflops", kernel_tflops});
    emit(out, r, format);
    return kOk;
  }
};

// ---------------------------------------------------------------- accuracy

struct AccuracyCommand {
  DataSource source;
  ConfigOptions config;
  EpsilonOptions eps;
  std::size_t bins = kDefaultHistogramBins;
  std::string hist_csv;
  std::string test_pairs;
  std::string test_manifest;
  std::string format = "text";

  void attach(CLI::App* cmd) {
    source.add_options(cmd);
    config.add_options(cmd);
    eps.add_options(cmd);
    cmd->add_option("--bins", bins, "Error histogram bins")->capture_default_str();
    cmd->add_option("--hist-csv", hist_csv, "Write the error histogram as CSV");
    auto* tp = cmd->add_option("--test-pairs", test_pairs,
                               "Compare a pairs file from an earlier join run");
    auto* tm = cmd->add_option("--test-manifest", test_manifest,
                               "Manifest of the run that wrote --test-pairs");
    tp->needs(tm);
    tm->needs(tp);
    cmd->add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
  }

  int run(std::ostream& out) const {
    eps.check();
    const TileConfig cfg = config.resolve();
    json manifest = base_manifest("accuracy");
    const Dataset ds = source.load();
    manifest["dataset"] = source.to_json(ds);

    std::optional<json> prior;
    if (!test_manifest.empty()) {
      std::ifstream in(test_manifest);
      if (!in) throw FormatError("cannot open " + test_manifest);
      try {
        prior = json::parse(in);
      } catch (const json::exception& e) {
        throw FormatError(test_manifest + ": " + e.what());
      }
      const std::string want = hex64(ds.fingerprint());
      const std::string got = prior->value("/dataset/hash"_json_pointer, std::string{});
      if (got != want) {
        throw ArgumentError("refusing to compare: dataset hash " + want +
                            " differs from the test run's " +
                            (got.empty() ? std::string("(missing)") : got));
      }
    }

    double epsilon = 0.0;
    if (prior && !eps.epsilon && !eps.target) {
      epsilon = prior->at("epsilon").get<double>();
    } else {
      epsilon = eps.resolve(ds, source.seed, manifest);
    }

    ResultSet test;
    if (prior) {
      test.pairs = read_pairs(test_pairs);
      test.n = ds.n();
      test.epsilon = epsilon;
      test.sort();
    } else {
      const HalfDataset hd = to_half(ds, cfg.block_side, cfg.warp_kslice);
      test = self_join(hd, static_cast<float>(epsilon), cfg);
    }
    const ResultSet truth = oracle::brute_force_fp64(ds, epsilon);

    AccuracyReport acc;
    acc.overlap = overlap_accuracy(test, truth);
    acc.errors = distance_error_stats(test, truth, bins);
    if (!hist_csv.empty()) write_text_file(hist_csv, histogram_csv(acc.errors));

    Report r;
    r.push_back({"epsilon", epsilon});
    r.push_back({"test_pairs", static_cast<std::int64_t>(test.pairs.size())});
    r.push_back({"truth_pairs", static_cast<std::int64_t>(truth.pairs.size())});
    for (auto& m : make_report(acc)) r.push_back(m);
    emit(out, r, format);
    return kOk;
  }
};

// ---------------------------------------------------------------- bench

std::vector<std::size_t> parse_list(const std::string& text, const char* what) {
  std::vector<std::size_t> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(item, &used);
      if (used != item.size() || v == 0) throw std::invalid_argument(item);
      vals.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw ArgumentError(std::string("bad ") + what + " list entry '" + item + "'");
    }
  }
  if (vals.empty()) throw ArgumentError(std::string("empty ") + what + " list");
  return vals;
}

constexpr const char* kBenchColumns =
    "variant,n,d,n_padded,d_padded,block_side,warp_side,dispatch_square,"
    "prefetch_depth,workers,epsilon,pairs,convert_s,kernel_s,merge_s,total_s,"
    "kernel_tflops,total_tflops";

struct BenchCommand {
  std::string sizes = "4096";
  std::string dims = "64,128,256,512";
  std::uint64_t seed = 42;
  std::optional<double> epsilon;
  bool leave_one_out = false;
  ConfigOptions config;
  std::string csv_out;
  std::string manifest_out;

  void attach(CLI::App* cmd) {
    cmd->add_option("--n", sizes, "Comma-separated dataset sizes")->capture_default_str();
    cmd->add_option("--d", dims, "Comma-separated dimensionalities")->capture_default_str();
    cmd->add_option("--seed", seed, "Synthetic generator seed")->capture_default_str();
    cmd->add_option("--epsilon", epsilon,
                    "Search radius (default 0.5*sqrt(d/6), about half the mean "
                    "distance of uniform data)");
    cmd->add_flag("--leave-one-out", leave_one_out,
                  "Also run each optimization disabled in turn");
    config.add_options(cmd);
    cmd->add_option("--csv", csv_out, "Write CSV here instead of stdout");
    cmd->add_option("--manifest-out", manifest_out, "Write per-row manifests (JSON array)");
    cmd->footer(std::string("CSV columns: ") + kBenchColumns +
                "\n  variant: all | no-raster-order | no-prefetch | "
                "warp-side-32 | no-block-tile\n  *_s: seconds; kernel_* "
                "excludes conversion and merge; tflops = 2*n_padded^2*d_padded/s/1e12");
  }

  int run(std::ostream& out) const {
    if (epsilon && (!std::isfinite(*epsilon) || *epsilon < 0)) {
      throw ArgumentError("--epsilon must be finite and >= 0");
    }
    const TileConfig base = config.resolve();
    std::vector<std::pair<std::string, TileConfig>> variants{{"all", base}};
    if (leave_one_out) {
      TileConfig c = base;
      c.dispatch_square = 1;
      variants.emplace_back("no-raster-order", c);
      c = base;
      c.prefetch_depth = 1;
      variants.emplace_back("no-prefetch", c);
      c = base;
      c.warp_side = 32;
      variants.emplace_back("warp-side-32", c);
      c = base;
      c.block_side = c.warp_side;
      variants.emplace_back("no-block-tile", c);
      for (auto& v : variants) v.second.validate();
    }
    const auto ns = parse_list(sizes, "--n");
    const auto ds_list = parse_list(dims, "--d");

    std::ostringstream csv;
    csv << std::setprecision(9) << kBenchColumns << '\n';
    json manifests = json::array();
    for (std::size_t n : ns) {
      for (std::size_t d : ds_list) {
        const Dataset ds = generate_synthetic(n, d, seed);
        const double eps = epsilon ? *epsilon : 0.5 * std::sqrt(static_cast<double>(d) / 6.0);
        for (const auto& [name, cfg] : variants) {
          const auto t0 = Clock::now();
          const HalfDataset hd = to_half(ds, cfg.block_side, cfg.warp_kslice);
          const double convert_s = seconds_since(t0);
          JoinStats st;
          const ResultSet rs = self_join(hd, static_cast<float>(eps), cfg, &st);
          const double total_s = seconds_since(t0);
          const double kt = derived_tflops(hd.n_padded(), hd.d_padded(),
                                           std::max(st.kernel_seconds, 1e-12));
          const double tt = derived_tflops(hd.n_padded(), hd.d_padded(),
                                           std::max(total_s, 1e-12));
          csv << name << ',' << n << ',' << d << ',' << hd.n_padded() << ','
              << hd.d_padded() << ',' << cfg.block_side << ',' << cfg.warp_side
              << ',' << cfg.dispatch_square << ',' << cfg.prefetch_depth << ','
              << cfg.workers << ',' << eps << ',' << rs.pairs.size() << ','
              << convert_s << ',' << st.kernel_seconds << ',' << st.merge_seconds
              << ',' << total_s << ',' << kt << ',' << tt << '\n';
          json m = base_manifest("bench");
          m["variant"] = name;
          m["dataset"] = {{"synthetic", std::to_string(n) + "x" + std::to_string(d)},
                          {"seed", seed},
                          {"n", n},
                          {"d", d},
                          {"hash", hex64(ds.fingerprint())}};
          m["epsilon"] = eps;
          m["config"] = config_json(cfg);
          m["timings"] = {{"convert", convert_s},
                          {"join", st.kernel_seconds},
                          {"merge", st.merge_seconds},
                          {"total", total_s}};
          m["results"] = {{"pairs", rs.pairs.size()}, {"kernel_tflops", kt}};
          manifests.push_back(std::move(m));
        }
      }
    }
    if (csv_out.empty()) {
      out << csv.str();
    } else {
      write_text_file(csv_out, csv.str());
    }
    if (!manifest_out.empty()) write_text_file(manifest_out, manifests.dump(2) + "\n");
    return kOk;
  }
};

// ---------------------------------------------------------------- calibrate

struct CalibrateCommand {
  DataSource source;
  double target = 64.0;
  double tol = 0.05;
  std::optional<std::size_t> sample;
  std::string format = "text";

  void attach(CLI::App* cmd) {
    source.add_options(cmd);
    cmd->add_option("--target-selectivity", target, "Desired selectivity")
        ->capture_default_str();
    cmd->add_option("--tol", tol, "Relative tolerance")->capture_default_str();
    cmd->add_option("--sample", sample, "Query sample size (default min(n, 1000))");
    cmd->add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
  }

  int run(std::ostream& out) const {
    const Dataset ds = source.load();
    const std::size_t m = sample ? *sample : std::min<std::size_t>(ds.n(), 1000);
    const Calibration c = calibrate_epsilon(ds, target, tol, m, source.seed);
    Report r;
    r.push_back({"epsilon", c.epsilon});
    r.push_back({"estimated_selectivity", c.selectivity});
    r.push_back({"iterations", static_cast<std::int64_t>(c.iterations)});
    r.push_back({"sample", static_cast<std::int64_t>(c.sample)});
    emit(out, r, format);
    return kOk;
  }
};

// ---------------------------------------------------------------- verify-layout

std::string degrees_line(const layout::ConflictReport& r) {
  std::ostringstream os;
  for (std::size_t k = 0; k < r.degrees.size(); ++k) {
    os << (k ? " " : "") << r.degrees[k];
  }
  return os.str();
}

struct VerifyLayoutCommand {
  std::size_t first_point = 1;
  unsigned slice_base = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--first-point", first_point, "1-based fragment origin")
        ->capture_default_str();
    cmd->add_option("--slice-base", slice_base, "First 8-dimension slice (0..6)")
        ->capture_default_str();
  }

  int run(std::ostream& out) const {
    using layout::Layout;
    const auto sw = layout::count_conflicts(
        layout::ldmatrix_trace(first_point, slice_base, Layout::swizzled));
    const auto rm = layout::count_conflicts(
        layout::ldmatrix_trace(first_point, slice_base, Layout::row_major));
    out << "ldmatrix fragment at point " << first_point << ", slices "
        << slice_base << "-" << slice_base + 1 << "\n";
    out << "phase  swizzled  row-major\n";
    for (std::size_t p = 0; p < sw.degrees.size(); ++p) {
      out << std::setw(5) << p << std::setw(10) << sw.degrees[p]
          << std::setw(11) << rm.degrees[p] << "\n";
    }
    const auto st_sw = layout::count_conflicts(layout::store_trace(first_point, Layout::swizzled));
    const auto st_rm = layout::count_conflicts(layout::store_trace(first_point, Layout::row_major));
    out << "store swizzled: " << degrees_line(st_sw) << "\n";
    out << "store row-major: " << degrees_line(st_rm) << "\n";
    out << "swizzled: " << degrees_line(sw) << "; row-major: " << degrees_line(rm)
        << "\n";
    return kOk;
  }
};

// ---------------------------------------------------------------- reuse

struct ReuseCommand {
  HardwareModel hw;
  TileConfig cfg;

  void attach(CLI::App* cmd) {
    cmd->add_option("--peak-tflops", hw.peak_tflops, "Peak MMA TFLOPS")->capture_default_str();
    cmd->add_option("--element-bytes", hw.element_bytes, "Bytes per element")
        ->capture_default_str();
    cmd->add_option("--dram-bw", hw.dram_bw, "DRAM bandwidth, TB/s")->capture_default_str();
    cmd->add_option("--l2-bw", hw.l2_bw, "Effective L2 bandwidth, TB/s")->capture_default_str();
    cmd->add_option("--smem-bw", hw.smem_bw, "Shared-memory bandwidth, TB/s")
        ->capture_default_str();
    cmd->add_option("--block-side", cfg.block_side, "Points per block-tile edge")
        ->capture_default_str();
    cmd->add_option("--block-kslice", cfg.block_kslice, "Dimensions per block iteration")
        ->capture_default_str();
    cmd->add_option("--warp-side", cfg.warp_side, "Points per warp-tile edge")
        ->capture_default_str();
  }

  int run(std::ostream& out) const {
    const TileReuse t = tile_reuse(cfg, hw);
    auto flag = [](bool ok) { return ok ? "pass" : "FAIL"; };
    out << "required: global " << t.required.global_reuse << " (exact "
        << t.required.global_exact << "), shared " << t.required.shared_reuse
        << " (exact " << t.required.shared_exact << ")\n";
    out << "achieved: block " << t.block_reuse << " " << flag(t.meets_global)
        << ", warp " << t.warp_reuse << " " << flag(t.meets_shared) << "\n";
    out << "fragment uses: P " << t.p_fragment_uses << ", Q " << t.q_fragment_uses
        << "\n";
    out << "staged per block iteration: " << t.staged_per_iteration << " FP16 values\n";
    return kOk;
  }
};

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ArgumentError*>(&e) || dynamic_cast<const ConfigError*>(&e)) {
    return kArgument;
  }
  if (dynamic_cast<const FormatError*>(&e) || dynamic_cast<const RangeError*>(&e)) {
    return kFormat;
  }
  if (dynamic_cast<const OverflowError*>(&e) || dynamic_cast<const CalibrationError*>(&e)) {
    return kCompute;
  }
  return kInternal;
}

}  // namespace

SyntheticSpec parse_synthetic(const std::string& spec) {
  const auto x = spec.find_first_of("xX");
  auto bad = [&spec]() {
    return ArgumentError("synthetic spec '" + spec + "' is not of the form NxD");
  };
  if (x == std::string::npos || x == 0 || x + 1 == spec.size()) throw bad();
  const std::string a = spec.substr(0, x);
  const std::string b = spec.substr(x + 1);
  auto digits = [](const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (!digits(a) || !digits(b)) throw bad();
  SyntheticSpec out{std::stoull(a), std::stoull(b)};
  if (out.n == 0 || out.d == 0) throw bad();
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mixed-precision (FP16 multiply, FP32 accumulate) Euclidean "
               "distance self-join with an emulated tensor-core MMA"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  JoinCommand join;
  AccuracyCommand accuracy;
  BenchCommand bench;
  CalibrateCommand calibrate;
  VerifyLayoutCommand verify;
  ReuseCommand reuse;
  auto* c_join = app.add_subcommand("join", "Run the epsilon self-join");
  auto* c_acc = app.add_subcommand("accuracy", "Compare the mixed join with the FP64 oracle");
  auto* c_bench = app.add_subcommand("bench", "Timing sweep over n and d, CSV output");
  auto* c_cal = app.add_subcommand("calibrate", "Find epsilon for a target selectivity");
  auto* c_lay = app.add_subcommand("verify-layout", "Bank-conflict table for both layouts");
  auto* c_reuse = app.add_subcommand("reuse", "Required vs achieved data reuse");
  join.attach(c_join);
  accuracy.attach(c_acc);
  bench.attach(c_bench);
  calibrate.attach(c_cal);
  verify.attach(c_lay);
  reuse.attach(c_reuse);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    // subcommand --help surfaces here too
    if (e.get_exit_code() == 0) {
      for (auto* sub : app.get_subcommands()) out << sub->help();
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kArgument;
  }

  try {
    if (c_join->parsed()) return join.run(out);
    if (c_acc->parsed()) return accuracy.run(out);
    if (c_bench->parsed()) return bench.run(out);
    if (c_cal->parsed()) return calibrate.run(out);
    if (c_lay->parsed()) return verify.run(out);
    if (c_reuse->parsed()) return reuse.run(out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kInternal;
}

}  // namespace tcjoin::cli
