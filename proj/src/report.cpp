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
#include "tcjoin/report.hpp"

#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace tcjoin {

std::string to_key_value(const Report& report) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (const Metric& m : report) {
    os << m.name << '=';
    std::visit([&os](const auto& v) { os << v; }, m.value);
    os << '\n';
  }
  return os.str();
}

std::string to_json(const Report& report) {
  nlohmann::json metrics = nlohmann::json::array();
  for (const Metric& m : report) {
    nlohmann::json obj;
    obj["name"] = m.name;
    std::visit([&obj](const auto& v) { obj["value"] = v; }, m.value);
    metrics.push_back(std::move(obj));
  }
  return nlohmann::json{{"metrics", metrics}}.dump(2);
}

Report make_report(const AccuracyReport& acc) {
  Report r;
  r.push_back({"overlap", acc.overlap});
  r.push_back({"matched_pairs", static_cast<std::int64_t>(acc.errors.count)});
  r.push_back({"error_stats_defined", std::string(acc.errors.defined ? "true" : "false")});
  if (acc.errors.defined) {
    r.push_back({"err_mean", acc.errors.mean});
    r.push_back({"err_std", acc.errors.stddev});
    r.push_back({"err_min", acc.errors.min});
    r.push_back({"err_max", acc.errors.max});
  }
  r.push_back({"histogram_bins", static_cast<std::int64_t>(acc.errors.histogram.size())});
  return r;
}

std::string histogram_csv(const ErrorStats& stats) {
  std::ostringstream os;
  os << std::setprecision(10);
  os << "bin_lo,bin_hi,count\n";
  const std::size_t nb = stats.histogram.size();
  const double width = nb ? (stats.max - stats.min) / static_cast<double>(nb) : 0.0;
  for (std::size_t b = 0; b < nb; ++b) {
    const double lo = stats.min + width * static_cast<double>(b);
    os << lo << ',' << lo + width << ',' << stats.histogram[b] << '\n';
  }
  return os.str();
}

}  // namespace tcjoin
