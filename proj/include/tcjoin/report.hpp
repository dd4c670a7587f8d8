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

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "tcjoin/analysis.hpp"

namespace tcjoin {

struct Metric {
  std::string name;
  std::variant<double, std::int64_t, std::string> value;
};

using Report = std::vector<Metric>;

// name=value, one per line
std::string to_key_value(const Report& report);
// {"metrics": [{"name": ..., "value": ...}, ...]}
std::string to_json(const Report& report);

Report make_report(const AccuracyReport& acc);

// bin_lo,bin_hi,count rows with a header
std::string histogram_csv(const ErrorStats& stats);

}  // namespace tcjoin
