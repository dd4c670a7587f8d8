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
#include <iosfwd>
#include <string>
#include <vector>

namespace tcjoin::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kArgument = 2,  // bad flags, bad values, refused comparisons
  kFormat = 3,    // unreadable or malformed input, FP16 range
  kCompute = 4,   // accumulator overflow, calibration failure
};

struct SyntheticSpec {
  std::size_t n = 0;
  std::size_t d = 0;
};

/// Parses the compact "NxD" form, e.g. "1000x64".
SyntheticSpec parse_synthetic(const std::string& spec);

/// Runs one command line (args[0] is the subcommand) and returns the exit
/// code. Regular output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace tcjoin::cli
