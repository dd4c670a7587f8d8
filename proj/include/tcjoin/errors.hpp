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

#include <stdexcept>
#include <string>

namespace tcjoin {

// Every library failure derives from Error so the CLI can map the concrete
// type onto an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

// FP16 conversion overflow.
class RangeError : public Error {
 public:
  using Error::Error;
};

// FP32 accumulator overflow inside an emulated MMA.
class OverflowError : public Error {
 public:
  OverflowError(const std::string& what, int row, int col)
      : Error(what), row_(row), col_(col) {}

  int row() const { return row_; }
  int col() const { return col_; }

 private:
  int row_;
  int col_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class CalibrationError : public Error {
 public:
  CalibrationError(const std::string& what, double s_min, double s_max)
      : Error(what), s_min_(s_min), s_max_(s_max) {}

  double achieved_min() const { return s_min_; }
  double achieved_max() const { return s_max_; }

 private:
  double s_min_;
  double s_max_;
};

}  // namespace tcjoin
