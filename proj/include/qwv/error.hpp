// Copyright 2026 The qwv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qwv {

enum class ErrorCode {
  ShapeMismatch,
  BadIndex,
  NotHermitian,
  NoConvergence,
  UnknownLabel,
  LabelClash,
  LabelMismatch,
  NotSquare,
  NotSuperset,
  UnknownGate,
  BadParam,
  NotUnitary,
  NotOrthonormal,
  SyntaxError,
  TypeError,
  DisjointnessError,
  UnknownVariable,
  NotAWhile,
  DimensionTooLarge,
  SideConditionViolated,
  UnknownRule,
  StepFailed,
  CounterexampleFound,
  BadHidingFunction,
  NotNormalized,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse failures carry a source position (1-based).
class SyntaxError : public Error {
 public:
  SyntaxError(int line, int col, const std::string &what)
      : Error(ErrorCode::SyntaxError,
              std::to_string(line) + ":" + std::to_string(col) + ": " + what),
        line_(line),
        col_(col) {}

  int line() const noexcept { return line_; }
  int col() const noexcept { return col_; }

 private:
  int line_;
  int col_;
};

}  // namespace qwv
