// Copyright 2026 The UCR Authors
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

#ifndef UCR_ERROR_HPP_
#define UCR_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace ucr {

// Coarse failure classes. The C API and the CLI exit codes are derived from
// these, so the set is part of the public contract.
enum class ErrorCode {
  kInvalidArgument,
  kDomain,
  kParse,
  kIo,
  kNumeric,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0)
      : Error(ErrorCode::kParse, line == 0 ? message
                                           : "line " + std::to_string(line) +
                                                 ": " + message),
        line_(line) {}

  // 1-based; 0 when the failure is not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class NumericError : public Error {
 public:
  NumericError(const std::string& message, long step)
      : Error(ErrorCode::kNumeric,
              message + " (step " + std::to_string(step) + ")"),
        step_(step) {}

  long step() const noexcept { return step_; }

 private:
  long step_;
};

}  // namespace ucr

#endif  // UCR_ERROR_HPP_
