// Copyright 2026 The fibermi Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fibermi {

// Failure categories map onto CLI exit codes.
enum class ErrorCategory { invalid_argument = 1, config = 2, physics = 3, numeric = 4 };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorCategory::invalid_argument, what) {}
};

/// Malformed configuration text. `line` is 1-based, 0 when unknown.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, std::size_t line = 0)
      : Error(ErrorCategory::config,
              line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A physically inconsistent setup (grid too coarse, window too short, no MI regime...).
class PhysicsError : public Error {
 public:
  explicit PhysicsError(const std::string& what) : Error(ErrorCategory::physics, what) {}
};

/// Non-finite field values during propagation.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, std::size_t step)
      : Error(ErrorCategory::numeric, what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

}  // namespace fibermi
