// Copyright 2026 The popdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
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

namespace popdp {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (out-of-range id, bad rate, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// An experiment or loop was configured inconsistently.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed text input. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A Markov chain required to be ergodic is reducible or periodic.
class ErgodicityError : public Error {
 public:
  using Error::Error;
};

// A modelling assumption (e.g. full-support behaviour policy) does not hold.
class AssumptionError : public Error {
 public:
  using Error::Error;
};

// An enumeration would exceed the configured size cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

}  // namespace popdp
