// Copyright 2026 The acenlp Authors.
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

#ifndef ACENLP_ERRORS_H_
#define ACENLP_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace acenlp {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. Carries the 1-based line number of the offending
// line (0 when not line-oriented).
class ParseError : public Error {
 public:
  ParseError(const std::string &source, std::size_t line,
             const std::string &what)
      : Error(source + ":" + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input that violates a data invariant (duplicate ids, cycles,
// dangling references, out-of-range indices).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace acenlp

#endif  // ACENLP_ERRORS_H_
