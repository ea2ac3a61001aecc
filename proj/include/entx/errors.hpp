// Copyright 2026 The entx Authors
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

#ifndef ENTX_ERRORS_HPP
#define ENTX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace entx {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameter outside its admissible range (negative widths, p > 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Mode index out of range, duplicated, or otherwise malformed.
class ModeError : public Error {
 public:
  using Error::Error;
};

// Operator too large for the configured mode cap, or mismatched dimensions.
class SizeError : public Error {
 public:
  using Error::Error;
};

// A value violates a documented invariant (non-Hermitian, trace != 1,
// incomplete Kraus set handed to a channel, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

// Malformed input document (JSON, CSV, config file).
class InputError : public Error {
 public:
  using Error::Error;
};

// Adaptive quadrature exhausted its refinement budget.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double estimate, double last_change)
      : Error(what), estimate_(estimate), last_change_(last_change) {}
  double estimate() const { return estimate_; }
  double last_change() const { return last_change_; }

 private:
  double estimate_;
  double last_change_;
};

}  // namespace entx

#endif  // ENTX_ERRORS_HPP
