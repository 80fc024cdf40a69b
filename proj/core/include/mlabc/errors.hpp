// Copyright 2026 The mlabc Authors
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

#ifndef MLABC_ERRORS_HPP
#define MLABC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mlabc {

/// A parameter lies outside its documented domain.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two sequences that must have equal length do not.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A level or site index is out of range.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// The model lacks a capability the operation requires.
class UnsupportedModelError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Rejection sampling of the coarsest ABC target is too inefficient to proceed.
class InitializationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every importance weight vanished.
class DegenerateWeightsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A planner was asked to work outside its rate regime.
class RegimeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input file or configuration.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mlabc

#endif  // MLABC_ERRORS_HPP
