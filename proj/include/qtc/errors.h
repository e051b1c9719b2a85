// Copyright 2026 The QTC Authors
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

#ifndef _QTC_ERRORS_H
#define _QTC_ERRORS_H

#include <stdexcept>
#include <string>

namespace qtc {

/// A parameter lies outside its documented bounds (qubit count, filter count, ...).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A qubit or class index is out of range.
struct IndexError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// Vector or matrix dimensions disagree.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Malformed gate request, e.g. a CNOT whose control equals its target.
struct InvalidGateError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Empty batch, too few items for a split, and similar argument problems.
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Base for everything that comes from bad input data rather than bad parameters.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : DataError {
    using DataError::DataError;
};

struct FormatError : DataError {
    using DataError::DataError;
};

struct IoError : DataError {
    using DataError::DataError;
};

}  // namespace qtc

#endif
