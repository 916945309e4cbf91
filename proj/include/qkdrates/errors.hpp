// Copyright 2026 The qkdrates developers
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

#include <stdexcept>
#include <string>

namespace qkdrates {

// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A numeric argument is outside its documented range.
struct OutOfRange : Error {
    using Error::Error;
};

// A bias table is missing one of the nine basis pairs.
struct MissingPair : Error {
    using Error::Error;
};

// The channel's Stokes offset t is not zero within tolerance.
struct NotUnital : Error {
    using Error::Error;
};

// The channel's Bell weights go negative; carries the offending weight.
struct NotCompletelyPositive : Error {
    NotCompletelyPositive(const std::string& msg, double offending_weight)
        : Error(msg), offending_weight(offending_weight) {}
    double offending_weight;
};

// A probability vector does not sum to one (or has a negative entry).
struct NotNormalized : Error {
    using Error::Error;
};

// A matrix fails the density-matrix checks (Hermiticity, trace, spectrum).
struct NotDensityMatrix : Error {
    using Error::Error;
};

// A matrix that must be positive semidefinite is not.
struct NotPositive : Error {
    using Error::Error;
};

// A requested diagonal is not realizable by any completely positive channel.
struct InfeasibleDiagonal : Error {
    using Error::Error;
};

// An internal consistency check failed; indicates a bug, not bad input.
struct AssertionFailure : Error {
    using Error::Error;
};

// A channel-spec document could not be parsed.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace qkdrates
