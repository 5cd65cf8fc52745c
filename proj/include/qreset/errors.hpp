// Copyright 2026 The qreset Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qreset {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: wrong dimensions, invalid parameters, schema violations.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A numerical routine failed or produced output violating a physical invariant.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature could not reach the requested tolerance.
class QuadratureError : public NumericalError {
public:
    QuadratureError(const std::string& what, double estimate, double error_bound)
        : NumericalError(what), estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

/// The target state cannot be reached from some start state(s).
class DisconnectedError : public Error {
public:
    DisconnectedError(const std::string& what, std::vector<std::size_t> states)
        : Error(what), states_(std::move(states)) {}

    const std::vector<std::size_t>& states() const noexcept { return states_; }

private:
    std::vector<std::size_t> states_;
};

}  // namespace qreset
