// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace abcs {

// Base class for everything this library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Gamma function evaluated at a non-positive integer.
struct PoleError : Error {
    using Error::Error;
};

// Precondition violation (sub-threshold energy, wrong channel class,
// forward angle, critical boundary, ...).
struct DomainError : Error {
    using Error::Error;
};

// A series or extrapolation failed to reach its tolerance.
struct ConvergenceError : Error {
    ConvergenceError(const std::string& what, double residual_)
        : Error(what), residual(residual_) {}
    double residual = 0.0;
};

}  // namespace abcs
