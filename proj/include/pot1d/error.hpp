// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace pot1d {

/// Argument outside the domain of a function (x outside [lo, hi], p outside
/// [0, 1], log of a nonpositive quantity during a step).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Bad grid or configuration parameters.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Stencil index outside 0..J.
class IndexError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// The discrete second derivative became nonpositive (log of a nonpositive
/// argument in the update). node() is -1 when no single node is implicated.
class ConvexityLoss : public DomainError {
public:
    ConvexityLoss(const std::string& what, int node) : DomainError(what), node_(node) {}
    int node() const noexcept { return node_; }

private:
    int node_;
};

/// Selected time step underflowed.
class DegenerateStep : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Catalog lookup failed.
class UnknownExample : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A derivative callable required by a bound formula is not available.
class MissingDerivative : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace pot1d
