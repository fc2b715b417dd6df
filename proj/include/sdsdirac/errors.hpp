// Copyright 2026 The sdsdirac Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace sds {

/// Base class of every error raised by the library. `code()` is a short
/// machine-readable tag used by the CLI diagnostics.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    [[nodiscard]] const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// Invalid model or numerical parameter (non-positive α, β, m, ω, bad size ...).
class ParameterError : public Error {
public:
    explicit ParameterError(const std::string& what) : Error("parameter", what) {}
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error("domain", what) {}
};

/// Parameters sit exactly on Q(mω) = 0, the boundary between regimes.
class RegimeBoundaryError : public Error {
public:
    explicit RegimeBoundaryError(const std::string& what) : Error("regime_boundary", what) {}
};

/// Branch requested for parameters/quantum numbers where it is not valid.
class InvalidBranchError : public Error {
public:
    explicit InvalidBranchError(const std::string& what) : Error("invalid_branch", what) {}
};

/// A quadratic form or integral does not converge.
class DivergenceError : public Error {
public:
    explicit DivergenceError(const std::string& what) : Error("divergence", what) {}
};

/// Numerical failure (eigensolver, mismatched sizes, non-convergence).
class NumericError : public Error {
public:
    explicit NumericError(const std::string& what) : Error("numeric", what) {}
};

}  // namespace sds
