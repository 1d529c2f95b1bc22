// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace fdsa {

/// Raised when an argument violates a numeric precondition of the model.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Raised for malformed or inconsistent scenario configuration.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Specific degenerate cases that callers may want to recover from.

class DegenerateLocus : public DomainError {
public:
    DegenerateLocus() : DomainError("zero FOI: mainlobe locus is the vertical line theta = theta_T") {}
};

class FoldingInvalid : public DomainError {
public:
    FoldingInvalid() : DomainError("FOI vector is not antisymmetric; folding invalid, evaluate full plane") {}
};

class DegenerateObjective : public DomainError {
public:
    explicit DegenerateObjective(const std::string& what) : DomainError(what) {}
};

class TargetUnreachable : public DomainError {
public:
    TargetUnreachable()
        : DomainError("target unreachable; clamp to nearest attainable extremum") {}
};

} // namespace fdsa
