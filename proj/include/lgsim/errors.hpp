// Copyright 2026 The lgsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace lgsim {

/// Malformed or non-finite input handed to a constructor or operation.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Well-formed input outside the admissible domain (b > 1, A entry > 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A measurement outcome whose probability is below the conditioning
/// threshold; conditional states and correlations built on it are undefined.
class IllPosedError : public std::runtime_error {
public:
    IllPosedError(const std::string& what, double probability)
        : std::runtime_error(what), probability_(probability) {}

    [[nodiscard]] double probability() const noexcept { return probability_; }

private:
    double probability_;
};

}  // namespace lgsim
