// Copyright 2026 The lgsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lgsim/spin_ops.hpp"

namespace lgsim {

struct CheckResult {
    std::string name;
    bool passed = false;
    double worst = 0.0;      ///< largest deviation observed (or a count for flag checks)
    double tolerance = 0.0;
};

/// Runs the self-consistency checks behind `lgsim check`. Deterministic for a
/// given seed.
[[nodiscard]] std::vector<CheckResult> run_invariant_suite(std::uint64_t seed = 20161017);

/// Density matrix from a Ginibre draw: G G^dagger / Tr.
[[nodiscard]] Operator random_mixed_state(int dim, std::mt19937_64& rng);

/// |psi><psi| for a normalized complex Gaussian vector.
[[nodiscard]] Operator random_pure_state(int dim, std::mt19937_64& rng);

}  // namespace lgsim
