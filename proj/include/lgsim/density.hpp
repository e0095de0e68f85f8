// Copyright 2026 The lgsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>

#include "lgsim/spin_ops.hpp"

namespace lgsim {

inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;

/// Validated density operator: Hermitian and unit trace to 1e-12, smallest
/// eigenvalue >= -1e-10.
class DensityMatrix {
public:
    /// Throws InputError when rho violates any of the invariants.
    explicit DensityMatrix(Operator rho);

    [[nodiscard]] const Operator& matrix() const noexcept { return rho_; }
    [[nodiscard]] int dim() const noexcept { return static_cast<int>(rho_.rows()); }

    /// U rho U^dagger, re-symmetrized.
    [[nodiscard]] DensityMatrix evolved(const Operator& u) const;

private:
    struct Trusted {};
    DensityMatrix(Operator rho, Trusted) : rho_(std::move(rho)) {}

    Operator rho_;
};

/// I / (2j+1).
[[nodiscard]] DensityMatrix maximally_mixed(const SpinSystem& sys);

/// Tr[X Y] without forming the product.
[[nodiscard]] Complex trace_product(const Operator& x, const Operator& y);

}  // namespace lgsim
