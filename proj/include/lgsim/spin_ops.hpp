// Copyright 2026 The lgsim Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file spin_ops.hpp
 * @brief Spin-j operator algebra on the (2j+1)-dimensional irrep.
 *
 * Basis convention used everywhere in lgsim: index i holds |m = j - i>, so
 * index 0 is m = +j and the last index is m = -j.
 */
#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "lgsim/half_int.hpp"

namespace lgsim {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Entrywise tolerance for Hermiticity and unitarity claims.
inline constexpr double kOperatorTolerance = 1e-12;

class SpinSystem {
public:
    /// Throws InputError for negative j.
    explicit SpinSystem(HalfInt j);

    [[nodiscard]] HalfInt j() const noexcept { return j_; }
    [[nodiscard]] int dim() const noexcept { return j_.twice() + 1; }

    /// m value stored at basis index i.
    [[nodiscard]] HalfInt m_at(int index) const noexcept { return HalfInt{j_.twice() - 2 * index}; }

    /// Basis index of m; throws InputError when m is not a level of this system.
    [[nodiscard]] int index_of(HalfInt m) const;

    [[nodiscard]] bool contains(HalfInt m) const noexcept;

    /// (-1)^(j-m), computed from the integer j - m.
    [[nodiscard]] int parity_sign(HalfInt m) const;

    bool operator==(const SpinSystem&) const = default;

private:
    HalfInt j_;
};

[[nodiscard]] Operator jz_matrix(const SpinSystem& sys);
[[nodiscard]] Operator jplus_matrix(const SpinSystem& sys);
[[nodiscard]] Operator jminus_matrix(const SpinSystem& sys);
[[nodiscard]] Operator jx_matrix(const SpinSystem& sys);
[[nodiscard]] Operator jy_matrix(const SpinSystem& sys);
[[nodiscard]] Operator parity_matrix(const SpinSystem& sys);

/// Eigenvalues of J_x, ascending; exactly {-j, ..., +j}.
[[nodiscard]] RealVector jx_spectrum(const SpinSystem& sys);

/**
 * U(theta) = exp(-i theta J_x).
 *
 * Built from the eigenvectors of the real symmetric J_x with the eigenvalues
 * snapped to their exact values -j, -j+1, ..., j. Throws InputError for a
 * non-finite theta.
 */
[[nodiscard]] Operator rotation_x(const SpinSystem& sys, double theta);

/// max_ij |X - X^dagger|.
[[nodiscard]] double hermiticity_defect(const Operator& x);

/// max_ij |U^dagger U - I|.
[[nodiscard]] double unitarity_defect(const Operator& u);

[[nodiscard]] inline bool is_hermitian(const Operator& x, double tol = kOperatorTolerance) {
    return x.rows() == x.cols() && hermiticity_defect(x) <= tol;
}

[[nodiscard]] inline bool is_unitary(const Operator& u, double tol = kOperatorTolerance) {
    return u.rows() == u.cols() && unitarity_defect(u) <= tol;
}

}  // namespace lgsim
