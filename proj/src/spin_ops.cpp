// Copyright 2026 The lgsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "lgsim/spin_ops.hpp"

#include <cmath>
#include <string>

#include "lgsim/errors.hpp"

namespace lgsim {

SpinSystem::SpinSystem(HalfInt j) : j_(j) {
    if (j.twice() < 0) {
        throw InputError("spin j must be non-negative, got " + j.str());
    }
}

bool SpinSystem::contains(HalfInt m) const noexcept {
    const int diff = j_.twice() - m.twice();
    return diff >= 0 && diff <= 2 * j_.twice() && diff % 2 == 0;
}

int SpinSystem::index_of(HalfInt m) const {
    if (!contains(m)) {
        throw InputError("m = " + m.str() + " is not a level of spin j = " + j_.str());
    }
    return (j_.twice() - m.twice()) / 2;
}

int SpinSystem::parity_sign(HalfInt m) const {
    return index_of(m) % 2 == 0 ? 1 : -1;
}

Operator jz_matrix(const SpinSystem& sys) {
    const int d = sys.dim();
    Operator jz = Operator::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        jz(i, i) = sys.m_at(i).value();
    }
    return jz;
}

Operator jplus_matrix(const SpinSystem& sys) {
    // <m+1|J+|m> = sqrt(j(j+1) - m(m+1)); |m+1> sits one index above |m>.
    const int d = sys.dim();
    const double j = sys.j().value();
    Operator jp = Operator::Zero(d, d);
    for (int col = 1; col < d; ++col) {
        const double m = sys.m_at(col).value();
        jp(col - 1, col) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
    return jp;
}

Operator jminus_matrix(const SpinSystem& sys) {
    return jplus_matrix(sys).adjoint();
}

Operator jx_matrix(const SpinSystem& sys) {
    const Operator jp = jplus_matrix(sys);
    return 0.5 * (jp + jp.adjoint());
}

Operator jy_matrix(const SpinSystem& sys) {
    const Operator jp = jplus_matrix(sys);
    return (jp - jp.adjoint()) / Complex(0.0, 2.0);
}

Operator parity_matrix(const SpinSystem& sys) {
    const int d = sys.dim();
    Operator p = Operator::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        p(i, i) = (i % 2 == 0) ? 1.0 : -1.0;
    }
    return p;
}

RealVector jx_spectrum(const SpinSystem& sys) {
    const int d = sys.dim();
    RealVector spec(d);
    for (int k = 0; k < d; ++k) {
        spec(k) = -sys.j().value() + k;
    }
    return spec;
}

namespace {

// J_x is real symmetric with a non-degenerate spectrum, so the real solver
// gives an orthonormal eigenbasis sorted ascending, matching jx_spectrum.
Eigen::MatrixXd jx_eigenvectors(const SpinSystem& sys) {
    const Eigen::MatrixXd jx = jx_matrix(sys).real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jx);
    return solver.eigenvectors();
}

}  // namespace

Operator rotation_x(const SpinSystem& sys, double theta) {
    if (!std::isfinite(theta)) {
        throw InputError("rotation angle must be finite");
    }
    const Eigen::MatrixXd vecs = jx_eigenvectors(sys);
    const RealVector spec = jx_spectrum(sys);
    Eigen::VectorXcd phases(sys.dim());
    for (int k = 0; k < sys.dim(); ++k) {
        phases(k) = std::polar(1.0, -theta * spec(k));
    }
    const Operator v = vecs.cast<Complex>();
    return v * phases.asDiagonal() * v.adjoint();
}

double hermiticity_defect(const Operator& x) {
    return (x - x.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_defect(const Operator& u) {
    const auto n = u.rows();
    return (u.adjoint() * u - Operator::Identity(n, n)).cwiseAbs().maxCoeff();
}

}  // namespace lgsim
