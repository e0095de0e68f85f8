// Copyright 2026 The lgsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "lgsim/density.hpp"

#include <cmath>
#include <sstream>

#include "lgsim/errors.hpp"

namespace lgsim {

DensityMatrix::DensityMatrix(Operator rho) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols() || rho_.rows() == 0) {
        throw InputError("density matrix must be square and non-empty");
    }
    if (!rho_.allFinite()) {
        throw InputError("density matrix has non-finite entries");
    }
    const double herm = hermiticity_defect(rho_);
    if (herm > kOperatorTolerance) {
        std::ostringstream msg;
        msg << "density matrix is not Hermitian (defect " << herm << ")";
        throw InputError(msg.str());
    }
    const Complex tr = rho_.trace();
    if (std::abs(tr - 1.0) > kTraceTolerance) {
        std::ostringstream msg;
        msg << "density matrix trace is " << tr.real() << ", expected 1";
        throw InputError(msg.str());
    }
    const Operator herm_part = 0.5 * (rho_ + rho_.adjoint());
    Eigen::SelfAdjointEigenSolver<Operator> solver(herm_part, Eigen::EigenvaluesOnly);
    const double smallest = solver.eigenvalues().minCoeff();
    if (smallest < -kPsdTolerance) {
        std::ostringstream msg;
        msg << "density matrix is not positive semidefinite (eigenvalue " << smallest << ")";
        throw InputError(msg.str());
    }
}

DensityMatrix DensityMatrix::evolved(const Operator& u) const {
    Operator out = u * rho_ * u.adjoint();
    return DensityMatrix(0.5 * (out + out.adjoint()), Trusted{});
}

DensityMatrix maximally_mixed(const SpinSystem& sys) {
    const int d = sys.dim();
    return DensityMatrix(Operator::Identity(d, d) / static_cast<double>(d));
}

Complex trace_product(const Operator& x, const Operator& y) {
    return (x.transpose().cwiseProduct(y)).sum();
}

}  // namespace lgsim
