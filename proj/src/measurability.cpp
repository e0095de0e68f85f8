// Copyright 2026 The lgsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "lgsim/measurability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "lgsim/density.hpp"
#include "lgsim/errors.hpp"

namespace lgsim {

namespace {

constexpr double kSpectrumSlack = 1e-12;

}  // namespace

// ---------------------------------------------------------------------------
// Partition
// ---------------------------------------------------------------------------

Partition::Partition(SpinSystem sys, std::vector<PartitionBlock> blocks)
    : sys_(sys), blocks_(std::move(blocks)), block_of_index_(sys.dim(), -1) {
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        const auto& block = blocks_[b];
        if (block.members.empty()) {
            throw InputError("partition block " + std::to_string(b) + " is empty");
        }
        bool mu_seen = false;
        for (const HalfInt m : block.members) {
            if (!sys_.contains(m)) {
                throw InputError("partition member m = " + m.str() + " is not a level of j = " +
                                 sys_.j().str());
            }
            int& owner = block_of_index_[sys_.index_of(m)];
            if (owner != -1) {
                throw InputError("partition blocks overlap at m = " + m.str());
            }
            owner = static_cast<int>(b);
            mu_seen = mu_seen || m == block.mu;
        }
        if (!mu_seen) {
            throw InputError("mu = " + block.mu.str() + " is not a member of its own block");
        }
    }
    for (int i = 0; i < sys_.dim(); ++i) {
        if (block_of_index_[i] == -1) {
            throw InputError("partition does not cover m = " + sys_.m_at(i).str());
        }
    }
}

HalfInt Partition::mu_of(HalfInt m) const {
    return blocks_[block_of_index_[sys_.index_of(m)]].mu;
}

int Partition::offset_of(HalfInt m) const {
    return (m - mu_of(m)).as_integer();
}

Partition uniform_partition(const SpinSystem& sys, int block_size) {
    const int d = sys.dim();
    if (block_size <= 0 || block_size % 2 == 0) {
        throw InputError("block size must be an odd positive integer, got " +
                         std::to_string(block_size));
    }
    if (d % block_size != 0) {
        throw InputError("block size " + std::to_string(block_size) + " does not divide 2j+1 = " +
                         std::to_string(d));
    }
    std::vector<PartitionBlock> blocks;
    for (int start = 0; start < d; start += block_size) {
        PartitionBlock block{sys.m_at(start + block_size / 2), {}};
        for (int i = start; i < start + block_size; ++i) {
            block.members.push_back(sys.m_at(i));
        }
        blocks.push_back(std::move(block));
    }
    return Partition(sys, std::move(blocks));
}

Partition edge_partition(const SpinSystem& sys) {
    const int d = sys.dim();
    if (d % 2 != 0) {
        throw InputError("edge partition needs an even number of levels (half-odd j), got j = " +
                         sys.j().str());
    }
    PartitionBlock upper{sys.j(), {}};
    PartitionBlock lower{-sys.j(), {}};
    for (int i = 0; i < d / 2; ++i) {
        upper.members.push_back(sys.m_at(i));
        lower.members.push_back(sys.m_at(d / 2 + i));
    }
    return Partition(sys, {std::move(upper), std::move(lower)});
}

Partition edge_partition_5_2() {
    return edge_partition(SpinSystem(HalfInt{5}));
}

// ---------------------------------------------------------------------------
// Measurability parameter and A
// ---------------------------------------------------------------------------

double b_from_sigma(double sigma) {
    if (std::isinf(sigma) && sigma > 0) {
        return 1.0;
    }
    return std::exp(-1.0 / (2.0 * sigma * sigma));
}

MeasurabilityParam MeasurabilityParam::from_b(double b) {
    if (!std::isfinite(b)) {
        throw InputError("measurability b must be finite");
    }
    if (b < 0.0 || b > 1.0) {
        std::ostringstream msg;
        msg << "measurability b = " << b << " is outside [0, 1]";
        throw DomainError(msg.str());
    }
    return {b, std::nullopt};
}

MeasurabilityParam MeasurabilityParam::from_sigma(double sigma) {
    if (std::isnan(sigma)) {
        throw InputError("measurability sigma must not be NaN");
    }
    if (!(sigma > 0.0)) {
        std::ostringstream msg;
        msg << "measurability sigma = " << sigma << " must be positive";
        throw DomainError(msg.str());
    }
    return {b_from_sigma(sigma), sigma};
}

double f_value(int offset, const MeasurabilityParam& param) {
    if (offset == 0) {
        return 1.0;
    }
    const double b = param.b();
    if (b == 0.0) {
        return 0.0;
    }
    const double sq = static_cast<double>(offset) * static_cast<double>(offset);
    return std::pow(b, sq);
}

Operator build_A(const Partition& partition, const MeasurabilityParam& param) {
    const SpinSystem& sys = partition.system();
    const int d = sys.dim();
    Operator a = Operator::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const HalfInt m = sys.m_at(i);
        a(i, i) = sys.parity_sign(m) * f_value(partition.offset_of(m), param);
    }
    return a;
}

// ---------------------------------------------------------------------------
// POVM
// ---------------------------------------------------------------------------

MeasurabilityPovm build_povm(const Operator& a) {
    if (a.rows() != a.cols() || a.rows() == 0) {
        throw InputError("measurability operator must be square and non-empty");
    }
    const auto d = a.rows();
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            if (r != c && a(r, c) != Complex(0.0)) {
                throw InputError("measurability operator must be diagonal");
            }
        }
        if (!std::isfinite(a(r, r).real()) || a(r, r).imag() != 0.0) {
            throw InputError("measurability operator must have finite real diagonal entries");
        }
        if (std::abs(a(r, r).real()) > 1.0 + kSpectrumSlack) {
            std::ostringstream msg;
            msg << "invalid measurability operator: entry " << r << " = " << a(r, r).real()
                << " lies outside [-1, 1]";
            throw DomainError(msg.str());
        }
    }

    MeasurabilityPovm povm;
    povm.a_ = Operator::Zero(d, d);
    povm.e_plus_ = Operator::Zero(d, d);
    povm.e_minus_ = Operator::Zero(d, d);
    povm.m_plus_ = Operator::Zero(d, d);
    povm.m_minus_ = Operator::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const double x = std::clamp(a(i, i).real(), -1.0, 1.0);
        const double ep = 0.5 * (1.0 + x);
        const double em = 0.5 * (1.0 - x);
        povm.a_(i, i) = x;
        povm.e_plus_(i, i) = ep;
        povm.e_minus_(i, i) = em;
        povm.m_plus_(i, i) = std::sqrt(ep);
        povm.m_minus_(i, i) = std::sqrt(em);
    }
    return povm;
}

MeasurabilityPovm make_povm(const Partition& partition, const MeasurabilityParam& param) {
    MeasurabilityPovm povm = build_povm(build_A(partition, param));
    povm.partition_ = partition;
    povm.param_ = param;
    return povm;
}

// ---------------------------------------------------------------------------
// Neumark dilation
// ---------------------------------------------------------------------------

double NeumarkReport::max_deviation() const noexcept {
    return std::max({isometry_defect, probability_defect, state_defect});
}

Operator neumark_isometry(const MeasurabilityPovm& povm) {
    const int d = povm.dim();
    Operator v = Operator::Zero(2 * d, d);
    for (int row = 0; row < d; ++row) {
        for (int col = 0; col < d; ++col) {
            v(2 * row + 0, col) = povm.M_plus()(row, col);
            v(2 * row + 1, col) = povm.M_minus()(row, col);
        }
    }
    return v;
}

NeumarkReport neumark_verify(const MeasurabilityPovm& povm, const Operator& rho_in) {
    const DensityMatrix rho(rho_in);
    const int d = povm.dim();
    if (rho.dim() != d) {
        throw InputError("density matrix dimension does not match the POVM");
    }
    const Operator v = neumark_isometry(povm);
    const Operator dilated = v * rho.matrix() * v.adjoint();

    NeumarkReport report;
    report.isometry_defect =
        (v.adjoint() * v - Operator::Identity(d, d)).cwiseAbs().maxCoeff();

    for (int outcome = 0; outcome < 2; ++outcome) {
        const int sign = outcome == 0 ? 1 : -1;
        // Reduced system block of (I (x) |s><s|) V rho V^dagger (I (x) |s><s|).
        Operator branch(d, d);
        for (int r = 0; r < d; ++r) {
            for (int c = 0; c < d; ++c) {
                branch(r, c) = dilated(2 * r + outcome, 2 * c + outcome);
            }
        }
        const double p_ancilla = branch.trace().real();
        const double p_povm = trace_product(povm.E(sign), rho.matrix()).real();
        report.probability_defect =
            std::max(report.probability_defect, std::abs(p_ancilla - p_povm));

        const Operator& m = povm.M(sign);
        const Operator direct = m * rho.matrix() * m.adjoint();
        double defect = 0.0;
        if (p_povm > kConditioningThreshold && p_ancilla > kConditioningThreshold) {
            defect = (branch / p_ancilla - direct / p_povm).cwiseAbs().maxCoeff();
        } else {
            defect = (branch - direct).cwiseAbs().maxCoeff();
        }
        report.state_defect = std::max(report.state_defect, defect);
    }
    return report;
}

}  // namespace lgsim
