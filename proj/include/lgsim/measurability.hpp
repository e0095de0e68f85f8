// Copyright 2026 The lgsim Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file measurability.hpp
 * @brief Resolution partitions, the measurability operator A and the
 *        two-outcome POVM E_pm = (I pm A)/2 built from it.
 *
 * A partition groups the m levels into blocks; each block has an optimally
 * measured level mu. Within a block the level m carries weight
 * f = b^((m - mu)^2), where b = exp(-1/(2 sigma^2)) is the measurability.
 * A is diagonal with entries (-1)^(j-m) f.
 */
#pragma once

#include <optional>
#include <vector>

#include "lgsim/half_int.hpp"
#include "lgsim/spin_ops.hpp"

namespace lgsim {

/// Outcome probabilities at or below this are treated as impossible.
inline constexpr double kConditioningThreshold = 1e-14;

struct PartitionBlock {
    HalfInt mu;
    std::vector<HalfInt> members;
};

class Partition {
public:
    /// Validates the blocks: members form a disjoint cover of {-j..j} and
    /// every mu is a member of its own block. Throws InputError otherwise.
    Partition(SpinSystem sys, std::vector<PartitionBlock> blocks);

    [[nodiscard]] const SpinSystem& system() const noexcept { return sys_; }
    [[nodiscard]] const std::vector<PartitionBlock>& blocks() const noexcept { return blocks_; }

    /// Optimal level mu of the block containing m.
    [[nodiscard]] HalfInt mu_of(HalfInt m) const;

    /// m - mu(m) as an integer.
    [[nodiscard]] int offset_of(HalfInt m) const;

private:
    SpinSystem sys_;
    std::vector<PartitionBlock> blocks_;
    std::vector<int> block_of_index_;
};

/// Consecutive blocks of block_size levels (descending m), mu at each block's
/// centre. block_size must be odd and divide 2j+1.
[[nodiscard]] Partition uniform_partition(const SpinSystem& sys, int block_size);

/// Two blocks for an even-dimensional system: the upper half of the levels
/// with mu = +j and the lower half with mu = -j.
[[nodiscard]] Partition edge_partition(const SpinSystem& sys);

/// j = 5/2 with blocks (mu=+5/2: {5/2, 3/2, 1/2}) and (mu=-5/2: {-1/2, -3/2, -5/2}).
[[nodiscard]] Partition edge_partition_5_2();

/// Measurability. b is canonical; sigma is kept when the value was given that way.
class MeasurabilityParam {
public:
    /// b in [0, 1]; DomainError otherwise, InputError if not finite.
    static MeasurabilityParam from_b(double b);

    /// sigma > 0 or +inf (b = 1); DomainError otherwise.
    static MeasurabilityParam from_sigma(double sigma);

    [[nodiscard]] double b() const noexcept { return b_; }
    [[nodiscard]] std::optional<double> sigma() const noexcept { return sigma_; }

private:
    MeasurabilityParam(double b, std::optional<double> sigma) : b_(b), sigma_(sigma) {}

    double b_;
    std::optional<double> sigma_;
};

/// exp(-1/(2 sigma^2)); sigma = +inf maps to 1.
[[nodiscard]] double b_from_sigma(double sigma);

/// f = b^(offset^2), with 0^0 = 1.
[[nodiscard]] double f_value(int offset, const MeasurabilityParam& param);

/// Diagonal A with entries (-1)^(j-m) f(m - mu(m)).
[[nodiscard]] Operator build_A(const Partition& partition, const MeasurabilityParam& param);

/// Two-outcome POVM. Index 0 is the + outcome, index 1 the - outcome.
class MeasurabilityPovm {
public:
    [[nodiscard]] const Operator& A() const noexcept { return a_; }
    [[nodiscard]] const Operator& E(int sign) const { return sign > 0 ? e_plus_ : e_minus_; }
    [[nodiscard]] const Operator& M(int sign) const { return sign > 0 ? m_plus_ : m_minus_; }
    [[nodiscard]] const Operator& E_plus() const noexcept { return e_plus_; }
    [[nodiscard]] const Operator& E_minus() const noexcept { return e_minus_; }
    [[nodiscard]] const Operator& M_plus() const noexcept { return m_plus_; }
    [[nodiscard]] const Operator& M_minus() const noexcept { return m_minus_; }
    [[nodiscard]] int dim() const noexcept { return static_cast<int>(a_.rows()); }

    /// Set when the POVM came from make_povm.
    [[nodiscard]] const std::optional<Partition>& partition() const noexcept { return partition_; }
    [[nodiscard]] const std::optional<MeasurabilityParam>& param() const noexcept { return param_; }

private:
    friend MeasurabilityPovm build_povm(const Operator& a);
    friend MeasurabilityPovm make_povm(const Partition& partition, const MeasurabilityParam& param);

    MeasurabilityPovm() = default;

    Operator a_;
    Operator e_plus_;
    Operator e_minus_;
    Operator m_plus_;
    Operator m_minus_;
    std::optional<Partition> partition_;
    std::optional<MeasurabilityParam> param_;
};

/**
 * E_pm = (I pm A)/2 and M_pm = sqrt(E_pm) (elementwise on the diagonal).
 *
 * A must be square, diagonal with real entries and |A_ii| <= 1 + 1e-12;
 * entries within the slack are clamped to [-1, 1]. Throws DomainError for an
 * entry outside that range, InputError for a non-diagonal or complex A.
 */
[[nodiscard]] MeasurabilityPovm build_povm(const Operator& a);

/// build_povm(build_A(partition, param)) with the provenance recorded.
[[nodiscard]] MeasurabilityPovm make_povm(const Partition& partition, const MeasurabilityParam& param);

struct NeumarkReport {
    double isometry_defect = 0.0;     ///< max |V^dagger V - I|
    double probability_defect = 0.0;  ///< max_s |Tr[P_s V rho V^dagger] - Tr[E_s rho]|
    double state_defect = 0.0;        ///< max over s of the entrywise conditional-state mismatch
    [[nodiscard]] double max_deviation() const noexcept;
};

/**
 * Realizes the POVM as a projective ancilla measurement.
 *
 * V = M_+ (x) |+> + M_- (x) |->, system index major, ancilla minor. Compares
 * the ancilla outcome probabilities and the reduced conditional system states
 * of V rho V^dagger against Tr[E_s rho] and M_s rho M_s^dagger / p_s.
 * Unnormalized states are compared for outcomes with p_s below the
 * conditioning threshold. Throws InputError when rho is not a valid density
 * operator.
 */
[[nodiscard]] NeumarkReport neumark_verify(const MeasurabilityPovm& povm, const Operator& rho);

/// The dilation isometry V (2d x d).
[[nodiscard]] Operator neumark_isometry(const MeasurabilityPovm& povm);

}  // namespace lgsim
