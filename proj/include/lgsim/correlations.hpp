// Copyright 2026 The lgsim Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file correlations.hpp
 * @brief Two-time correlations of the measurability POVM and the
 *        Leggett-Garg combination K = C12 + C23 + C34 - C14.
 *
 * Evolution between measurements is generated by H = Omega J^2 + omega J_x.
 * On a single spin-j irrep J^2 = j(j+1) I, so the Omega term contributes a
 * global phase only; the gap angle is theta = omega * dt.
 *
 * In C_kl the earlier measurement is performed first and its outcome
 * conditions the later one. Only the two measurements of the pair are made.
 */
#pragma once

#include <array>

#include "lgsim/density.hpp"
#include "lgsim/measurability.hpp"

namespace lgsim {

struct DynamicsParams {
    SpinSystem sys;
    double omega = 1.0;
    double Omega = 0.0;
};

/// exp(-i dt (Omega J^2 + omega J_x)).
[[nodiscard]] Operator evolution_operator(const DynamicsParams& dyn, double dt);

struct PostMeasurement {
    double probability;
    DensityMatrix state;
};

/// p = Tr[E_s rho] and M_s rho M_s^dagger / p. Throws IllPosedError when
/// p <= 1e-14.
[[nodiscard]] PostMeasurement post_state(const DensityMatrix& rho, const MeasurabilityPovm& povm,
                                         int sign);

/// Index 0 is the + outcome, 1 the - outcome.
[[nodiscard]] constexpr int outcome_index(int sign) noexcept { return sign > 0 ? 0 : 1; }

struct CorrelationBreakdown {
    double p_plus = 0.0;
    double p_minus = 0.0;
    /// q[first][second] = q_{second | first}.
    std::array<std::array<double, 2>, 2> q{};
    double C = 0.0;
    /// Largest imaginary part seen among the traces that fed p and q.
    double max_imag = 0.0;

    [[nodiscard]] double p(int sign) const noexcept { return sign > 0 ? p_plus : p_minus; }
    [[nodiscard]] double q_given(int second, int first) const noexcept {
        return q[outcome_index(first)][outcome_index(second)];
    }
};

/**
 * Operational correlation for one ordered pair of measurement times.
 *
 * The POVM is applied to rho at the earlier time; each conditional state is
 * evolved over dt and measured again. C = sum_{s,s'} s s' p_s q_{s'|s}.
 * Propagates IllPosedError from post_state.
 */
[[nodiscard]] CorrelationBreakdown two_time_correlation(const MeasurabilityPovm& povm,
                                                        const DensityMatrix& rho,
                                                        const DynamicsParams& dyn, double dt);

/// Tr[A U(theta) A U(theta)^dagger] / (2j+1): the correlation for a maximally
/// mixed initial state, written without any conditioning.
[[nodiscard]] double correlation_closed_form(const Operator& a, const SpinSystem& sys, double theta);

struct LgiResult {
    /// Gap angles omega*dt for (1,2), (2,3), (3,4).
    std::array<double, 3> thetas{};
    double b = 0.0;
    double C12 = 0.0;
    double C23 = 0.0;
    double C34 = 0.0;
    double C14 = 0.0;
    double K = 0.0;
    bool violated = false;

    [[nodiscard]] double theta() const noexcept { return thetas[0]; }
};

/// violated <=> |K| > 2, strictly.
[[nodiscard]] constexpr bool violates_lgi(double k) noexcept { return k > 2.0 || k < -2.0; }

/**
 * K_LG from three consecutive gaps. rho0 is the state at t1; the state at
 * later times is its free evolution. C14 uses the total gap. Each pair is a
 * separate two-measurement protocol.
 */
[[nodiscard]] LgiResult k_lg(const MeasurabilityPovm& povm, const DensityMatrix& rho0,
                             const DynamicsParams& dyn, const std::array<double, 3>& gaps);

/// k_lg with three equal gaps of angle theta (requires omega != 0).
[[nodiscard]] LgiResult k_lg_equal_gaps(const MeasurabilityPovm& povm, const DensityMatrix& rho0,
                                        const DynamicsParams& dyn, double theta);

/**
 * Control protocol: the POVM is applied at all four times in every run, the
 * joint distribution of the four outcomes is accumulated, and every C_kl is
 * read off that one distribution. The result always satisfies |K| <= 2.
 */
[[nodiscard]] LgiResult k_lg_four_measurements(const MeasurabilityPovm& povm,
                                               const DensityMatrix& rho0,
                                               const DynamicsParams& dyn,
                                               const std::array<double, 3>& gaps);

}  // namespace lgsim
