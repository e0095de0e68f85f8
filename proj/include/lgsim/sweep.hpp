// Copyright 2026 The lgsim Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file sweep.hpp
 * @brief K_LG scans over measurability b and gap angle theta, the f-versus-sigma
 *        table, and the search for the b at which |K| crosses 2.
 *
 * All sweeps start from the maximally mixed state and use equal gaps, so
 * K = 3 C(theta) - C(3 theta).
 */
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lgsim/correlations.hpp"
#include "lgsim/half_int.hpp"
#include "lgsim/measurability.hpp"

namespace lgsim {

/// Which partition family to build for a given j.
struct PartitionChoice {
    enum class Kind { Edge52, Edge, Uniform };

    Kind kind = Kind::Edge52;
    int block_size = 1;  ///< Uniform only.

    /// "edge5_2", "edge" or "uniform:<block_size>". Throws InputError.
    static PartitionChoice parse(std::string_view text);

    [[nodiscard]] Partition build(const SpinSystem& sys) const;
    [[nodiscard]] std::string str() const;
};

struct SweepSpec {
    HalfInt j{5};
    PartitionChoice partition;
    std::vector<double> theta_over_pi;
    std::vector<double> b;
    double omega = 1.0;
    double Omega = 0.0;

    /// Throws InputError/DomainError when a grid is empty, unsorted, or out of
    /// domain, or when the partition does not fit j.
    void validate() const;
};

struct SweepRow {
    double theta_over_pi = 0.0;
    double b = 0.0;
    double C_theta = 0.0;
    double C_3theta = 0.0;
    double K = 0.0;
    bool violated = false;
};

/// Rows for theta_over_pi x b, theta-major then b ascending. jobs > 1
/// evaluates rows on worker threads; the result does not depend on jobs.
[[nodiscard]] std::vector<SweepRow> sweep_k_vs_b(const SweepSpec& spec, int jobs = 1);

struct FSigmaRow {
    double sigma = 0.0;
    double a = 1.0;
    double b = 0.0;
    double c = 0.0;
};

/// a = f(0) = 1, b = f(1), c = f(2) = b^4 for each sigma (> 0).
[[nodiscard]] std::vector<FSigmaRow> sweep_f_vs_sigma(const std::vector<double>& sigmas);

/// Evenly spaced grid lo, lo+step, ..., hi built from an integer count so that
/// the endpoints are exact.
[[nodiscard]] std::vector<double> linear_grid(double lo, double hi, double step);

struct ThresholdReport {
    enum class Kind { NoViolation, AlwaysViolated, Crossing };

    Kind kind = Kind::NoViolation;
    /// One bisection root per bracket, ascending.
    std::vector<double> roots;
    /// Scan-grid brackets [lo, hi] in which the violation flag flips.
    std::vector<std::pair<double, double>> brackets;

    /// The root when exactly one crossing exists.
    [[nodiscard]] std::optional<double> b_star() const {
        return roots.size() == 1 ? std::optional<double>(roots.front()) : std::nullopt;
    }
};

inline constexpr double kThresholdTolerance = 1e-8;

/**
 * Scans b over [0, 1] (step scan_step), records every interval where
 * |K(b)| > 2 switches, and bisects each one down to kThresholdTolerance.
 * The b grid in spec is ignored; theta_over_pi must hold exactly one value.
 */
[[nodiscard]] ThresholdReport violation_threshold(const SweepSpec& spec, double scan_step = 0.01);

/// K(b) at one equal-gap angle, maximally mixed start.
[[nodiscard]] SweepRow evaluate_point(const Partition& partition, const DynamicsParams& dyn,
                                      double theta_over_pi, double b);

}  // namespace lgsim
