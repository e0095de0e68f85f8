// Copyright 2026 The lgsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "lgsim/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>

#include "lgsim/errors.hpp"

namespace lgsim {

PartitionChoice PartitionChoice::parse(std::string_view text) {
    if (text == "edge5_2") {
        return {Kind::Edge52, 1};
    }
    if (text == "edge") {
        return {Kind::Edge, 1};
    }
    constexpr std::string_view prefix = "uniform:";
    if (text.starts_with(prefix)) {
        const std::string_view rest = text.substr(prefix.size());
        int size = 0;
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), size);
        if (!rest.empty() && ec == std::errc{} && ptr == rest.data() + rest.size()) {
            return {Kind::Uniform, size};
        }
    }
    throw InputError("malformed partition '" + std::string(text) +
                     "': expected edge5_2, edge or uniform:<block_size>");
}

Partition PartitionChoice::build(const SpinSystem& sys) const {
    switch (kind) {
        case Kind::Edge52:
            if (sys.j() != HalfInt{5}) {
                throw DomainError("partition edge5_2 requires j = 5/2, got j = " + sys.j().str());
            }
            return edge_partition_5_2();
        case Kind::Edge:
            return edge_partition(sys);
        case Kind::Uniform:
            return uniform_partition(sys, block_size);
    }
    throw InputError("unknown partition kind");
}

std::string PartitionChoice::str() const {
    switch (kind) {
        case Kind::Edge52:
            return "edge5_2";
        case Kind::Edge:
            return "edge";
        case Kind::Uniform:
            return "uniform:" + std::to_string(block_size);
    }
    return "?";
}

namespace {

void require_ascending(const std::vector<double>& grid, const char* name) {
    if (grid.empty()) {
        throw InputError(std::string(name) + " grid is empty");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i])) {
            throw InputError(std::string(name) + " grid has a non-finite value");
        }
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw InputError(std::string(name) + " grid must be strictly ascending");
        }
    }
}

DynamicsParams dynamics_for(const SweepSpec& spec) {
    return DynamicsParams{SpinSystem(spec.j), spec.omega, spec.Omega};
}

}  // namespace

void SweepSpec::validate() const {
    require_ascending(theta_over_pi, "theta_over_pi");
    require_ascending(b, "b");
    if (b.front() < 0.0 || b.back() > 1.0) {
        throw DomainError("b grid must lie within [0, 1]");
    }
    if (!std::isfinite(omega) || !std::isfinite(Omega)) {
        throw InputError("omega and Omega must be finite");
    }
    if (omega == 0.0) {
        throw DomainError("omega = 0 freezes the dynamics; gap angles cannot be realized");
    }
    (void)partition.build(SpinSystem(j));
}

SweepRow evaluate_point(const Partition& partition, const DynamicsParams& dyn, double theta_over_pi,
                        double b) {
    const MeasurabilityPovm povm = make_povm(partition, MeasurabilityParam::from_b(b));
    const DensityMatrix rho = maximally_mixed(partition.system());
    const double dt = theta_over_pi * std::numbers::pi / dyn.omega;

    SweepRow row;
    row.theta_over_pi = theta_over_pi;
    row.b = b;
    row.C_theta = two_time_correlation(povm, rho, dyn, dt).C;
    row.C_3theta = two_time_correlation(povm, rho, dyn, 3.0 * dt).C;
    row.K = 3.0 * row.C_theta - row.C_3theta;
    row.violated = violates_lgi(row.K);
    return row;
}

std::vector<SweepRow> sweep_k_vs_b(const SweepSpec& spec, int jobs) {
    spec.validate();
    const Partition partition = spec.partition.build(SpinSystem(spec.j));
    const DynamicsParams dyn = dynamics_for(spec);

    const std::size_t nb = spec.b.size();
    const std::size_t total = spec.theta_over_pi.size() * nb;
    std::vector<SweepRow> rows(total);

    auto compute = [&](std::size_t idx) {
        rows[idx] = evaluate_point(partition, dyn, spec.theta_over_pi[idx / nb], spec.b[idx % nb]);
    };

    const std::size_t workers = std::clamp<std::size_t>(jobs < 1 ? 1 : jobs, 1, total);
    if (workers == 1) {
        for (std::size_t idx = 0; idx < total; ++idx) {
            compute(idx);
        }
        return rows;
    }

    // Strided ownership of row slots; each worker writes only its own indices.
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t idx = w; idx < total; idx += workers) {
                    compute(idx);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return rows;
}

std::vector<FSigmaRow> sweep_f_vs_sigma(const std::vector<double>& sigmas) {
    std::vector<FSigmaRow> rows;
    rows.reserve(sigmas.size());
    for (const double sigma : sigmas) {
        const MeasurabilityParam param = MeasurabilityParam::from_sigma(sigma);
        rows.push_back({sigma, f_value(0, param), f_value(1, param), f_value(2, param)});
    }
    return rows;
}

std::vector<double> linear_grid(double lo, double hi, double step) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !std::isfinite(step) || step <= 0.0 || hi < lo) {
        throw InputError("grid needs finite lo <= hi and a positive step");
    }
    const double span = (hi - lo) / step;
    const auto n = static_cast<long>(std::llround(span));
    if (std::abs(span - static_cast<double>(n)) > 1e-9 * std::max(1.0, span)) {
        throw InputError("grid step does not divide the interval");
    }
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(n) + 1);
    for (long i = 0; i <= n; ++i) {
        grid.push_back(i == n ? hi : lo + static_cast<double>(i) * step);
    }
    return grid;
}

ThresholdReport violation_threshold(const SweepSpec& spec, double scan_step) {
    if (spec.theta_over_pi.size() != 1) {
        throw InputError("threshold search takes exactly one theta_over_pi value");
    }
    SweepSpec checked = spec;
    checked.b = {0.0, 1.0};
    checked.validate();

    const Partition partition = spec.partition.build(SpinSystem(spec.j));
    const DynamicsParams dyn = dynamics_for(spec);
    const double t = spec.theta_over_pi.front();
    auto violated_at = [&](double b) { return evaluate_point(partition, dyn, t, b).violated; };

    const std::vector<double> grid = linear_grid(0.0, 1.0, scan_step);
    std::vector<bool> flags;
    flags.reserve(grid.size());
    for (const double b : grid) {
        flags.push_back(violated_at(b));
    }

    ThresholdReport report;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (flags[i] == flags[i - 1]) {
            continue;
        }
        double lo = grid[i - 1];
        double hi = grid[i];
        report.brackets.emplace_back(lo, hi);
        const bool lo_flag = flags[i - 1];
        while (hi - lo > kThresholdTolerance) {
            const double mid = 0.5 * (lo + hi);
            (violated_at(mid) == lo_flag ? lo : hi) = mid;
        }
        report.roots.push_back(0.5 * (lo + hi));
    }
    if (!report.roots.empty()) {
        report.kind = ThresholdReport::Kind::Crossing;
    } else {
        report.kind = flags.front() ? ThresholdReport::Kind::AlwaysViolated
                                    : ThresholdReport::Kind::NoViolation;
    }
    return report;
}

}  // namespace lgsim
