// Copyright 2026 The lgsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "lgsim/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "lgsim/errors.hpp"

namespace lgsim {

namespace {

void require_dim(const MeasurabilityPovm& povm, const DensityMatrix& rho, const DynamicsParams& dyn) {
    if (povm.dim() != rho.dim() || povm.dim() != dyn.sys.dim()) {
        throw InputError("POVM, state and dynamics dimensions disagree");
    }
}

double povm_b(const MeasurabilityPovm& povm) {
    return povm.param() ? povm.param()->b() : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

Operator evolution_operator(const DynamicsParams& dyn, double dt) {
    if (!std::isfinite(dt) || !std::isfinite(dyn.omega) || !std::isfinite(dyn.Omega)) {
        throw InputError("evolution parameters must be finite");
    }
    const double j = dyn.sys.j().value();
    const Complex global = std::polar(1.0, -dyn.Omega * j * (j + 1.0) * dt);
    return global * rotation_x(dyn.sys, dyn.omega * dt);
}

PostMeasurement post_state(const DensityMatrix& rho, const MeasurabilityPovm& povm, int sign) {
    if (rho.dim() != povm.dim()) {
        throw InputError("density matrix dimension does not match the POVM");
    }
    const double p = trace_product(povm.E(sign), rho.matrix()).real();
    if (!(p > kConditioningThreshold)) {
        std::ostringstream msg;
        msg << "outcome " << (sign > 0 ? '+' : '-') << " has probability " << p
            << ", conditional state undefined";
        throw IllPosedError(msg.str(), p);
    }
    const Operator& m = povm.M(sign);
    Operator post = m * rho.matrix() * m.adjoint() / p;
    post = 0.5 * (post + post.adjoint());
    return {p, DensityMatrix(std::move(post))};
}

CorrelationBreakdown two_time_correlation(const MeasurabilityPovm& povm, const DensityMatrix& rho,
                                          const DynamicsParams& dyn, double dt) {
    require_dim(povm, rho, dyn);
    const Operator u = evolution_operator(dyn, dt);

    CorrelationBreakdown out;
    for (const int first : {1, -1}) {
        const Complex p_raw = trace_product(povm.E(first), rho.matrix());
        out.max_imag = std::max(out.max_imag, std::abs(p_raw.imag()));

        const PostMeasurement post = post_state(rho, povm, first);
        (first > 0 ? out.p_plus : out.p_minus) = post.probability;

        const DensityMatrix later = post.state.evolved(u);
        for (const int second : {1, -1}) {
            const Complex q = trace_product(povm.E(second), later.matrix());
            out.max_imag = std::max(out.max_imag, std::abs(q.imag()));
            out.q[outcome_index(first)][outcome_index(second)] = q.real();
        }
    }
    for (const int first : {1, -1}) {
        for (const int second : {1, -1}) {
            out.C += first * second * out.p(first) * out.q_given(second, first);
        }
    }
    return out;
}

double correlation_closed_form(const Operator& a, const SpinSystem& sys, double theta) {
    if (a.rows() != sys.dim() || a.cols() != sys.dim()) {
        throw InputError("operator dimension does not match the spin system");
    }
    const Operator u = rotation_x(sys, theta);
    const Operator evolved = u * a * u.adjoint();
    return trace_product(a, evolved).real() / static_cast<double>(sys.dim());
}

LgiResult k_lg(const MeasurabilityPovm& povm, const DensityMatrix& rho0, const DynamicsParams& dyn,
               const std::array<double, 3>& gaps) {
    require_dim(povm, rho0, dyn);
    for (const double g : gaps) {
        if (!std::isfinite(g)) {
            throw InputError("measurement gaps must be finite");
        }
    }

    std::array<DensityMatrix, 3> at_time{rho0, rho0, rho0};
    at_time[1] = rho0.evolved(evolution_operator(dyn, gaps[0]));
    at_time[2] = at_time[1].evolved(evolution_operator(dyn, gaps[1]));

    LgiResult r;
    for (int k = 0; k < 3; ++k) {
        r.thetas[k] = dyn.omega * gaps[k];
    }
    r.b = povm_b(povm);
    r.C12 = two_time_correlation(povm, at_time[0], dyn, gaps[0]).C;
    r.C23 = two_time_correlation(povm, at_time[1], dyn, gaps[1]).C;
    r.C34 = two_time_correlation(povm, at_time[2], dyn, gaps[2]).C;
    r.C14 = two_time_correlation(povm, at_time[0], dyn, gaps[0] + gaps[1] + gaps[2]).C;
    r.K = r.C12 + r.C23 + r.C34 - r.C14;
    r.violated = violates_lgi(r.K);
    return r;
}

LgiResult k_lg_equal_gaps(const MeasurabilityPovm& povm, const DensityMatrix& rho0,
                          const DynamicsParams& dyn, double theta) {
    if (dyn.omega == 0.0) {
        throw DomainError("a gap angle needs omega != 0");
    }
    const double dt = theta / dyn.omega;
    return k_lg(povm, rho0, dyn, {dt, dt, dt});
}

LgiResult k_lg_four_measurements(const MeasurabilityPovm& povm, const DensityMatrix& rho0,
                                 const DynamicsParams& dyn, const std::array<double, 3>& gaps) {
    require_dim(povm, rho0, dyn);
    std::array<Operator, 3> u;
    for (int k = 0; k < 3; ++k) {
        u[k] = evolution_operator(dyn, gaps[k]);
    }

    // Unnormalized branch states keyed by the outcome bits so far; bit set = '-'.
    std::vector<Operator> branches{rho0.matrix()};
    for (int step = 0; step < 4; ++step) {
        std::vector<Operator> next;
        next.reserve(branches.size() * 2);
        for (const Operator& branch : branches) {
            for (const int sign : {1, -1}) {
                const Operator& m = povm.M(sign);
                Operator measured = m * branch * m.adjoint();
                if (step < 3) {
                    measured = u[step] * measured * u[step].adjoint();
                }
                next.push_back(std::move(measured));
            }
        }
        branches = std::move(next);
    }

    std::array<double, 16> joint{};
    for (std::size_t k = 0; k < branches.size(); ++k) {
        joint[k] = branches[k].trace().real();
    }
    // Branch index bits, most significant first, are the outcomes at t1..t4.
    auto outcome = [](std::size_t index, int time) {
        return ((index >> (3 - time)) & 1U) ? -1 : 1;
    };
    auto correlation = [&](int k, int l) {
        double c = 0.0;
        for (std::size_t idx = 0; idx < joint.size(); ++idx) {
            c += outcome(idx, k) * outcome(idx, l) * joint[idx];
        }
        return c;
    };

    LgiResult r;
    for (int k = 0; k < 3; ++k) {
        r.thetas[k] = dyn.omega * gaps[k];
    }
    r.b = povm_b(povm);
    r.C12 = correlation(0, 1);
    r.C23 = correlation(1, 2);
    r.C34 = correlation(2, 3);
    r.C14 = correlation(0, 3);
    r.K = r.C12 + r.C23 + r.C34 - r.C14;
    r.violated = violates_lgi(r.K);
    return r;
}

}  // namespace lgsim
