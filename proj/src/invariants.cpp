// Copyright 2026 The lgsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "lgsim/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lgsim/correlations.hpp"
#include "lgsim/density.hpp"
#include "lgsim/measurability.hpp"
#include "lgsim/sweep.hpp"

namespace lgsim {

namespace {

constexpr double kPi = std::numbers::pi;

const std::vector<int> kTwiceJ{1, 2, 3, 5, 7};
const std::vector<double> kBValues{0.0, 0.25, 0.5, 0.75, 1.0};
const std::vector<double> kFigureThetas{0.06, 0.34, 0.50, 0.95};

std::vector<Partition> partitions_for(const SpinSystem& sys) {
    std::vector<Partition> out;
    for (int size = 1; size <= sys.dim(); size += 2) {
        if (sys.dim() % size == 0) {
            out.push_back(uniform_partition(sys, size));
        }
    }
    if (sys.dim() % 2 == 0) {
        out.push_back(edge_partition(sys));
    }
    return out;
}

std::vector<double> theta_grid(int n) {
    std::vector<double> thetas;
    for (int k = 0; k < n; ++k) {
        thetas.push_back(-2.0 * kPi + 4.0 * kPi * (k + 0.5) / n);
    }
    return thetas;
}

CheckResult make(std::string name, double worst, double tol) {
    return {std::move(name), worst <= tol, worst, tol};
}

double min_eigenvalue(const Operator& x) {
    Eigen::SelfAdjointEigenSolver<Operator> solver(0.5 * (x + x.adjoint()), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

}  // namespace

Operator random_mixed_state(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Operator g(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            g(r, c) = Complex(gauss(rng), gauss(rng));
        }
    }
    Operator rho = g * g.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
}

Operator random_pure_state(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Eigen::VectorXcd psi(dim);
    for (int i = 0; i < dim; ++i) {
        psi(i) = Complex(gauss(rng), gauss(rng));
    }
    psi.normalize();
    Operator rho = psi * psi.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
}

std::vector<CheckResult> run_invariant_suite(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(-4.0 * kPi, 4.0 * kPi);
    std::vector<CheckResult> results;

    // Spin algebra and rotations.
    double commutator = 0.0;
    double spectrum = 0.0;
    double unitarity = 0.0;
    double group = 0.0;
    double parity_flip = 0.0;
    for (const int tj : kTwiceJ) {
        const SpinSystem sys{HalfInt{tj}};
        const Operator jx = jx_matrix(sys);
        const Operator jy = jy_matrix(sys);
        const Operator jz = jz_matrix(sys);
        commutator = std::max(commutator,
                              (jx * jy - jy * jx - Complex(0, 1) * jz).cwiseAbs().maxCoeff());
        Eigen::SelfAdjointEigenSolver<Operator> solver(jx, Eigen::EigenvaluesOnly);
        spectrum = std::max(spectrum, (solver.eigenvalues() - jx_spectrum(sys)).cwiseAbs().maxCoeff());
        const Operator parity = parity_matrix(sys);
        for (int trial = 0; trial < 20; ++trial) {
            const double t1 = angle(rng);
            const double t2 = angle(rng);
            const Operator u1 = rotation_x(sys, t1);
            const Operator u2 = rotation_x(sys, t2);
            unitarity = std::max(unitarity, unitarity_defect(u1));
            group = std::max(group, (u1 * u2 - rotation_x(sys, t1 + t2)).cwiseAbs().maxCoeff());
            parity_flip = std::max(
                parity_flip, (parity * u1 * parity - rotation_x(sys, -t1)).cwiseAbs().maxCoeff());
        }
    }
    results.push_back(make("su2 commutator [Jx,Jy] = iJz", commutator, 1e-12));
    results.push_back(make("Jx spectrum is {-j..j}", spectrum, 1e-10));
    results.push_back(make("rotation unitarity", unitarity, 1e-12));
    results.push_back(make("rotation group property", group, 1e-11));
    results.push_back(make("parity conjugation flips theta", parity_flip, 1e-11));

    // POVM structure.
    double completeness = 0.0;
    double psd = 0.0;
    double a_range = 0.0;
    double parity_limit = 0.0;
    double neumark = 0.0;
    double oracle = 0.0;
    double four_bound = 0.0;
    double imag = 0.0;
    for (const int tj : kTwiceJ) {
        const SpinSystem sys{HalfInt{tj}};
        const DensityMatrix mixed = maximally_mixed(sys);
        const DynamicsParams dyn{sys, 1.0, 0.0};
        for (const Partition& part : partitions_for(sys)) {
            for (const double b : kBValues) {
                const MeasurabilityPovm povm = make_povm(part, MeasurabilityParam::from_b(b));
                const int d = sys.dim();
                completeness = std::max(
                    completeness,
                    (povm.E_plus() + povm.E_minus() - Operator::Identity(d, d)).cwiseAbs().maxCoeff());
                psd = std::max({psd, -min_eigenvalue(povm.E_plus()), -min_eigenvalue(povm.E_minus())});
                a_range = std::max(a_range, povm.A().diagonal().cwiseAbs().maxCoeff() - 1.0);
                if (b == 1.0) {
                    parity_limit = std::max(parity_limit,
                                            (povm.A() - parity_matrix(sys)).cwiseAbs().maxCoeff());
                }
                const Operator state = random_pure_state(d, rng);
                neumark = std::max(neumark, neumark_verify(povm, state).max_deviation());

                for (const double theta : theta_grid(50)) {
                    const CorrelationBreakdown op = two_time_correlation(povm, mixed, dyn, theta);
                    imag = std::max(imag, op.max_imag);
                    oracle = std::max(
                        oracle, std::abs(op.C - correlation_closed_form(povm.A(), sys, theta)));
                    const LgiResult four =
                        k_lg_four_measurements(povm, mixed, dyn, {theta, theta, theta});
                    four_bound = std::max(four_bound, std::abs(four.K) - 2.0);
                }
            }
        }
    }
    results.push_back(make("POVM completeness E+ + E- = I", completeness, 1e-12));
    results.push_back(make("POVM elements positive semidefinite", psd, 1e-12));
    results.push_back(make("spectrum(A) within [-1,1]", std::max(a_range, 0.0), 1e-12));
    results.push_back(make("b = 1 gives the parity operator", parity_limit, 0.0));
    results.push_back(make("Neumark dilation reproduces the POVM", neumark, 1e-10));
    results.push_back(make("operational C matches closed form", oracle, 1e-10));
    results.push_back(make("trace imaginary parts vanish", imag, 1e-12));
    results.push_back(make("four-measurement control obeys |K| <= 2", std::max(four_bound, 0.0), 1e-10));

    // Omega only contributes a global phase.
    {
        const Partition part = edge_partition_5_2();
        const SpinSystem sys = part.system();
        const DensityMatrix mixed = maximally_mixed(sys);
        double spread = 0.0;
        for (const double b : kBValues) {
            const MeasurabilityPovm povm = make_povm(part, MeasurabilityParam::from_b(b));
            for (const double t : kFigureThetas) {
                const double base = k_lg_equal_gaps(povm, mixed, {sys, 1.0, 0.0}, t * kPi).K;
                for (const double big_omega : {1.0, 17.3}) {
                    const double k = k_lg_equal_gaps(povm, mixed, {sys, 1.0, big_omega}, t * kPi).K;
                    spread = std::max(spread, std::abs(k - base));
                }
            }
        }
        results.push_back(make("K independent of Omega", spread, 1e-12));
    }

    // Edge partition: Tr A = 0 so both outcomes are equally likely on I/6.
    {
        const Partition part = edge_partition_5_2();
        const DensityMatrix mixed = maximally_mixed(part.system());
        double worst = 0.0;
        for (int k = 0; k <= 100; ++k) {
            const MeasurabilityPovm povm = make_povm(part, MeasurabilityParam::from_b(k / 100.0));
            for (const int s : {1, -1}) {
                worst = std::max(worst, std::abs(post_state(mixed, povm, s).probability - 0.5));
            }
        }
        results.push_back(make("edge partition p = 1/2 on the mixed state", worst, 1e-12));
    }

    // Figure curves: monotone |K(b)| on the violating curves, maximum at b = 1.
    {
        SweepSpec spec;
        spec.theta_over_pi = kFigureThetas;
        spec.b = linear_grid(0.0, 1.0, 0.01);
        const std::vector<SweepRow> rows = sweep_k_vs_b(spec);
        const std::size_t nb = spec.b.size();
        double mono = 0.0;
        double argmax = 0.0;
        for (std::size_t t = 0; t < spec.theta_over_pi.size(); ++t) {
            const double th = spec.theta_over_pi[t];
            double best = 0.0;
            for (std::size_t i = 0; i < nb; ++i) {
                const double k = std::abs(rows[t * nb + i].K);
                best = std::max(best, k);
                if (i > 0 && (th == 0.06 || th == 0.95)) {
                    mono = std::max(mono, std::abs(rows[t * nb + i - 1].K) - k);
                }
            }
            argmax = std::max(argmax, best - std::abs(rows[t * nb + nb - 1].K));
        }
        results.push_back(make("|K| nondecreasing in b on violating curves", std::max(mono, 0.0), 1e-9));
        results.push_back(make("max |K| attained at b = 1", argmax, 1e-12));
    }

    return results;
}

}  // namespace lgsim
