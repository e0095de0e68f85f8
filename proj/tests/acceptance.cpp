// Copyright 2026 The lgsim Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "lgsim/correlations.hpp"
#include "lgsim/invariants.hpp"
#include "lgsim/sweep.hpp"
#include "oracles.hpp"

using namespace lgsim;

namespace {

constexpr double kPi = std::numbers::pi;

struct Verdict {
    bool passed;
    std::string detail;
};

std::string fmt(double x) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

std::vector<Partition> both_families(const SpinSystem& sys) {
    std::vector<Partition> out;
    for (int size = 1; size <= sys.dim(); size += 2) {
        if (sys.dim() % size == 0) out.push_back(uniform_partition(sys, size));
    }
    if (sys.dim() % 2 == 0) out.push_back(edge_partition(sys));
    return out;
}

const std::vector<int> kTwiceJ{1, 2, 3, 5, 7};
const std::vector<double> kBGrid{0.0, 0.25, 0.5, 0.75, 1.0};

std::vector<double> theta_grid() {
    std::vector<double> t;
    for (int k = 0; k < 50; ++k) t.push_back(-2 * kPi + 4 * kPi * (k + 0.5) / 50);
    return t;
}

// 1. Qubit parity benchmark.
Verdict qubit_benchmark() {
    const SpinSystem sys{HalfInt{1}};
    const auto povm = make_povm(uniform_partition(sys, 1), MeasurabilityParam::from_b(1.0));
    const DensityMatrix rho = maximally_mixed(sys);
    double best = -10;
    double arg = 0;
    for (int k = 0; k <= 1000; ++k) {
        const double theta = k * kPi / 1000;
        const double kv = k_lg_equal_gaps(povm, rho, {sys, 1.0, 0.0}, theta).K;
        if (kv > best) {
            best = kv;
            arg = theta;
        }
    }
    const double err = std::abs(best - 2 * std::sqrt(2.0));
    const bool ok = err <= 1e-6 && std::abs(arg - kPi / 4) <= kPi / 1000 + 1e-15;
    return {ok, "max K = " + std::to_string(best) + " at theta/pi = " + std::to_string(arg / kPi) +
                    ", |K - 2sqrt2| = " + fmt(err)};
}

// 2. j = 5/2, b = 1 endpoints.
Verdict parity_endpoints() {
    const SpinSystem sys{HalfInt{5}};
    const auto povm = make_povm(edge_partition_5_2(), MeasurabilityParam::from_b(1.0));
    const std::vector<std::pair<double, double>> expected{
        {0.06, 2.491754}, {0.34, 1.048636}, {0.50, 0.0}, {0.95, -2.472357}};
    double worst = 0.0;
    std::string detail;
    for (const auto& [t, k_expected] : expected) {
        const double k = k_lg_equal_gaps(povm, maximally_mixed(sys), {sys, 1.0, 0.0}, t * kPi).K;
        worst = std::max({worst, std::abs(k - oracle::parity_k(5, t * kPi)), std::abs(k - k_expected)});
        detail += "K(" + fmt(t) + "pi)=" + std::to_string(k) + " ";
    }
    return {worst <= 1e-6, detail + "worst dev " + fmt(worst)};
}

// 3. Dotted-line classification at theta = 0.06 pi.
Verdict dotted_lines() {
    const Partition part = edge_partition_5_2();
    const DynamicsParams dyn{part.system(), 1.0, 0.0};
    const double k98 = evaluate_point(part, dyn, 0.06, 0.98).K;
    const double k61 = evaluate_point(part, dyn, 0.06, 0.61).K;
    const double k008 = evaluate_point(part, dyn, 0.06, 0.008).K;
    const bool ok = k98 > 2 && k61 <= 2 && k008 <= 2;
    return {ok, "K(0.98)=" + std::to_string(k98) + " K(0.61)=" + std::to_string(k61) +
                    " K(0.008)=" + std::to_string(k008)};
}

// 4. Monotonicity and argmax at b = 1.
Verdict monotonicity() {
    SweepSpec spec;
    spec.theta_over_pi = {0.06, 0.34, 0.50, 0.95};
    spec.b = linear_grid(0.0, 1.0, 0.01);
    const auto rows = sweep_k_vs_b(spec);
    const std::size_t nb = spec.b.size();
    double mono = 0.0;
    double arg = 0.0;
    for (std::size_t t = 0; t < spec.theta_over_pi.size(); ++t) {
        const bool violating_curve = spec.theta_over_pi[t] == 0.06 || spec.theta_over_pi[t] == 0.95;
        double best = 0.0;
        for (std::size_t i = 0; i < nb; ++i) {
            const double k = std::abs(rows[t * nb + i].K);
            best = std::max(best, k);
            if (violating_curve && i > 0) mono = std::max(mono, std::abs(rows[t * nb + i - 1].K) - k);
        }
        // Ties allowed: the 0.50 curve is identically zero up to rounding.
        arg = std::max(arg, best - std::abs(rows[t * nb + nb - 1].K));
    }
    return {mono <= 1e-9 && arg <= 1e-12,
            "largest |K| decrease " + fmt(std::max(mono, 0.0)) + ", max|K| - |K(b=1)| " + fmt(arg)};
}

// 5. Operational path vs closed form.
Verdict oracle_equivalence() {
    double worst = 0.0;
    int cases = 0;
    for (const int tj : kTwiceJ) {
        const SpinSystem sys{HalfInt{tj}};
        for (const Partition& part : both_families(sys)) {
            for (const double b : kBGrid) {
                const auto povm = make_povm(part, MeasurabilityParam::from_b(b));
                for (const double theta : theta_grid()) {
                    const double op = two_time_correlation(povm, maximally_mixed(sys), {sys, 1.0, 0.0}, theta).C;
                    worst = std::max(worst, std::abs(op - correlation_closed_form(povm.A(), sys, theta)));
                    ++cases;
                }
            }
        }
    }
    return {worst <= 1e-10, std::to_string(cases) + " points, worst |dC| " + fmt(worst)};
}

// 6. POVM and dilation suite.
Verdict povm_dilation() {
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<std::size_t> pick_j(0, kTwiceJ.size() - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const SpinSystem sys{HalfInt{kTwiceJ[pick_j(rng)]}};
        const auto parts = both_families(sys);
        const Partition& part = parts[std::uniform_int_distribution<std::size_t>(0, parts.size() - 1)(rng)];
        const double b = trial % 10 == 0 ? 1.0 : (trial % 10 == 1 ? 0.0 : unit(rng));
        const auto povm = make_povm(part, MeasurabilityParam::from_b(b));
        const int d = sys.dim();
        const Operator rho = trial % 2 ? random_pure_state(d, rng) : random_mixed_state(d, rng);

        worst = std::max(worst, (povm.E_plus() + povm.E_minus() - Operator::Identity(d, d)).cwiseAbs().maxCoeff());
        for (const Operator* e : {&povm.E_plus(), &povm.E_minus()}) {
            Eigen::SelfAdjointEigenSolver<Operator> s(*e, Eigen::EigenvaluesOnly);
            worst = std::max(worst, -s.eigenvalues().minCoeff());
        }
        worst = std::max(worst, povm.A().diagonal().cwiseAbs().maxCoeff() - 1.0);
        worst = std::max(worst, neumark_verify(povm, rho).max_deviation());
    }
    return {worst <= 1e-10, "200 cases, worst deviation " + fmt(worst)};
}

// 7. Four-measurement control.
Verdict four_measurement_control() {
    double worst = -10.0;
    for (const int tj : kTwiceJ) {
        const SpinSystem sys{HalfInt{tj}};
        for (const Partition& part : both_families(sys)) {
            for (const double b : kBGrid) {
                const auto povm = make_povm(part, MeasurabilityParam::from_b(b));
                for (const double theta : theta_grid()) {
                    const LgiResult r =
                        k_lg_four_measurements(povm, maximally_mixed(sys), {sys, 1.0, 0.0}, {theta, theta, theta});
                    worst = std::max(worst, std::abs(r.K));
                }
            }
        }
    }
    return {worst <= 2.0 + 1e-10, "max |K| " + std::to_string(worst)};
}

// 8. Omega independence and unitarity.
Verdict omega_and_unitarity() {
    double spread = 0.0;
    double unitarity = 0.0;
    for (const int tj : kTwiceJ) {
        const SpinSystem sys{HalfInt{tj}};
        for (const Partition& part : both_families(sys)) {
            for (const double b : kBGrid) {
                const auto povm = make_povm(part, MeasurabilityParam::from_b(b));
                for (const double theta : theta_grid()) {
                    const double base = k_lg_equal_gaps(povm, maximally_mixed(sys), {sys, 1.0, 0.0}, theta).K;
                    for (const double big : {1.0, 17.3}) {
                        const DynamicsParams dyn{sys, 1.0, big};
                        spread = std::max(spread, std::abs(k_lg_equal_gaps(povm, maximally_mixed(sys), dyn, theta).K - base));
                        unitarity = std::max(unitarity, unitarity_defect(evolution_operator(dyn, theta)));
                    }
                    unitarity = std::max(unitarity, unitarity_defect(rotation_x(sys, theta)));
                    unitarity = std::max(unitarity, unitarity_defect(rotation_x(sys, 3 * theta)));
                }
            }
        }
    }
    return {spread <= 1e-12 && unitarity <= 1e-12,
            "K spread over Omega " + fmt(spread) + ", max |U^dag U - I| " + fmt(unitarity)};
}

int run_command(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// 9. CLI reproducibility.
Verdict cli_reproducibility() {
    const std::string cli = LGSIM_CLI_PATH;
    const auto dir = std::filesystem::temp_directory_path();
    const auto first = dir / "lgsim_accept_run1.csv";
    const auto second = dir / "lgsim_accept_run2.csv";
    const std::string sweep = "\"" + cli +
                              "\" sweep-kb --j 5/2 --partition edge5_2 --b 0:0.01:1"
                              " --theta-over-pi 0.06,0.34,0.50,0.95 --output ";
    const int c1 = run_command(sweep + "\"" + first.string() + "\"");
    const int c2 = run_command(sweep + "\"" + second.string() + "\"");
    const std::string a = slurp(first);
    const std::string b = slurp(second);
    const int check = run_command("\"" + cli + "\" check > /dev/null");
    std::filesystem::remove(first);
    std::filesystem::remove(second);
    std::size_t lines = 0;
    for (const char ch : a) lines += ch == '\n';
    const bool ok = c1 == 0 && c2 == 0 && !a.empty() && a == b && lines == 405 && check == 0;
    return {ok, "sweep exits " + std::to_string(c1) + "/" + std::to_string(c2) + ", " + std::to_string(lines) +
                    " lines, identical=" + (a == b ? "yes" : "no") + ", check exit " + std::to_string(check)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"1 qubit parity benchmark K_max = 2 sqrt 2", qubit_benchmark},
        {"2 j=5/2 b=1 endpoints", parity_endpoints},
        {"3 dotted-line classification at 0.06 pi", dotted_lines},
        {"4 monotone |K(b)|, maximum at b=1", monotonicity},
        {"5 operational vs closed-form correlation", oracle_equivalence},
        {"6 POVM and Neumark dilation suite", povm_dilation},
        {"7 four-measurement control |K| <= 2", four_measurement_control},
        {"8 Omega independence and unitarity", omega_and_unitarity},
        {"9 CLI reproducibility and check", cli_reproducibility},
    };
    int failures = 0;
    for (const auto& [name, fn] : criteria) {
        Verdict v{false, ""};
        try {
            v = fn();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failures += v.passed ? 0 : 1;
        std::cout << (v.passed ? "[PASS] " : "[FAIL] ") << name << " -- " << v.detail << '\n';
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
    return failures == 0 ? 0 : 1;
}
