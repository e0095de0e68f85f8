// Copyright 2026 The lgsim Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>
#include <random>

#include <doctest.h>

#include "lgsim/density.hpp"
#include "lgsim/errors.hpp"
#include "lgsim/invariants.hpp"
#include "lgsim/measurability.hpp"

using namespace lgsim;

namespace {

double max_abs(const Operator& x) { return x.cwiseAbs().maxCoeff(); }

Operator diag(std::initializer_list<double> values) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(values.size()));
    int i = 0;
    for (double x : values) v(i++) = x;
    return v.asDiagonal();
}

std::vector<HalfInt> levels(std::initializer_list<int> twice) {
    std::vector<HalfInt> out;
    for (int t : twice) out.emplace_back(t);
    return out;
}

double min_eig(const Operator& x) {
    Eigen::SelfAdjointEigenSolver<Operator> s(x, Eigen::EigenvaluesOnly);
    return s.eigenvalues().minCoeff();
}

/// Every partition the uniform and edge constructors accept for j <= 7/2.
std::vector<Partition> all_partitions() {
    std::vector<Partition> out;
    for (int tj = 0; tj <= 7; ++tj) {
        const SpinSystem sys{HalfInt{tj}};
        for (int size = 1; size <= sys.dim(); size += 2) {
            if (sys.dim() % size == 0) out.push_back(uniform_partition(sys, size));
        }
        if (sys.dim() % 2 == 0) out.push_back(edge_partition(sys));
    }
    return out;
}

}  // namespace

TEST_CASE("f_value") {
    SUBCASE("offset 0 is 1 for any b, including b = 0") {
        for (const double b : {0.0, 0.008, 0.5, 1.0}) {
            CHECK(f_value(0, MeasurabilityParam::from_b(b)) == 1.0);
        }
    }
    SUBCASE("offset 2 gives b^4") {
        for (const double b : {0.0, 0.3, 0.61, 0.98, 1.0}) {
            CHECK(f_value(2, MeasurabilityParam::from_b(b)) == doctest::Approx(std::pow(b, 4)).epsilon(1e-15));
            CHECK(f_value(-2, MeasurabilityParam::from_b(b)) == f_value(2, MeasurabilityParam::from_b(b)));
        }
    }
    SUBCASE("sigma = 0.6 converts to b = exp(-1/0.72)") {
        const auto p = MeasurabilityParam::from_sigma(0.6);
        CHECK(p.b() == doctest::Approx(0.249352208777296).epsilon(1e-13));
        CHECK(std::abs(p.b() - std::exp(-1.0 / (2 * 0.36))) <= 1e-12);
        CHECK(f_value(1, p) == doctest::Approx(p.b()));
        CHECK(f_value(2, p) == doctest::Approx(std::exp(-4.0 / 0.72)).epsilon(1e-13));
    }
    SUBCASE("strictly increasing in b for nonzero offsets") {
        for (const int offset : {1, 2, 3}) {
            double prev = -1.0;
            for (int k = 0; k <= 100; ++k) {
                const double f = f_value(offset, MeasurabilityParam::from_b(k / 100.0));
                CHECK(f > prev);
                prev = f;
            }
        }
    }
    SUBCASE("sigma to b is strictly increasing and saturates at 1") {
        double prev = 0.0;
        for (double sigma = 0.05; sigma < 50; sigma *= 1.3) {
            const double b = b_from_sigma(sigma);
            CHECK(b > prev);
            CHECK(b < 1.0);
            prev = b;
        }
        CHECK(MeasurabilityParam::from_sigma(std::numeric_limits<double>::infinity()).b() == 1.0);
    }
    SUBCASE("parameter domain") {
        CHECK_THROWS_AS(MeasurabilityParam::from_b(1.2), DomainError);
        CHECK_THROWS_AS(MeasurabilityParam::from_b(-0.01), DomainError);
        CHECK_THROWS_AS(MeasurabilityParam::from_b(std::nan("")), InputError);
        CHECK_THROWS_AS(MeasurabilityParam::from_sigma(0.0), DomainError);
        CHECK_THROWS_AS(MeasurabilityParam::from_sigma(-1.0), DomainError);
    }
}

TEST_CASE("uniform_partition") {
    SUBCASE("j = 5/2, block 1: every level is its own mu") {
        const Partition p = uniform_partition(SpinSystem{HalfInt{5}}, 1);
        REQUIRE(p.blocks().size() == 6);
        for (const auto& block : p.blocks()) {
            CHECK(block.members.size() == 1);
            CHECK(block.members.front() == block.mu);
        }
    }
    SUBCASE("j = 5/2, block 3: central mu") {
        const Partition p = uniform_partition(SpinSystem{HalfInt{5}}, 3);
        REQUIRE(p.blocks().size() == 2);
        CHECK(p.blocks()[0].mu == HalfInt{3});
        CHECK(p.blocks()[0].members == levels({5, 3, 1}));
        CHECK(p.blocks()[1].mu == HalfInt{-3});
        CHECK(p.blocks()[1].members == levels({-1, -3, -5}));
    }
    SUBCASE("j = 1, block 3: one block around 0") {
        const Partition p = uniform_partition(SpinSystem{HalfInt{2}}, 3);
        REQUIRE(p.blocks().size() == 1);
        CHECK(p.blocks()[0].mu == HalfInt{0});
    }
    SUBCASE("even or non-dividing block sizes are rejected") {
        const SpinSystem sys{HalfInt{5}};
        CHECK_THROWS_AS((void)uniform_partition(sys, 2), InputError);
        CHECK_THROWS_AS((void)uniform_partition(sys, 5), InputError);
        CHECK_THROWS_AS((void)uniform_partition(sys, 0), InputError);
        CHECK_THROWS_AS((void)uniform_partition(sys, -1), InputError);
    }
}

TEST_CASE("edge_partition_5_2") {
    const Partition p = edge_partition_5_2();
    REQUIRE(p.blocks().size() == 2);
    CHECK(p.blocks()[0].mu == HalfInt{5});
    CHECK(p.blocks()[1].mu == HalfInt{-5});
    CHECK(p.offset_of(HalfInt{5}) == 0);
    CHECK(p.offset_of(HalfInt{3}) == -1);
    CHECK(p.offset_of(HalfInt{1}) == -2);
    CHECK(p.offset_of(HalfInt{-1}) == 2);
    CHECK(p.offset_of(HalfInt{-3}) == 1);
    CHECK(p.offset_of(HalfInt{-5}) == 0);
    int covered = 0;
    for (const auto& block : p.blocks()) covered += static_cast<int>(block.members.size());
    CHECK(covered == 6);
    CHECK_THROWS_AS((void)edge_partition(SpinSystem{HalfInt{2}}), InputError);
}

TEST_CASE("Partition validation") {
    const SpinSystem sys{HalfInt{3}};  // m = 3/2 .. -3/2
    CHECK_NOTHROW(Partition(sys, {{HalfInt{3}, levels({3, 1})}, {HalfInt{-3}, levels({-1, -3})}}));
    // overlap
    CHECK_THROWS_AS(Partition(sys, {{HalfInt{3}, levels({3, 1})}, {HalfInt{-3}, levels({1, -1, -3})}}),
                    InputError);
    // missing level
    CHECK_THROWS_AS(Partition(sys, {{HalfInt{3}, levels({3, 1})}, {HalfInt{-3}, levels({-3})}}),
                    InputError);
    // mu outside its block
    CHECK_THROWS_AS(Partition(sys, {{HalfInt{-3}, levels({3, 1})}, {HalfInt{-1}, levels({-1, -3})}}),
                    InputError);
    // not a level
    CHECK_THROWS_AS(Partition(sys, {{HalfInt{3}, levels({3, 1, 0})}, {HalfInt{-3}, levels({-1, -3})}}),
                    InputError);
}

TEST_CASE("build_A") {
    SUBCASE("edge partition structure diag(1, -b, b^4, -b^4, b, -1)") {
        for (const double b : {0.0, 0.008, 0.61, 0.98, 1.0}) {
            const Operator a = build_A(edge_partition_5_2(), MeasurabilityParam::from_b(b));
            const double c = std::pow(b, 4);
            CHECK(max_abs(a - diag({1, -b, c, -c, b, -1})) < 1e-15);
        }
    }
    SUBCASE("b = 0 keeps only the optimally measured levels") {
        const Operator a = build_A(edge_partition_5_2(), MeasurabilityParam::from_b(0.0));
        CHECK(max_abs(a - diag({1, 0, 0, 0, 0, -1})) == 0.0);
    }
    SUBCASE("b = 1 gives the parity operator for every partition, exactly") {
        for (const Partition& p : all_partitions()) {
            CHECK(max_abs(build_A(p, MeasurabilityParam::from_b(1.0)) - parity_matrix(p.system())) == 0.0);
        }
    }
    SUBCASE("edge partition is traceless for every b") {
        for (int k = 0; k <= 100; ++k) {
            const Operator a = build_A(edge_partition_5_2(), MeasurabilityParam::from_b(k / 100.0));
            CHECK(std::abs(a.trace()) < 1e-15);
        }
    }
}

TEST_CASE("build_povm") {
    SUBCASE("projective limit for spin 1/2 parity") {
        const MeasurabilityPovm povm = build_povm(parity_matrix(SpinSystem{HalfInt{1}}));
        CHECK(max_abs(povm.E_plus() - diag({1, 0})) == 0.0);
        CHECK(max_abs(povm.E_minus() - diag({0, 1})) == 0.0);
        CHECK(max_abs(povm.E_plus() * povm.E_plus() - povm.E_plus()) == 0.0);
    }
    SUBCASE("edge partition E_+") {
        const double b = 0.61;
        const double c = std::pow(b, 4);
        const MeasurabilityPovm povm = make_povm(edge_partition_5_2(), MeasurabilityParam::from_b(b));
        CHECK(max_abs(povm.E_plus() - diag({1, (1 - b) / 2, (1 + c) / 2, (1 - c) / 2, (1 + b) / 2, 0})) < 1e-15);
        REQUIRE(povm.param().has_value());
        CHECK(povm.param()->b() == b);
    }
    SUBCASE("entries beyond [-1, 1] are rejected") {
        CHECK_THROWS_AS((void)build_povm(diag({1.0, -1.5})), DomainError);
        CHECK_NOTHROW((void)build_povm(diag({1.0 + 5e-13, -1.0 - 5e-13})));
        Operator off = diag({0.5, -0.5});
        off(0, 1) = 0.1;
        CHECK_THROWS_AS((void)build_povm(off), InputError);
    }
    SUBCASE("invariants over random partitions and b") {
        std::mt19937_64 rng(3);
        const auto parts = all_partitions();
        std::uniform_int_distribution<std::size_t> pick(0, parts.size() - 1);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int trial = 0; trial < 100; ++trial) {
            const Partition& part = parts[pick(rng)];
            const MeasurabilityPovm povm = make_povm(part, MeasurabilityParam::from_b(unit(rng)));
            const int d = povm.dim();
            CHECK(max_abs(povm.E_plus() + povm.E_minus() - Operator::Identity(d, d)) <= 1e-12);
            CHECK(min_eig(povm.E_plus()) >= -1e-12);
            CHECK(min_eig(povm.E_minus()) >= -1e-12);
            CHECK(povm.A().diagonal().cwiseAbs().maxCoeff() <= 1.0 + 1e-12);
            CHECK(max_abs(povm.M_plus().adjoint() * povm.M_plus() - povm.E_plus()) <= 1e-12);
            CHECK(max_abs(povm.M_minus().adjoint() * povm.M_minus() - povm.E_minus()) <= 1e-12);
            CHECK(is_hermitian(povm.M_plus()));
        }
    }
}

TEST_CASE("neumark_verify") {
    std::mt19937_64 rng(5);
    SUBCASE("maximally mixed state is reproduced exactly") {
        for (const Partition& p : all_partitions()) {
            const MeasurabilityPovm povm = make_povm(p, MeasurabilityParam::from_b(0.37));
            CHECK(neumark_verify(povm, maximally_mixed(p.system()).matrix()).max_deviation() <= 1e-12);
        }
    }
    SUBCASE("edge partition, b = 0.61, random pure states") {
        const MeasurabilityPovm povm = make_povm(edge_partition_5_2(), MeasurabilityParam::from_b(0.61));
        for (int trial = 0; trial < 20; ++trial) {
            const Operator rho = random_pure_state(6, rng);
            const NeumarkReport r = neumark_verify(povm, rho);
            CHECK(r.isometry_defect <= 1e-12);
            CHECK(r.max_deviation() <= 1e-10);
        }
    }
    SUBCASE("b = 1: ancilla statistics are the parity projector statistics") {
        const Partition part = edge_partition_5_2();
        const MeasurabilityPovm povm = make_povm(part, MeasurabilityParam::from_b(1.0));
        const Operator parity = parity_matrix(part.system());
        const Operator proj_plus = 0.5 * (Operator::Identity(6, 6) + parity);
        const Operator rho = random_mixed_state(6, rng);
        const Operator v = neumark_isometry(povm);
        const Operator dilated = v * rho * v.adjoint();
        double p_ancilla_plus = 0.0;
        for (int i = 0; i < 6; ++i) p_ancilla_plus += dilated(2 * i, 2 * i).real();
        CHECK(p_ancilla_plus == doctest::Approx((proj_plus * rho).trace().real()).epsilon(1e-13));
        CHECK(neumark_verify(povm, rho).max_deviation() <= 1e-12);
    }
    SUBCASE("invalid density operators are rejected") {
        const MeasurabilityPovm povm = make_povm(edge_partition_5_2(), MeasurabilityParam::from_b(0.5));
        CHECK_THROWS_AS((void)neumark_verify(povm, Operator::Identity(6, 6)), InputError);
        CHECK_THROWS_AS((void)neumark_verify(povm, diag({1.5, -0.5, 0, 0, 0, 0})), InputError);
        Operator nonherm = Operator::Identity(6, 6) / 6.0;
        nonherm(0, 1) = 0.1;
        CHECK_THROWS_AS((void)neumark_verify(povm, nonherm), InputError);
        CHECK_THROWS_AS((void)neumark_verify(povm, Operator::Identity(2, 2) / 2.0), InputError);
    }
}
