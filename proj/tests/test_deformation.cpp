// Copyright 2026 The sdsdirac Authors
// SPDX-License-Identifier: Apache-2.0

#include <sdsdirac/deformation.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace sds {
namespace {

ModelParams set_a(double omega = 1.0, double lambda = 0.5) {
    ModelParams p;
    p.alpha = 0.04;
    p.beta = 0.04;
    p.omega = omega;
    p.lambda = lambda;
    return p;
}

TEST(DerivedConstants, SetAValues) {
    const auto dc = derive_constants(set_a());
    EXPECT_NEAR(dc.xi_tilde, 12.5, 1e-12);
    EXPECT_NEAR(dc.xi, 0.5, 1e-14);
    EXPECT_NEAR(dc.zeta, 0.0, 1e-15);
    EXPECT_NEAR(dc.omega_tilde_sq, 2.0, 1e-14);
    EXPECT_DOUBLE_EQ(dc.omega_tilde.real(), 1.0);
    EXPECT_DOUBLE_EQ(dc.omega_tilde.imag(), 1.0);
    EXPECT_DOUBLE_EQ(dc.eta.real(), dc.xi);
    EXPECT_NEAR(dc.nu(), 12.5, 1e-12);
}

TEST(DerivedConstants, LambdaOnlyMovesZeta) {
    const auto d0 = derive_constants(set_a(3.0, 0.0));
    const auto d1 = derive_constants(set_a(3.0, 1.0));
    EXPECT_DOUBLE_EQ(d0.xi, d1.xi);
    EXPECT_DOUBLE_EQ(d0.omega_tilde_sq, d1.omega_tilde_sq);
    EXPECT_GT(std::abs(d0.zeta - d1.zeta), 1e-3);
}

TEST(DerivedConstants, SymmetricDeformationHasNoZeta) {
    ModelParams p;
    p.alpha = p.beta = 0.3;
    EXPECT_NEAR(derive_constants(p).zeta, 0.0, 1e-15);
}

TEST(DerivedConstants, RejectsBadParameters) {
    ModelParams p = set_a();
    p.alpha = 0;
    EXPECT_THROW((void)derive_constants(p), ParameterError);
    p = set_a();
    p.beta = -1;
    EXPECT_THROW((void)derive_constants(p), ParameterError);
    p = set_a();
    p.m = NAN;
    EXPECT_THROW((void)derive_constants(p), ParameterError);
    p = set_a();
    p.lambda = INFINITY;
    EXPECT_THROW((void)derive_constants(p), ParameterError);
}

TEST(Uncertainty, SymmetricExample) {
    ModelParams p;
    p.alpha = p.beta = 0.1;
    const auto u = uncertainty_bounds(p, 0, 0);
    EXPECT_NEAR(u.dx_min, std::sqrt(0.1 / 1.2), 1e-14);
    EXPECT_EQ(u.dx_min, u.dp_min);
    EXPECT_NEAR(u.alpha_bar, 0.1 / 1.1, 1e-15);
    EXPECT_EQ(u.alpha_bar, u.beta_bar);
    EXPECT_NEAR(u.dx_min, u.rescale * u.dx_bar_min, 1e-14);
}

TEST(Uncertainty, ProductFormula) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ud(0.01, 2.0), um(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        ModelParams p;
        p.alpha = ud(rng);
        p.beta = ud(rng);
        const auto u = uncertainty_bounds(p, um(rng), um(rng));
        const double s = std::sqrt(p.alpha * p.beta);
        const double expect = s * (1 + u.gamma) / (1 + 2 * s);
        EXPECT_NEAR(u.dx_min * u.dp_min / expect, 1.0, 1e-13);
        EXPECT_NEAR(u.dp_min / (u.rescale * u.dp_bar_min), 1.0, 1e-13);
    }
}

TEST(Uncertainty, GammaFromMeans) {
    ModelParams p;
    p.alpha = 0.04;
    p.beta = 0.09;
    const auto u = uncertainty_bounds(p, 2.0, -1.0);
    EXPECT_NEAR(u.gamma, std::pow(0.2 * 2.0 - 0.3, 2), 1e-15);
    EXPECT_THROW((void)uncertainty_bounds(p, NAN, 0), ParameterError);
}

TEST(Quantum, KappaAndHalfInt) {
    EXPECT_EQ(kappa_of(HalfInt{1}, Spin::Up), 1);
    EXPECT_EQ(kappa_of(HalfInt{1}, Spin::Down), -1);
    EXPECT_EQ(kappa_of(HalfInt{5}, Spin::Up), 3);
    EXPECT_EQ(kappa_of(HalfInt{5}, Spin::Down), -3);
    EXPECT_THROW((void)kappa_of(HalfInt{2}, Spin::Up), DomainError);
    EXPECT_THROW((void)kappa_of(HalfInt{-1}, Spin::Up), DomainError);
    EXPECT_DOUBLE_EQ(HalfInt{3}.value(), 1.5);
}

TEST(Branches, NamesRoundTrip) {
    for (auto t : kAllBranches) EXPECT_EQ(branch_from_string(to_string(t)), t);
    EXPECT_THROW((void)branch_from_string("Nope"), ParameterError);
}

TEST(Branches, PrimedParameters) {
    const auto dc = derive_constants(set_a());
    const auto b = make_branch(BranchTag::NegSpinShifted, -2, dc);
    EXPECT_EQ(b.s, Spin::Down);
    EXPECT_DOUBLE_EQ(b.k_prime, 3.0);
    EXPECT_DOUBLE_EQ(b.xi_prime, dc.beta - dc.xi);
    const auto z = make_branch(BranchTag::ZeroGS, 2, dc);
    EXPECT_DOUBLE_EQ(z.k_prime, 2.0);
    EXPECT_DOUBLE_EQ(z.xi_prime, dc.xi);
}

const RegimeEntry& entry(const std::vector<RegimeEntry>& v, BranchTag t) {
    for (const auto& e : v)
        if (e.branch.tag == t) return e;
    throw std::logic_error("missing");
}

TEST(Regime, SetAZeroGroundState) {
    const auto r = classify_regime(set_a(), HalfInt{1}, Spin::Up);
    ASSERT_EQ(r.size(), 4u);
    EXPECT_TRUE(entry(r, BranchTag::ZeroGS).valid);
    EXPECT_FALSE(entry(r, BranchTag::PosSpinShifted).valid);
    EXPECT_FALSE(entry(r, BranchTag::NegSpinSameXi).valid);
    EXPECT_EQ(physical_branch(set_a(), HalfInt{1}, Spin::Up), BranchTag::ZeroGS);
    // bounds (1 ± √0.9984)/0.04
    const double lo = (1 - std::sqrt(0.9984)) / 0.04;
    const double hi = (1 + std::sqrt(0.9984)) / 0.04;
    EXPECT_NEAR(lo, 0.0200, 1e-4);
    EXPECT_NEAR(hi, 49.98, 1e-2);
}

TEST(Regime, LargeFrequencyFlipsBranch) {
    const auto r = classify_regime(set_a(60), HalfInt{1}, Spin::Up);
    EXPECT_FALSE(entry(r, BranchTag::ZeroGS).valid);
    EXPECT_TRUE(entry(r, BranchTag::PosSpinShifted).valid);
    EXPECT_GT(regime_q(set_a(60)), 0);
}

TEST(Regime, StrongDeformationNeverZero) {
    ModelParams p;
    p.alpha = 2.0;
    p.beta = 1.0;
    for (double w : {0.1, 0.5, 1.0, 2.0, 50.0}) {
        p.omega = w;
        EXPECT_GT(regime_q(p), 0);
        const auto r = classify_regime(p, HalfInt{1}, Spin::Up);
        EXPECT_FALSE(entry(r, BranchTag::ZeroGS).valid);
        EXPECT_TRUE(entry(r, BranchTag::PosSpinShifted).valid);
    }
}

TEST(Regime, NegativeSpin) {
    auto r = classify_regime(set_a(), HalfInt{1}, Spin::Down);
    EXPECT_TRUE(entry(r, BranchTag::NegSpinSameXi).valid);
    EXPECT_TRUE(entry(r, BranchTag::NegSpinSameXi).physical);
    EXPECT_FALSE(entry(r, BranchTag::NegSpinShifted).valid);
    EXPECT_FALSE(entry(r, BranchTag::ZeroGS).valid);

    r = classify_regime(set_a(60), HalfInt{1}, Spin::Down);
    EXPECT_TRUE(entry(r, BranchTag::NegSpinSameXi).valid);
    EXPECT_FALSE(entry(r, BranchTag::NegSpinSameXi).physical);
    const auto& ns = entry(r, BranchTag::NegSpinShifted);
    EXPECT_TRUE(ns.valid);
    EXPECT_FALSE(ns.epsilon_positivity_proven);  // 4αβ < 1
    EXPECT_EQ(physical_branch(set_a(60), HalfInt{1}, Spin::Down), BranchTag::NegSpinShifted);
}

TEST(Regime, BoundaryRejected) {
    // Q = β(mω)² − 2mω + α = 0 at mω = 1 for α = 1.5, β = 0.5.
    ModelParams p;
    p.alpha = 1.5;
    p.beta = 0.5;
    EXPECT_THROW((void)classify_regime(p, HalfInt{1}, Spin::Up), RegimeBoundaryError);
}

TEST(Regime, QSignMatchesXiTilde) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> la(-4, 1), lw(-2, 2.5);
    for (int i = 0; i < 500; ++i) {
        ModelParams p;
        p.alpha = std::pow(10.0, la(rng));
        p.beta = std::pow(10.0, la(rng));
        p.omega = std::pow(10.0, lw(rng));
        const auto dc = derive_constants(p);
        if (std::abs(dc.xi_tilde - 0.5) < 1e-9) continue;
        EXPECT_EQ(regime_q(p) < 0, dc.xi_tilde > 0.5);
    }
}

}  // namespace
}  // namespace sds
