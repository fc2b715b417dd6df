// Copyright 2026 The sdsdirac Authors
// SPDX-License-Identifier: Apache-2.0

#include <sdsdirac/radial_ops.hpp>
#include <sdsdirac/wavefun.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace sds {
namespace {

constexpr double kPi = std::numbers::pi;

ModelParams set_a(double omega = 1.0) {
    ModelParams p;
    p.alpha = 0.04;
    p.beta = 0.04;
    p.omega = omega;
    return p;
}

TEST(Grid, ThreePoints) {
    const auto g = make_grid(1.0, 3);
    ASSERT_EQ(g->theta_nodes.size(), 3u);
    EXPECT_NEAR(g->theta_nodes[0], kPi / 8, 1e-15);
    EXPECT_NEAR(g->theta_nodes[1], kPi / 4, 1e-15);
    EXPECT_NEAR(g->theta_nodes[2], 3 * kPi / 8, 1e-15);
    EXPECT_NEAR(g->p_nodes[1], std::sqrt(0.5), 1e-15);
    EXPECT_EQ(g->theta_mid.size(), 4u);
}

TEST(Grid, MomentaBelowWall) {
    const auto g = make_grid(0.04, 100);
    for (double p : g->p_nodes) EXPECT_LT(p, 5.0);
    for (double p : g->p_mid) EXPECT_LT(p, 5.0);
}

TEST(Grid, FlatMeasure) {
    const auto g = make_grid(1.0, 1000);
    const double total = g->weight() * (g->size + 1);
    EXPECT_NEAR(total, kPi / 2, 1e-12);
}

TEST(Grid, Rejects) {
    EXPECT_THROW((void)make_grid(0.0, 10), ParameterError);
    EXPECT_THROW((void)make_grid(1.0, 2), ParameterError);
}

TEST(GridFunctions, InnerProductBasics) {
    const auto g = make_grid(0.25, 400);
    const auto z = zero_function(g);
    const auto one = sample(g, Stagger::Node, [](double) { return 1.0; });
    EXPECT_EQ(inner_product(z, one), cplx{});
    const double exact = (kPi / 2) / std::sqrt(0.25);
    // one boundary cell is missing from the node sum
    EXPECT_NEAR(inner_product(one, one).real(), exact - g->weight(), 1e-12);
    const auto other = make_grid(0.25, 401);
    EXPECT_THROW((void)inner_product(one, zero_function(other)), NumericError);
    EXPECT_THROW((void)inner_product(one, zero_function(g, Stagger::Mid)), NumericError);
}

TEST(GridFunctions, GroundStateOverlapConverges) {
    // Two unit ground states with different k: the grid overlap tends to the Gauss–Jacobi value.
    const auto dc = derive_constants(set_a());
    const auto f1 = ground_state_wf(BranchTag::ZeroGS, dc, 0.04, 1);
    const auto f2 = ground_state_wf(BranchTag::ZeroGS, dc, 0.04, 3);
    double prev = INFINITY;
    const double exact = quadrature_overlap(f1, f2).real();
    for (int n : {250, 500, 1000}) {
        const auto g = make_grid(0.04, n);
        const double err = std::abs(inner_product(sample_form(f1, g), sample_form(f2, g)).real() - exact);
        EXPECT_LT(err, prev);
        prev = err;
    }
    EXPECT_LT(prev, 1e-6);
    EXPECT_GT(exact, 0.5);
    EXPECT_LT(exact, 1.0);
}

TEST(Ladder, ZeroInZeroOut) {
    const auto dc = derive_constants(set_a());
    const auto g = make_grid(0.04, 64);
    const auto bm = build_b_minus(dc, 1, g);
    const auto out = bm.apply(zero_function(g));
    for (auto v : out.values) EXPECT_EQ(v, cplx{});
    EXPECT_EQ(out.where, Stagger::Mid);
    EXPECT_THROW((void)build_b_minus(dc, 0, g), DomainError);
    EXPECT_THROW((void)bm.apply(zero_function(g, Stagger::Mid)), NumericError);
}

TEST(Ladder, PlusIsDiscreteAdjointOfMinus) {
    ModelParams p = set_a(3.0);
    p.lambda = 0.2;  // ζ ≠ 0
    const auto dc = derive_constants(p);
    ASSERT_GT(std::abs(dc.zeta), 1e-3);
    for (int k : {1, -2}) {
        const auto g = make_grid(p.beta, 300);
        const Eigen::MatrixXcd bm = build_b_minus(dc, k, g).to_dense();
        const Eigen::MatrixXcd bp = build_b_plus(dc, k, g).to_dense();
        const Eigen::MatrixXcd adj = build_b_minus(dc, k, g).adjoint().to_dense();
        EXPECT_LT((bp - bm.adjoint()).norm() / bp.norm(), 1e-13) << "k=" << k;
        EXPECT_LT((adj - bm.adjoint()).norm(), 1e-12);
    }
}

TEST(Ladder, AnnihilatesZeroGsGroundState) {
    const auto p = set_a();
    const auto dc = derive_constants(p);
    const auto f = ground_state_wf(BranchTag::ZeroGS, dc, p.beta, 1);
    auto rel = [&](int n) {
        const auto g = make_grid(p.beta, n);
        const auto out = build_b_minus(dc, 1, g).apply(sample_form(f, g));
        return norm(out) / norm(sample_form(f, g));
    };
    const double r1 = rel(1000), r2 = rel(2000);
    EXPECT_LT(r2, 1e-4);
    EXPECT_NEAR(r1 / r2, 4.0, 0.2);
}

TEST(PSquared, ZeroFunction) {
    const auto p = set_a();
    const auto g = make_grid(p.beta, 200);
    const auto r = p_squared_expectation(derive_constants(p), p, 0, zero_function(g));
    EXPECT_EQ(r.value, 0.0);
    EXPECT_THROW((void)p_squared_expectation(derive_constants(p), p, -1, zero_function(g)), DomainError);
}

TEST(PSquared, FiniteAndStableForZeroGs) {
    const auto p = set_a();
    const auto dc = derive_constants(p);
    const auto f = ground_state_wf(BranchTag::ZeroGS, dc, p.beta, 1);
    const auto g1 = make_grid(p.beta, 1000);
    const auto g2 = make_grid(p.beta, 2000);
    const auto r1 = p_squared_expectation(dc, p, 0, sample_form(f, g1));
    const auto r2 = p_squared_expectation(dc, p, 0, sample_form(f, g2));
    EXPECT_GT(r2.value, 0.0);
    EXPECT_NEAR(r1.value / r2.value, 1.0, 0.01);
    // The imaginary part is a discretization artifact that decays with h.
    EXPECT_LT(r2.imag_residue, r1.imag_residue);
    EXPECT_LT(r2.imag_residue, 1e-5 * r2.value);
}

TEST(PSquared, DivergesOutsideZeroRegime) {
    // ZeroGS-form function with ξ̃ < 1/2 is not in the P² domain.
    const auto p = set_a(60.0);
    const auto dc = derive_constants(p);
    ASSERT_LT(dc.xi_tilde, 0.5);
    JacobiForm f = make_jacobi_form(dc.nu() - 0.5, 0.5, 0, p.beta, dc.zeta);
    const auto g = make_grid(p.beta, 2000);
    EXPECT_THROW((void)p_squared_expectation(dc, p, 0, sample_form(f, g)), DivergenceError);
}

TEST(PartnerKernel, NormGrowsUnderRefinement) {
    // p^(−k)(1−βp²)^(−ξ̃/2 + iζ̃/2) is not square integrable.
    const auto p = set_a();
    const auto dc = derive_constants(p);
    auto fn = [&](double th) {
        const double s = std::sin(th), c = std::cos(th);
        return std::pow(s / std::sqrt(p.beta), -1.0) * std::pow(c, -dc.xi_tilde) *
               std::polar(1.0, dc.zeta_tilde * std::log(c));
    };
    double prev = 0;
    for (int n : {100, 200, 400}) {
        const auto g = make_grid(p.beta, n);
        const double nn = norm(sample(g, Stagger::Node, fn));
        EXPECT_GT(nn, 2 * prev);
        prev = nn;
    }
}

}  // namespace
}  // namespace sds
