// Copyright 2026 The sdsdirac Authors
// SPDX-License-Identifier: Apache-2.0

#include <sdsdirac/specfun.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace sds {
namespace {

TEST(Jacobi, DegreeZeroIsOne) {
    EXPECT_DOUBLE_EQ(jacobi_eval(0, 3.0, 0.2, 0.7), 1.0);
    EXPECT_DOUBLE_EQ(jacobi_derivative(0, 3.0, 0.2, 0.7), 0.0);
}

TEST(Jacobi, KnownValues) {
    EXPECT_NEAR(jacobi_eval(1, 12, 0.5, 0.0), 5.75, 1e-14);
    EXPECT_NEAR(jacobi_eval(3, 0, 0, 0.5), -0.4375, 1e-14);
    for (double z : {-0.9, -0.1, 0.4, 1.0}) {
        EXPECT_NEAR(jacobi_derivative(1, 12, 0.5, z), 7.25, 1e-13);
        EXPECT_NEAR(jacobi_eval(3, 0, 0, z), 0.5 * (5 * z * z * z - 3 * z), 1e-14);
    }
}

TEST(Jacobi, EndpointValue) {
    // P_n^(a,b)(1) = Γ(n+a+1)/(Γ(a+1) n!)
    for (int n = 0; n < 8; ++n) {
        const double a = 2.3, b = -0.4;
        const double expect = std::exp(std::lgamma(n + a + 1) - std::lgamma(a + 1) - std::lgamma(n + 1));
        EXPECT_NEAR(jacobi_eval(n, a, b, 1.0) / expect, 1.0, 1e-13);
    }
}

TEST(Jacobi, DerivativeMatchesFiniteDifference) {
    const double h = 1e-5, z = 0.2;
    const double fd = (jacobi_eval(2, 1, 1, z + h) - jacobi_eval(2, 1, 1, z - h)) / (2 * h);
    EXPECT_NEAR(jacobi_derivative(2, 1, 1, z), fd, 1e-7);
}

TEST(Jacobi, RejectsBadArguments) {
    EXPECT_THROW((void)jacobi_eval(-1, 0, 0, 0), DomainError);
    EXPECT_THROW((void)jacobi_eval(2, -1.5, 0, 0), DomainError);
    EXPECT_THROW((void)jacobi_eval(2, 0, 0, 1.5), DomainError);
}

TEST(Gamma, Values) {
    EXPECT_NEAR(log_gamma(1.0), 0.0, 1e-15);
    EXPECT_NEAR(log_gamma(0.5), 0.5723649429247001, 1e-14);
    EXPECT_NEAR(log_gamma(13.5), log_gamma(12.5) + std::log(12.5), 1e-12);
    EXPECT_THROW((void)log_gamma(0.0), DomainError);
    EXPECT_NEAR(log_beta(2, 3), std::log(1.0 / 12.0), 1e-14);
}

TEST(GaussJacobi, Midpoint) {
    const auto r = gauss_jacobi(1, 0, 0);
    ASSERT_EQ(r.nodes.size(), 1u);
    EXPECT_NEAR(r.nodes[0], 0.0, 1e-15);
    EXPECT_NEAR(r.weights[0], 2.0, 1e-14);
}

TEST(GaussJacobi, MonomialExactness) {
    const auto r = gauss_jacobi(5, 0, 0);
    EXPECT_NEAR(r.integrate([](double z) { return std::pow(z, 8); }), 2.0 / 9.0, 1e-12);
}

TEST(GaussJacobi, WeightSumIsBetaFunction) {
    const auto r = gauss_jacobi(8, 12, 0.5);
    double sum = 0;
    for (double w : r.weights) sum += w;
    const double expect = std::exp(13.5 * std::log(2.0) + log_beta(13, 1.5));
    EXPECT_NEAR(sum / expect, 1.0, 1e-10);
    for (std::size_t i = 1; i < r.nodes.size(); ++i) EXPECT_LT(r.nodes[i - 1], r.nodes[i]);
}

TEST(GaussJacobi, OrthogonalityAndNorm) {
    const double a = 3.5, b = 0.5;
    const auto r = gauss_jacobi(12, a, b);
    for (int n = 0; n < 6; ++n) {
        for (int m = 0; m < 6; ++m) {
            const double v = r.integrate([&](double z) { return jacobi_eval(n, a, b, z) * jacobi_eval(m, a, b, z); });
            if (n == m) {
                EXPECT_NEAR(v / std::exp(log_jacobi_norm_sq(n, a, b)), 1.0, 1e-12);
            } else {
                EXPECT_NEAR(v, 0.0, 1e-10);
            }
        }
    }
}

TEST(GaussJacobi, RejectsBadArguments) {
    EXPECT_THROW((void)gauss_jacobi(0, 0, 0), DomainError);
    EXPECT_THROW((void)gauss_jacobi(3, -1, 0), DomainError);
}

}  // namespace
}  // namespace sds
