// Copyright 2026 The sdsdirac Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file specfun.hpp
 * @brief Jacobi polynomials, log-gamma and Gauss–Jacobi quadrature.
 *
 * P_n^(a,b)(z) is evaluated with the three-term recurrence, which is stable
 * for the moderate degrees (n ≲ 50) used here. Everything that involves Γ is
 * kept in log space: a = ξ/β − 1/2 exceeds 10² for weak deformation.
 */

#pragma once

#include <sdsdirac/errors.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>
#include <vector>

namespace sds {

namespace detail {

inline void check_jacobi_args(int n, double a, double b, double z) {
    if (n < 0) throw DomainError("jacobi: degree must be >= 0");
    if (!(a > -1.0) || !(b > -1.0)) {
        throw DomainError("jacobi: exponents must satisfy a > -1 and b > -1");
    }
    if (!(z >= -1.0 && z <= 1.0)) throw DomainError("jacobi: z must lie in [-1, 1]");
}

}  // namespace detail

/// P_n^(a,b)(z) by upward recurrence in n.
[[nodiscard]] inline double jacobi_eval(int n, double a, double b, double z) {
    detail::check_jacobi_args(n, a, b, z);
    if (n == 0) return 1.0;
    double p_prev = 1.0;
    double p = (a + 1.0) + 0.5 * (a + b + 2.0) * (z - 1.0);
    for (int m = 2; m <= n; ++m) {
        const double s = 2.0 * m + a + b;
        const double c1 = 2.0 * m * (m + a + b) * (s - 2.0);
        const double c2 = (s - 1.0) * (s * (s - 2.0) * z + a * a - b * b);
        const double c3 = 2.0 * (m + a - 1.0) * (m + b - 1.0) * s;
        const double next = (c2 * p - c3 * p_prev) / c1;
        p_prev = p;
        p = next;
    }
    return p;
}

/// d/dz P_n^(a,b)(z) = ((n+a+b+1)/2) P_{n−1}^(a+1,b+1)(z).
[[nodiscard]] inline double jacobi_derivative(int n, double a, double b, double z) {
    detail::check_jacobi_args(n, a, b, z);
    if (n == 0) return 0.0;
    return 0.5 * (n + a + b + 1.0) * jacobi_eval(n - 1, a + 1.0, b + 1.0, z);
}

/// ln Γ(x) for x > 0.
[[nodiscard]] inline double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("log_gamma: pole or invalid argument x=" + std::to_string(x));
    }
    return std::lgamma(x);
}

/// ln B(x, y).
[[nodiscard]] inline double log_beta(double x, double y) {
    return log_gamma(x) + log_gamma(y) - log_gamma(x + y);
}

/// ln ∫₋₁¹ (1−z)^a (1+z)^b [P_n^(a,b)]² dz.
[[nodiscard]] inline double log_jacobi_norm_sq(int n, double a, double b) {
    if (n == 0) return (a + b + 1.0) * std::log(2.0) + log_beta(a + 1.0, b + 1.0);
    return (a + b + 1.0) * std::log(2.0) - std::log(2.0 * n + a + b + 1.0) +
           log_gamma(n + a + 1.0) + log_gamma(n + b + 1.0) - log_gamma(n + 1.0) -
           log_gamma(n + a + b + 1.0);
}

// ============================================================================
// Gauss–Jacobi quadrature
// ============================================================================

/// Rule for ∫₋₁¹ (1−z)^a (1+z)^b f(z) dz; exact for polynomials of degree ≤ 2·order−1.
struct QuadratureRule {
    std::vector<double> nodes;    ///< strictly increasing, in (−1, 1)
    std::vector<double> weights;  ///< positive
    int order = 0;
    double a = 0;
    double b = 0;

    template <class F>
    [[nodiscard]] auto integrate(F&& f) const {
        decltype(f(0.0)) acc{};
        for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
        return acc;
    }
};

/// Golub–Welsch: nodes are eigenvalues of the symmetric Jacobi matrix of the
/// monic recurrence, weights μ₀·(first eigenvector component)².
[[nodiscard]] inline QuadratureRule gauss_jacobi(int n, double a, double b) {
    if (n < 1) throw DomainError("gauss_jacobi: order must be >= 1");
    if (!(a > -1.0) || !(b > -1.0)) throw DomainError("gauss_jacobi: need a > -1 and b > -1");

    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
    const double ab = a + b;
    for (int k = 0; k < n; ++k) {
        const double s = 2.0 * k + ab;
        diag[k] = (k == 0) ? (b - a) / (ab + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    }
    for (int k = 1; k < n; ++k) {
        const double s = 2.0 * k + ab;
        double beta_k;
        if (k == 1) {
            beta_k = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        } else {
            beta_k = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
        }
        sub[k - 1] = std::sqrt(beta_k);
    }

    QuadratureRule rule;
    rule.order = n;
    rule.a = a;
    rule.b = b;
    const double log_mu0 = (ab + 1.0) * std::log(2.0) + log_beta(a + 1.0, b + 1.0);

    if (n == 1) {
        rule.nodes = {diag[0]};
        rule.weights = {std::exp(log_mu0)};
        return rule;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw NumericError("gauss_jacobi: eigensolver failed");

    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double mu0 = std::exp(log_mu0);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = es.eigenvalues()[i];
        const double v0 = es.eigenvectors()(0, i);
        rule.weights[i] = mu0 * v0 * v0;
    }
    return rule;
}

}  // namespace sds
