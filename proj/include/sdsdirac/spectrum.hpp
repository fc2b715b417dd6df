// Copyright 2026 The sdsdirac Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file spectrum.hpp
 * @brief Closed-form energies of the four ground-state branches and the
 *        shape-invariance recursion that generates them.
 *
 * With g = m²ω²β + α the branch spectra read
 *     ZeroGS          E² − m² = 4n     [ mω + g(n + j + ½)]
 *     PosSpinShifted  E² − m² = 4(n+j+1)[−mω + g(n + ½)]
 *     NegSpinSameXi   E² − m² = 4(n+j+1)[ mω + g(n + ½)]
 *     NegSpinShifted  E² − m² = 4(n+1)  [−mω + g(n + j + 3/2)]
 * and E² − m² = |ω̃|² e_n with e_n = ε + 4n(β(n+k') + ξ').
 */

#pragma once

#include <sdsdirac/deformation.hpp>
#include <sdsdirac/errors.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace sds {

inline constexpr int kMaxSpectrumLevels = 64;

// ============================================================================
// Quantum numbers
// ============================================================================

struct QuantumNumbers {
    Spin s = Spin::Up;
    HalfInt j{1};
    int n = 0;
    int k = 1;            ///< s(2j+1)
    int N_principal = 0;  ///< 2n + j − s
};

/// 2n + j − s as an integer.
[[nodiscard]] inline int principal_number(HalfInt j, Spin s, int n) {
    return 2 * n + (j.twice - (s == Spin::Up ? 1 : -1)) / 2;
}

[[nodiscard]] inline QuantumNumbers make_quantum_numbers(HalfInt j, Spin s, int n) {
    if (n < 0) throw DomainError("radial quantum number n must be >= 0");
    QuantumNumbers q;
    q.s = s;
    q.j = j;
    q.n = n;
    q.k = kappa_of(j, s);
    q.N_principal = principal_number(j, s, n);
    return q;
}

// ============================================================================
// Shape invariance
// ============================================================================

struct ShapeInvarianceStep {
    int i = 0;
    double k_i = 0;
    double xi_i = 0;
    double zeta_i = 0;
    double epsilon_i = 0;  ///< ε_i; zero for the starting step
};

/// f(k, ξ) = βk² + 2kξ + (ξ² + ζ²)/β.
[[nodiscard]] inline double shape_invariance_f(double k, double xi, double zeta, double beta) {
    return beta * k * k + 2.0 * k * xi + (xi * xi + zeta * zeta) / beta;
}

[[nodiscard]] inline ShapeInvarianceStep initial_step(double k, const DerivedConstants& dc) {
    return ShapeInvarianceStep{0, k, dc.xi, dc.zeta, 0.0};
}

[[nodiscard]] inline ShapeInvarianceStep shape_invariance_step(const ShapeInvarianceStep& st,
                                                               double beta) {
    ShapeInvarianceStep nx;
    nx.i = st.i + 1;
    nx.k_i = st.k_i + 1.0;
    nx.xi_i = st.xi_i + beta;
    nx.zeta_i = st.zeta_i;
    nx.epsilon_i = shape_invariance_f(nx.k_i, nx.xi_i, nx.zeta_i, beta) -
                   shape_invariance_f(st.k_i, st.xi_i, st.zeta_i, beta);
    return nx;
}

/// Σ_{i=1..n} ε_i accumulated step by step from (k, ξ, ζ).
[[nodiscard]] inline double telescoped_sum(double k, double xi, double zeta, double beta, int n) {
    ShapeInvarianceStep st{0, k, xi, zeta, 0.0};
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        st = shape_invariance_step(st, beta);
        acc += st.epsilon_i;
    }
    return acc;
}

// ============================================================================
// Branch formulas
// ============================================================================

/// Raw branch formula for E² − m² with g = m²ω²β + α. No validity checks, so
/// it can also be evaluated in the undeformed limit α = β = 0.
[[nodiscard]] inline double branch_formula(BranchTag tag, double m_omega, double g, double j,
                                           int n) {
    switch (tag) {
        case BranchTag::ZeroGS: return 4.0 * n * (m_omega + g * (n + j + 0.5));
        case BranchTag::PosSpinShifted: return 4.0 * (n + j + 1.0) * (-m_omega + g * (n + 0.5));
        case BranchTag::NegSpinSameXi: return 4.0 * (n + j + 1.0) * (m_omega + g * (n + 0.5));
        case BranchTag::NegSpinShifted: return 4.0 * (n + 1.0) * (-m_omega + g * (n + j + 1.5));
    }
    return 0.0;
}

[[nodiscard]] inline double coupling_g(const ModelParams& p) noexcept {
    return p.m_omega() * p.m_omega() * p.beta + p.alpha;
}

namespace detail {

inline const RegimeEntry& require_valid(const std::vector<RegimeEntry>& entries, BranchTag tag) {
    for (const auto& e : entries) {
        if (e.branch.tag != tag) continue;
        if (!e.valid) {
            throw InvalidBranchError(std::string(to_string(tag)) + " rejected: " + e.reason);
        }
        return e;
    }
    throw InvalidBranchError("unknown branch");
}

}  // namespace detail

/// E² − m² for a branch; throws InvalidBranchError if classify_regime rejects it.
[[nodiscard]] inline double energy_sq_minus_msq(BranchTag tag, const ModelParams& p, HalfInt j,
                                                int n) {
    if (n < 0) throw DomainError("radial quantum number n must be >= 0");
    detail::require_valid(classify_regime(p, j, branch_spin(tag)), tag);
    return branch_formula(tag, p.m_omega(), coupling_g(p), j.value(), n);
}

[[nodiscard]] inline double energy_sq_minus_msq(const Branch& b, const ModelParams& p, HalfInt j,
                                                int n) {
    return energy_sq_minus_msq(b.tag, p, j, n);
}

/// Positive root E = +√(m² + (E² − m²)).
[[nodiscard]] inline double positive_energy(double e2_minus_m2, double m) {
    const double e2 = m * m + e2_minus_m2;
    if (!(e2 > 0.0)) throw DomainError("E^2 <= 0: no real positive energy");
    return std::sqrt(e2);
}

/// Ground-state ε of each branch, written in the branch's own closed form.
[[nodiscard]] inline double ground_state_epsilon(BranchTag tag, const DerivedConstants& dc,
                                                 double beta, int k) {
    const bool up = branch_spin(tag) == Spin::Up;
    if (k == 0 || (up && k < 0) || (!up && k > 0)) {
        throw DomainError(std::string(to_string(tag)) + ": inconsistent k=" + std::to_string(k));
    }
    const double xi = dc.xi;
    switch (tag) {
        case BranchTag::ZeroGS: return 0.0;
        case BranchTag::PosSpinShifted: return (beta - 2.0 * xi) * (1.0 + 2.0 * k);
        case BranchTag::NegSpinSameXi: return (beta + 2.0 * xi) * (1.0 - 2.0 * k);
        case BranchTag::NegSpinShifted: return 4.0 * (beta * (1.0 - k) - xi);
    }
    return 0.0;
}

/// ε = f(k', ξ') − f(k, ξ), the re-factorization constant.
[[nodiscard]] inline double refactorization_epsilon(const Branch& b, const DerivedConstants& dc,
                                                    int k) {
    return shape_invariance_f(b.k_prime, b.xi_prime, dc.zeta, dc.beta) -
           shape_invariance_f(k, dc.xi, dc.zeta, dc.beta);
}

/// e_n = ε + 4n(β(n + k') + ξ'), i.e. (E² − m²)/|ω̃|² via shape invariance.
[[nodiscard]] inline double shape_invariance_level(const Branch& b, const DerivedConstants& dc,
                                                   int k, int n) {
    return refactorization_epsilon(b, dc, k) + 4.0 * n * (dc.beta * (n + b.k_prime) + b.xi_prime);
}

// ============================================================================
// Tables and principal-number forms
// ============================================================================

struct SpectrumRow {
    int n = 0;
    int N_principal = 0;
    double e2_minus_m2 = 0;
    double energy = 0;      ///< positive root; 0 when E² ≤ 0
    double e_n = 0;         ///< (E² − m²)/|ω̃|²
    bool energy_real = true;
};

struct SpectrumTable {
    Branch branch;
    ModelParams params;
    HalfInt j{1};
    bool physical = true;
    bool epsilon_positivity_proven = true;
    std::string reason;
    std::vector<SpectrumRow> rows;
};

[[nodiscard]] inline SpectrumTable spectrum_table(BranchTag tag, const ModelParams& p, HalfInt j,
                                                  int n_max) {
    if (n_max < 0 || n_max > kMaxSpectrumLevels) {
        throw ParameterError("n_max must lie in [0, " + std::to_string(kMaxSpectrumLevels) + "]");
    }
    const Spin s = branch_spin(tag);
    const auto entries = classify_regime(p, j, s);
    const RegimeEntry& e = detail::require_valid(entries, tag);
    const DerivedConstants dc = derive_constants(p);

    SpectrumTable t;
    t.branch = e.branch;
    t.params = p;
    t.j = j;
    t.physical = e.physical;
    t.epsilon_positivity_proven = e.epsilon_positivity_proven;
    t.reason = e.reason;
    t.rows.reserve(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        SpectrumRow r;
        r.n = n;
        r.N_principal = principal_number(j, s, n);
        r.e2_minus_m2 = branch_formula(tag, p.m_omega(), coupling_g(p), j.value(), n);
        r.e_n = r.e2_minus_m2 / dc.omega_tilde_sq;
        const double e2 = p.m * p.m + r.e2_minus_m2;
        r.energy_real = e2 > 0.0;
        r.energy = r.energy_real ? std::sqrt(e2) : 0.0;
        t.rows.push_back(r);
    }
    return t;
}

/// E² − m² written in the principal quantum number N = 2n + j − s.
[[nodiscard]] inline double principal_form(BranchTag tag, const ModelParams& p, HalfInt j,
                                           int N_principal) {
    const Spin s = branch_spin(tag);
    const int offset = (j.twice - (s == Spin::Up ? 1 : -1)) / 2;  // j − s
    check_total_j(j);
    if (N_principal < offset || (N_principal - offset) % 2 != 0) {
        throw DomainError("N=" + std::to_string(N_principal) + " incompatible with j and s");
    }
    detail::require_valid(classify_regime(p, j, s), tag);
    const double N = N_principal;
    const double jj = j.value();
    const double mw = p.m_omega();
    const double g = coupling_g(p);
    switch (tag) {
        case BranchTag::ZeroGS: return 2.0 * (N - jj + 0.5) * (mw + 0.5 * g * (N + jj + 1.5));
        case BranchTag::PosSpinShifted:
            return 2.0 * (N + jj + 2.5) * (-mw + 0.5 * g * (N - jj + 1.5));
        case BranchTag::NegSpinSameXi: return 2.0 * (N + jj + 1.5) * (mw + 0.5 * g * (N - jj + 0.5));
        case BranchTag::NegSpinShifted:
            return 2.0 * (N - jj + 1.5) * (-mw + 0.5 * g * (N + jj + 2.5));
    }
    return 0.0;
}

}  // namespace sds
