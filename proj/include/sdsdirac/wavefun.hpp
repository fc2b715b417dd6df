// Copyright 2026 The sdsdirac Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file wavefun.hpp
 * @brief Closed-form radial wavefunctions of every branch.
 *
 * Every component is a Jacobi form
 *     C · p^(b+½) · (1−βp²)^(a/2+¼ − iζ/2β) · P_n^(a,b)(2βp² − 1).
 * Large component exponents per branch:
 *     ZeroGS          a = ν − ½   b = k − ½
 *     PosSpinShifted  a = ½ − ν   b = k − ½
 *     NegSpinSameXi   a = ν − ½   b = ½ − k
 *     NegSpinShifted  a = ½ − ν   b = ½ − k        (ν = ξ/β)
 * The small component R̃₂ = ω̃* /(E+m) · b⁻R₁ is again a Jacobi form with
 * shifted exponents; b⁻ acts as a lowering or raising operator on (a, b).
 */

#pragma once

#include <sdsdirac/deformation.hpp>
#include <sdsdirac/errors.hpp>
#include <sdsdirac/radial_ops.hpp>
#include <sdsdirac/specfun.hpp>
#include <sdsdirac/spectrum.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>

namespace sds {

// ============================================================================
// Jacobi form
// ============================================================================

struct JacobiForm {
    double c = 0.5;          ///< exponent of p, b + ½
    double a_J = 0;
    double b_J = 0;
    double phase_exp = 0;    ///< imaginary exponent of (1−βp²), −ζ/2β
    double body_exp = 0.25;  ///< real exponent of (1−βp²), a/2 + ¼
    int degree = 0;
    double beta = 1;
    double log_abs_coeff = 0;  ///< ln|C|; the coefficient is exp(log_abs_coeff)·coeff_phase
    cplx coeff_phase{1.0, 0.0};
    bool empty = false;        ///< identically zero component

    [[nodiscard]] cplx coefficient() const {
        return empty ? cplx{} : std::exp(log_abs_coeff) * coeff_phase;
    }

    /// Value at θ, p = sin θ/√β.
    [[nodiscard]] cplx eval_theta(double theta) const {
        if (empty) return {};
        const double s = std::sin(theta);
        const double co = std::cos(theta);
        if (!(s > 0.0) || !(co > 0.0)) return {};
        const double z = -std::cos(2.0 * theta);
        const double poly = jacobi_eval(degree, a_J, b_J, std::clamp(z, -1.0, 1.0));
        if (poly == 0.0) return {};
        const double log_mag = log_abs_coeff + c * (std::log(s) - 0.5 * std::log(beta)) +
                               2.0 * body_exp * std::log(co) + std::log(std::abs(poly));
        const double ph = 2.0 * phase_exp * std::log(co);
        return (poly < 0 ? -1.0 : 1.0) * std::exp(log_mag) * coeff_phase * std::polar(1.0, ph);
    }

    /// Value at momentum p ∈ (0, 1/√β).
    [[nodiscard]] cplx eval_p(double p) const {
        const double x = p * std::sqrt(beta);
        if (!(x > 0.0) || !(x < 1.0)) return {};
        return eval_theta(std::asin(x));
    }

    [[nodiscard]] bool normalizable() const noexcept { return empty || (a_J > -1 && b_J > -1); }
    [[nodiscard]] bool physical() const noexcept { return empty || a_J > 0; }
};

/// Builds the bare form (unit coefficient).
[[nodiscard]] inline JacobiForm make_jacobi_form(double a, double b, int degree, double beta,
                                                 double zeta) {
    if (!(a > -1.0) || !(b > -1.0)) {
        throw DomainError("non-normalizable exponents a=" + std::to_string(a) +
                          " b=" + std::to_string(b) + " (need a > -1 and b > -1)");
    }
    JacobiForm f;
    f.a_J = a;
    f.b_J = b;
    f.c = b + 0.5;
    f.body_exp = 0.5 * a + 0.25;
    f.phase_exp = -zeta / (2.0 * beta);
    f.degree = degree;
    f.beta = beta;
    return f;
}

[[nodiscard]] inline JacobiForm zero_form(double beta) {
    JacobiForm f;
    f.beta = beta;
    f.empty = true;
    f.degree = -1;
    return f;
}

/// ln ∫ |form|² dp/√(1−βp²) for the bare form, from the Jacobi norm identity.
[[nodiscard]] inline double log_bare_norm_sq(double a, double b, int n, double beta) {
    return -(b + 1.0) * std::log(beta) - (a + b + 2.0) * std::log(2.0) +
           log_jacobi_norm_sq(n, a, b);
}

/// ⟨f|g⟩ = ∫ f* g dp/√(1−βp²) by Gauss–Jacobi quadrature in z = 2βp² − 1.
/// Requires equal phase exponents (then the integrand is weight × polynomial).
[[nodiscard]] inline cplx quadrature_overlap(const JacobiForm& f, const JacobiForm& g) {
    if (f.empty || g.empty) return {};
    if (f.beta != g.beta) throw NumericError("overlap: forms on different beta");
    if (std::abs(f.phase_exp - g.phase_exp) > 1e-14 * (1.0 + std::abs(f.phase_exp))) {
        throw NumericError("overlap: forms with different phase exponents");
    }
    // u = βp²: p^(cf+cg) (1−u)^(bf+bg) / √(1−u) dp
    //   = β^(−(cf+cg+1)/2) · ½ · u^((cf+cg−1)/2) (1−u)^(bodyf+bodyg−½) du
    const double ea = f.body_exp + g.body_exp - 0.5;  // exponent of (1−z)
    const double eb = 0.5 * (f.c + g.c - 1.0);        // exponent of (1+z)
    const int order = (f.degree + g.degree) / 2 + 2;
    const QuadratureRule rule = gauss_jacobi(order, ea, eb);
    const double poly_sum = rule.integrate([&](double z) {
        return jacobi_eval(f.degree, f.a_J, f.b_J, z) * jacobi_eval(g.degree, g.a_J, g.b_J, z);
    });
    // du = dz/2, u = (1+z)/2, 1−u = (1−z)/2
    const double log_scale = -0.5 * (f.c + g.c + 1.0) * std::log(f.beta) - std::log(2.0) -
                             (ea + eb + 1.0) * std::log(2.0) + f.log_abs_coeff + g.log_abs_coeff;
    return std::conj(f.coeff_phase) * g.coeff_phase * std::exp(log_scale) * poly_sum;
}

[[nodiscard]] inline double quadrature_norm_sq(const JacobiForm& f) {
    return quadrature_overlap(f, f).real();
}

/// Samples a form on a grid.
[[nodiscard]] inline GridFunction sample_form(const JacobiForm& f, GridPtr g,
                                              Stagger where = Stagger::Node) {
    return sample(std::move(g), where, [&](double th) { return f.eval_theta(th); });
}

// ============================================================================
// Branch exponents and wavefunctions
// ============================================================================

struct JacobiExponents {
    double a = 0;
    double b = 0;
};

[[nodiscard]] inline JacobiExponents branch_exponents(BranchTag tag, const DerivedConstants& dc,
                                                      int k) {
    const double nu = dc.nu();
    switch (tag) {
        case BranchTag::ZeroGS: return {nu - 0.5, k - 0.5};
        case BranchTag::PosSpinShifted: return {0.5 - nu, k - 0.5};
        case BranchTag::NegSpinSameXi: return {nu - 0.5, 0.5 - k};
        case BranchTag::NegSpinShifted: return {0.5 - nu, 0.5 - k};
    }
    return {};
}

namespace detail {

inline void check_branch_k(BranchTag tag, int k) {
    if (k == 0) throw DomainError("k must be nonzero");
    if (branch_spin(tag) == Spin::Up && k < 0) {
        throw DomainError(std::string(to_string(tag)) + ": k>0 required (s=+1/2 branch)");
    }
    if (branch_spin(tag) == Spin::Down && k > 0) {
        throw DomainError(std::string(to_string(tag)) + ": k<0 required (s=-1/2 branch)");
    }
}

/// Regime conditions expressed through ν = ξ/β (ν > ½ ⟺ ξ̃ > ½).
inline void check_branch_nu(BranchTag tag, const DerivedConstants& dc) {
    const double nu = dc.nu();
    if ((tag == BranchTag::ZeroGS) && !(nu > 0.5)) {
        throw DomainError("ZeroGS: xi_tilde > 1/2 required for finite <P^2>, got xi_tilde=" +
                          std::to_string(dc.xi_tilde));
    }
    if (branch_shifts_xi(tag) && !(nu < 0.5)) {
        throw DomainError(std::string(to_string(tag)) +
                          ": xi_tilde < 1/2 required, got xi_tilde=" + std::to_string(dc.xi_tilde));
    }
}

}  // namespace detail

/// Unit-norm degree-0 large component of a branch.
[[nodiscard]] inline JacobiForm ground_state_wf(BranchTag tag, const DerivedConstants& dc,
                                                double beta, int k) {
    detail::check_branch_k(tag, k);
    detail::check_branch_nu(tag, dc);
    const auto e = branch_exponents(tag, dc, k);
    JacobiForm f = make_jacobi_form(e.a, e.b, 0, beta, dc.zeta);
    f.log_abs_coeff = -0.5 * log_bare_norm_sq(e.a, e.b, 0, beta);
    return f;
}

/// ln C₁;ₙ: C² = β^(b+1)(2n+a+b+1) n! Γ(n+a+b+1) / (Γ(n+a+1)Γ(n+b+1)) · (E+m)/E.
[[nodiscard]] inline double log_normalization_constant(double a, double b, int n, double beta,
                                                       double energy, double m) {
    if (!(energy > 0.0)) throw DomainError("normalization requires E > 0");
    // The Γ ratio is 2^(a+b+1)/h_n with h_n the Jacobi norm; this form also covers n = 0.
    const double log_c2 = (b + 1.0) * std::log(beta) + (a + b + 1.0) * std::log(2.0) -
                          log_jacobi_norm_sq(n, a, b) + std::log((energy + m) / energy);
    return 0.5 * log_c2;
}

struct RadialWavefunction {
    JacobiForm large;
    JacobiForm small;
    QuantumNumbers quantum;
    Branch branch;
    double energy = 0;
    double e2_minus_m2 = 0;
    double mass = 0;
};

namespace detail {

struct BranchState {
    Branch branch;
    JacobiExponents ex;
    double e2 = 0;
    double energy = 0;
};

inline BranchState resolve(BranchTag tag, const DerivedConstants& dc, const ModelParams& p,
                           const QuantumNumbers& qn) {
    check_branch_k(tag, qn.k);
    if (qn.n < 0) throw DomainError("n must be >= 0");
    BranchState st;
    st.e2 = energy_sq_minus_msq(tag, p, qn.j, qn.n);
    st.energy = positive_energy(st.e2, p.m);
    st.branch = make_branch(tag, qn.k, dc);
    st.ex = branch_exponents(tag, dc, qn.k);
    return st;
}

}  // namespace detail

[[nodiscard]] inline double normalization_constant(BranchTag tag, const DerivedConstants& dc,
                                                   const ModelParams& p, const QuantumNumbers& qn) {
    const auto st = detail::resolve(tag, dc, p, qn);
    return std::exp(
        log_normalization_constant(st.ex.a, st.ex.b, qn.n, p.beta, st.energy, p.m));
}

[[nodiscard]] inline JacobiForm large_component(BranchTag tag, const DerivedConstants& dc,
                                                const ModelParams& p, const QuantumNumbers& qn) {
    const auto st = detail::resolve(tag, dc, p, qn);
    JacobiForm f = make_jacobi_form(st.ex.a, st.ex.b, qn.n, p.beta, dc.zeta);
    f.log_abs_coeff = log_normalization_constant(st.ex.a, st.ex.b, qn.n, p.beta, st.energy, p.m);
    return f;
}

/// R̃₂;ₙ = ω̃*/(E+m) · b⁻R₁;ₙ in closed form.
[[nodiscard]] inline JacobiForm small_component(BranchTag tag, const DerivedConstants& dc,
                                                const ModelParams& p, const QuantumNumbers& qn) {
    const auto st = detail::resolve(tag, dc, p, qn);
    const double a = st.ex.a;
    const double b = st.ex.b;
    const int n = qn.n;
    const double beta = p.beta;

    double d = 0;
    double a2 = a;
    double b2 = b;
    int deg = n;
    switch (tag) {
        case BranchTag::ZeroGS:
            if (n == 0) return zero_form(beta);
            d = 2.0 * beta * (n + a + b + 1.0);
            a2 = a + 1.0;
            b2 = b + 1.0;
            deg = n - 1;
            break;
        case BranchTag::PosSpinShifted:
            d = -2.0 * beta * (n + a);
            a2 = a - 1.0;
            b2 = b + 1.0;
            break;
        case BranchTag::NegSpinSameXi:
            d = 2.0 * (n + b);
            a2 = a + 1.0;
            b2 = b - 1.0;
            break;
        case BranchTag::NegSpinShifted:
            d = -2.0 * (n + 1.0);
            a2 = a - 1.0;
            b2 = b - 1.0;
            deg = n + 1;
            break;
    }
    JacobiForm f = make_jacobi_form(a2, b2, deg, beta, dc.zeta);
    const double log_c = log_normalization_constant(a, b, n, beta, st.energy, p.m);
    const cplx pref = std::conj(dc.omega_tilde) / (st.energy + p.m) * d;
    f.log_abs_coeff = log_c + std::log(std::abs(pref));
    f.coeff_phase = pref / std::abs(pref);
    return f;
}

[[nodiscard]] inline RadialWavefunction make_wavefunction(BranchTag tag, const ModelParams& p,
                                                          const QuantumNumbers& qn) {
    const DerivedConstants dc = derive_constants(p);
    RadialWavefunction w;
    w.large = large_component(tag, dc, p, qn);
    w.small = small_component(tag, dc, p, qn);
    w.quantum = qn;
    w.branch = make_branch(tag, qn.k, dc);
    w.e2_minus_m2 = energy_sq_minus_msq(tag, p, qn.j, qn.n);
    w.energy = positive_energy(w.e2_minus_m2, p.m);
    w.mass = p.m;
    return w;
}

/// ∫(|R₁|² + |R̃₂|²) dp/√(1−βp²) by quadrature.
[[nodiscard]] inline double joint_norm(const RadialWavefunction& w) {
    return quadrature_norm_sq(w.large) + quadrature_norm_sq(w.small);
}

// ============================================================================
// Intertwining
// ============================================================================

/// Residual of b⁻R₁ = ((E+m)/ω̃*) R̃₂ on the grid: max over midpoints with
/// θ ∈ [π/20, 9π/20] of |b⁻R₁ − ((E+m)/ω̃*)R̃₂|, divided by the max of the
/// right-hand side there. The window keeps the measurement away from the
/// endpoint singularities of some small components.
[[nodiscard]] inline double intertwining_residual(const RadialWavefunction& w,
                                                  const DerivedConstants& dc, GridPtr g) {
    const OperatorMatrix bm = build_b_minus(dc, w.quantum.k, g);
    const GridFunction lhs = bm.apply(sample_form(w.large, g, Stagger::Node));
    const GridFunction small = sample_form(w.small, g, Stagger::Mid);
    const cplx scale = (w.energy + w.mass) / std::conj(dc.omega_tilde);
    const double lo = std::numbers::pi / 20.0;
    const double hi = 9.0 * std::numbers::pi / 20.0;
    double num = 0;
    double den = 0;
    double lhs_max = 0;
    for (std::size_t i = 0; i < lhs.values.size(); ++i) {
        const double th = g->theta_mid[i];
        if (th < lo || th > hi) continue;
        const cplx rhs = scale * small.values[i];
        num = std::max(num, std::abs(lhs.values[i] - rhs));
        den = std::max(den, std::abs(rhs));
        lhs_max = std::max(lhs_max, std::abs(lhs.values[i]));
    }
    if (w.small.empty) {
        // b⁻R₁;₀ = 0: compare with the size of R₁ itself.
        double ref = 0;
        const GridFunction big = sample_form(w.large, g, Stagger::Mid);
        for (auto v : big.values) ref = std::max(ref, std::abs(v));
        return lhs_max / ref;
    }
    return num / den;
}

// ============================================================================
// Ladder recursion
// ============================================================================

/// Unit-norm level-n eigenfunction of b⁺b⁻ for the factorization (k', ξ'):
/// exponents a = ξ'/β − ½, b = k' − ½.
[[nodiscard]] inline JacobiForm unit_ladder_form(double k_prime, double xi_prime, double zeta,
                                                 double beta, int n) {
    const double a = xi_prime / beta - 0.5;
    const double b = k_prime - 0.5;
    JacobiForm f = make_jacobi_form(a, b, n, beta, zeta);
    f.log_abs_coeff = -0.5 * log_bare_norm_sq(a, b, n, beta);
    return f;
}

/// One step of the ladder: b⁺(k', ξ'+iζ) applied on the grid to the unit
/// level-(n−1) state of (k'+1, ξ'+β), divided by √(4n(β(n+k') + ξ')).
/// Returns node samples; equals unit_ladder_form(k', ξ', ζ, β, n) up to sign.
[[nodiscard]] inline GridFunction ladder_raise(double k_prime, double xi_prime, double zeta,
                                               int n, GridPtr g) {
    if (n < 1) throw DomainError("ladder_raise needs n >= 1");
    const double beta = g->beta;
    const JacobiForm inner = unit_ladder_form(k_prime + 1.0, xi_prime + beta, zeta, beta, n - 1);
    DerivedConstants dc;
    dc.beta = beta;
    dc.xi = xi_prime;
    dc.zeta = zeta;
    dc.eta = cplx(xi_prime, zeta);
    const int kk = static_cast<int>(std::lround(k_prime));
    if (std::abs(kk - k_prime) > 1e-12) throw DomainError("ladder_raise: k' must be an integer");
    const OperatorMatrix bp = build_b_plus(dc, kk, g);
    GridFunction out = bp.apply(sample_form(inner, g, Stagger::Mid));
    const double lvl = 4.0 * n * (beta * (n + k_prime) + xi_prime);
    for (auto& v : out.values) v /= std::sqrt(lvl);
    return out;
}

}  // namespace sds
