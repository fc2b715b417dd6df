// Copyright 2026 The sdsdirac Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file deformation.hpp
 * @brief Model parameters of the deformed algebra, derived constants,
 *        minimal-uncertainty bounds and regime classification.
 *
 * Units: ħ = c = 1. α carries inverse length², β inverse momentum².
 * The algebra in one dimension reads
 *     [X, P] = i(1 + αX² + βP² + √(αβ)(PX + XP)),
 * which yields strictly positive lower bounds on ΔX and ΔP.
 */

#pragma once

#include <sdsdirac/errors.hpp>

#include <cmath>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace sds {

using cplx = std::complex<double>;

// ============================================================================
// Quantum-number helpers
// ============================================================================

/// Half-integer stored as twice its value (j = 3/2 is HalfInt{3}).
struct HalfInt {
    int twice = 1;

    [[nodiscard]] constexpr double value() const noexcept { return 0.5 * twice; }
    [[nodiscard]] static constexpr HalfInt from_twice(int t) noexcept { return HalfInt{t}; }
    friend constexpr bool operator==(HalfInt, HalfInt) = default;
};

/// Spin projection s = ±1/2.
enum class Spin { Up, Down };

[[nodiscard]] constexpr double spin_value(Spin s) noexcept { return s == Spin::Up ? 0.5 : -0.5; }

/// Validates j ∈ {1/2, 3/2, ...}.
inline void check_total_j(HalfInt j) {
    if (j.twice < 1 || j.twice % 2 == 0) {
        throw DomainError("j must be a positive half-integer (1/2, 3/2, ...), got twice(j)=" +
                          std::to_string(j.twice));
    }
}

/// k = s(2j+1); never zero, |k| = j + 1/2.
[[nodiscard]] inline int kappa_of(HalfInt j, Spin s) {
    check_total_j(j);
    const int mag = (j.twice + 1) / 2;
    return s == Spin::Up ? mag : -mag;
}

// ============================================================================
// Parameters and derived constants
// ============================================================================

struct ModelParams {
    double alpha = 0.0;   ///< deformation, inverse length²
    double beta = 0.0;    ///< deformation, inverse momentum²
    double lambda = 0.5;  ///< gauge parameter of the momentum representation
    double m = 1.0;
    double omega = 1.0;

    [[nodiscard]] double m_omega() const noexcept { return m * omega; }
};

/// Throws ParameterError unless α, β, m, ω > 0 and λ is finite.
inline void validate(const ModelParams& p) {
    auto positive = [](double v, std::string_view name) {
        if (!std::isfinite(v) || !(v > 0.0)) {
            throw ParameterError(std::string(name) + " must be finite and > 0, got " +
                                 std::to_string(v));
        }
    };
    positive(p.alpha, "alpha");
    positive(p.beta, "beta");
    positive(p.m, "m");
    positive(p.omega, "omega");
    if (!std::isfinite(p.lambda)) throw ParameterError("lambda must be finite");
}

struct DerivedConstants {
    double beta = 0.0;
    cplx omega_tilde;            ///< mω + i√(α/β)
    double omega_tilde_sq = 0;   ///< m²ω² + α/β
    double xi_tilde = 0;         ///< mω / (α + βm²ω²)
    double zeta_tilde = 0;       ///< (√(α/β)(1−λ) − m²ω²λ√(β/α)) / (α + βm²ω²)
    double xi = 0;               ///< β ξ̃
    double zeta = 0;             ///< β ζ̃
    cplx eta;                    ///< ξ + iζ

    /// ξ/β, the exponent of cos θ in the zero-mode solution of b⁻.
    [[nodiscard]] double nu() const noexcept { return xi / beta; }
};

[[nodiscard]] inline DerivedConstants derive_constants(const ModelParams& p) {
    validate(p);
    const double mw = p.m_omega();
    const double mw2 = mw * mw;
    const double r_ab = std::sqrt(p.alpha / p.beta);
    const double r_ba = std::sqrt(p.beta / p.alpha);
    const double den = p.alpha + p.beta * mw2;

    DerivedConstants dc;
    dc.beta = p.beta;
    dc.omega_tilde = cplx(mw, r_ab);
    dc.omega_tilde_sq = mw2 + p.alpha / p.beta;
    dc.xi_tilde = mw / den;
    dc.zeta_tilde = (r_ab * (1.0 - p.lambda) - mw2 * p.lambda * r_ba) / den;
    dc.xi = p.beta * dc.xi_tilde;
    dc.zeta = p.beta * dc.zeta_tilde;
    dc.eta = cplx(dc.xi, dc.zeta);
    return dc;
}

// ============================================================================
// Minimal uncertainties
// ============================================================================

struct UncertaintyReport {
    double gamma = 0;      ///< (√α⟨X⟩ + √β⟨P⟩)²
    double dx_min = 0;
    double dp_min = 0;
    double alpha_bar = 0;  ///< α / (1 + √(αβ))
    double beta_bar = 0;   ///< β / (1 + √(αβ))
    /// Minimal rescaled uncertainties of ΔX̄ΔP̄ ≥ ½(1 + ᾱΔX̄² + β̄ΔP̄²).
    double dx_bar_min = 0;
    double dp_bar_min = 0;
    /// ΔX = scale · ΔX̄ (same for P), scale = √((1+γ)/(1+√(αβ))).
    double rescale = 0;
};

/// Kempf-form minimum: ΔX̄² (1 − ᾱβ̄) ≥ β̄ from the discriminant of the saturated relation.
[[nodiscard]] inline double kempf_min_dx(double alpha_bar, double beta_bar) {
    return std::sqrt(beta_bar / (1.0 - alpha_bar * beta_bar));
}

[[nodiscard]] inline UncertaintyReport uncertainty_bounds(const ModelParams& p, double mean_x,
                                                          double mean_p) {
    if (!std::isfinite(p.alpha) || !(p.alpha > 0) || !std::isfinite(p.beta) || !(p.beta > 0)) {
        throw ParameterError("alpha and beta must be finite and > 0");
    }
    if (!std::isfinite(mean_x) || !std::isfinite(mean_p)) {
        throw ParameterError("expectation values must be finite");
    }
    const double sab = std::sqrt(p.alpha * p.beta);
    const double shift = std::sqrt(p.alpha) * mean_x + std::sqrt(p.beta) * mean_p;

    UncertaintyReport r;
    r.gamma = shift * shift;
    r.dx_min = std::sqrt(p.beta * (1.0 + r.gamma) / (1.0 + 2.0 * sab));
    r.dp_min = std::sqrt(p.alpha * (1.0 + r.gamma) / (1.0 + 2.0 * sab));
    r.alpha_bar = p.alpha / (1.0 + sab);
    r.beta_bar = p.beta / (1.0 + sab);
    r.dx_bar_min = kempf_min_dx(r.alpha_bar, r.beta_bar);
    r.dp_bar_min = kempf_min_dx(r.beta_bar, r.alpha_bar);
    r.rescale = std::sqrt((1.0 + r.gamma) / (1.0 + sab));
    return r;
}

// ============================================================================
// Branches and regime classification
// ============================================================================

/// Ground-state factorization families.
enum class BranchTag { ZeroGS, PosSpinShifted, NegSpinSameXi, NegSpinShifted };

inline constexpr BranchTag kAllBranches[] = {BranchTag::ZeroGS, BranchTag::PosSpinShifted,
                                             BranchTag::NegSpinSameXi, BranchTag::NegSpinShifted};

[[nodiscard]] constexpr std::string_view to_string(BranchTag t) noexcept {
    switch (t) {
        case BranchTag::ZeroGS: return "ZeroGS";
        case BranchTag::PosSpinShifted: return "PosSpinShifted";
        case BranchTag::NegSpinSameXi: return "NegSpinSameXi";
        case BranchTag::NegSpinShifted: return "NegSpinShifted";
    }
    return "?";
}

[[nodiscard]] inline BranchTag branch_from_string(std::string_view s) {
    for (auto t : kAllBranches) {
        if (to_string(t) == s) return t;
    }
    throw ParameterError("unknown branch '" + std::string(s) + "'");
}

[[nodiscard]] constexpr Spin branch_spin(BranchTag t) noexcept {
    return (t == BranchTag::ZeroGS || t == BranchTag::PosSpinShifted) ? Spin::Up : Spin::Down;
}

/// True for the two branches with ξ' = β − ξ.
[[nodiscard]] constexpr bool branch_shifts_xi(BranchTag t) noexcept {
    return t == BranchTag::PosSpinShifted || t == BranchTag::NegSpinShifted;
}

struct Branch {
    BranchTag tag = BranchTag::ZeroGS;
    Spin s = Spin::Up;
    double k_prime = 0;   ///< k (s=+1/2) or 1−k (s=−1/2)
    double xi_prime = 0;  ///< ξ or β−ξ
};

[[nodiscard]] inline Branch make_branch(BranchTag tag, int k, const DerivedConstants& dc) {
    Branch b;
    b.tag = tag;
    b.s = branch_spin(tag);
    b.k_prime = b.s == Spin::Up ? k : 1.0 - k;
    b.xi_prime = branch_shifts_xi(tag) ? dc.beta - dc.xi : dc.xi;
    return b;
}

/// Q(mω) = β m²ω² − 2mω + α. Q < 0 ⟺ ξ̃ > 1/2 ⟺ zero-energy ground state.
[[nodiscard]] inline double regime_q(const ModelParams& p) noexcept {
    const double mw = p.m_omega();
    return p.beta * mw * mw - 2.0 * mw + p.alpha;
}

struct RegimeEntry {
    Branch branch;
    bool valid = false;
    /// Exponents also satisfy the finite-⟨P²⟩ condition (a_J > 0).
    bool physical = false;
    /// NegSpinShifted only: ground-state positivity is proven only for 4αβ > 1.
    bool epsilon_positivity_proven = true;
    std::string reason;
};

/// Classifies all four branches for (params, j, s). Throws RegimeBoundaryError on Q = 0.
[[nodiscard]] inline std::vector<RegimeEntry> classify_regime(const ModelParams& p, HalfInt j,
                                                              Spin s) {
    const DerivedConstants dc = derive_constants(p);
    const int k = kappa_of(j, s);
    const double q = regime_q(p);
    if (q == 0.0) {
        throw RegimeBoundaryError("Q(m*omega)=0: parameters on the regime boundary");
    }
    const bool inside = q < 0.0;  // ξ̃ > 1/2
    const bool up = s == Spin::Up;

    std::vector<RegimeEntry> out;
    out.reserve(4);
    for (auto tag : kAllBranches) {
        RegimeEntry e;
        e.branch = make_branch(tag, k, dc);
        switch (tag) {
            case BranchTag::ZeroGS:
                e.valid = up && inside;
                e.physical = e.valid;
                e.reason = !up ? "spin_mismatch:k>0_required"
                               : (inside ? "ok:Q<0" : "domain:xi_tilde<=1/2(Q>0)");
                break;
            case BranchTag::PosSpinShifted:
                e.valid = up && !inside;
                e.physical = e.valid;
                e.reason = !up ? "spin_mismatch:k>0_required"
                               : (!inside ? "ok:Q>0" : "domain:xi_tilde>=1/2(Q<0)");
                break;
            case BranchTag::NegSpinSameXi:
                e.valid = !up;
                e.physical = !up && inside;
                e.reason = up ? "spin_mismatch:k<0_required"
                              : (inside ? "ok:xi>0" : "ok:xi>0;unphysical:P2_requires_Q<0");
                break;
            case BranchTag::NegSpinShifted:
                e.valid = !up && !inside;
                e.physical = e.valid;
                e.epsilon_positivity_proven = 4.0 * p.alpha * p.beta > 1.0;
                e.reason = up ? "spin_mismatch:k<0_required"
                              : (!inside ? "ok:Q>0" : "domain:xi_tilde>=1/2(Q<0)");
                if (e.valid && !e.epsilon_positivity_proven) e.reason += ";flag:4ab<=1";
                break;
        }
        out.push_back(std::move(e));
    }
    return out;
}

/// The branch that carries the physical spectrum for (params, j, s).
[[nodiscard]] inline BranchTag physical_branch(const ModelParams& p, HalfInt j, Spin s) {
    for (const auto& e : classify_regime(p, j, s)) {
        if (e.valid && e.physical) return e.branch.tag;
    }
    throw InvalidBranchError("no physical branch for these parameters");
}

}  // namespace sds
