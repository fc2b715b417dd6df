// Copyright 2026 The sdsdirac Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file radial_ops.hpp
 * @brief Discrete radial problem: compactified grid, ladder operators b±,
 *        weighted inner product and the radial ⟨P²⟩ quadratic form.
 *
 * All numerics use p = sin θ / √β, θ ∈ (0, π/2). Then
 *     dp / √(1 − βp²) = dθ / √β          (flat measure)
 *     √(1 − βp²) ∂_p  = √β ∂_θ
 * and the ladder operators become
 *     b⁻ =  √β ∂_θ − k√β cot θ + (η̄/√β) tan θ,
 *     b⁺ = −√β ∂_θ − k√β cot θ + (η /√β) tan θ.
 *
 * Discretization is staggered: node functions live on θ_i = (i+1)h,
 * i = 0..N−1, and b⁻ maps them to cell midpoints θ_{i+½}, i = 0..N
 * (Dirichlet values at θ = 0 and θ = π/2). b⁺ maps midpoints back to
 * nodes. The imaginary parts of η enter as gauge links
 * exp(i(φ(θ) − φ(θ'))) with φ = −(ζ/β) ln cos θ, so a change of λ is an
 * exact diagonal unitary on the discrete level too.
 */

#pragma once

#include <sdsdirac/deformation.hpp>
#include <sdsdirac/errors.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

namespace sds {

inline constexpr int kMinGridSize = 3;

// ============================================================================
// Grid
// ============================================================================

struct RadialGrid {
    double beta = 0;
    int size = 0;                     ///< N interior nodes
    double h = 0;                     ///< (π/2)/(N+1)
    std::vector<double> theta_nodes;  ///< (i+1)h
    std::vector<double> p_nodes;      ///< sin θ_i / √β
    std::vector<double> theta_mid;    ///< (i+½)h, N+1 entries
    std::vector<double> p_mid;

    /// Flat quadrature weight h/√β shared by every sample.
    [[nodiscard]] double weight() const noexcept { return h / std::sqrt(beta); }
};

using GridPtr = std::shared_ptr<const RadialGrid>;

[[nodiscard]] inline GridPtr make_grid(double beta, int size) {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("grid: beta must be > 0");
    if (size < kMinGridSize) {
        throw ParameterError("grid: size must be >= " + std::to_string(kMinGridSize));
    }
    auto g = std::make_shared<RadialGrid>();
    g->beta = beta;
    g->size = size;
    g->h = 0.5 * std::numbers::pi / (size + 1);
    const double rb = std::sqrt(beta);
    g->theta_nodes.resize(size);
    g->p_nodes.resize(size);
    for (int i = 0; i < size; ++i) {
        g->theta_nodes[i] = (i + 1) * g->h;
        g->p_nodes[i] = std::sin(g->theta_nodes[i]) / rb;
    }
    g->theta_mid.resize(size + 1);
    g->p_mid.resize(size + 1);
    for (int i = 0; i <= size; ++i) {
        g->theta_mid[i] = (i + 0.5) * g->h;
        g->p_mid[i] = std::sin(g->theta_mid[i]) / rb;
    }
    return g;
}

// ============================================================================
// Grid functions
// ============================================================================

/// Where samples of a GridFunction live.
enum class Stagger { Node, Mid };

struct GridFunction {
    GridPtr grid;
    Stagger where = Stagger::Node;
    std::vector<cplx> values;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
    [[nodiscard]] const std::vector<double>& thetas() const {
        return where == Stagger::Node ? grid->theta_nodes : grid->theta_mid;
    }
};

[[nodiscard]] inline std::size_t sample_count(const RadialGrid& g, Stagger w) {
    return w == Stagger::Node ? g.theta_nodes.size() : g.theta_mid.size();
}

[[nodiscard]] inline GridFunction zero_function(GridPtr g, Stagger w = Stagger::Node) {
    GridFunction f{g, w, {}};
    f.values.assign(sample_count(*g, w), cplx{});
    return f;
}

/// Samples fn(θ) at the chosen stagger.
template <class F>
[[nodiscard]] GridFunction sample(GridPtr g, Stagger w, F&& fn) {
    GridFunction f{g, w, {}};
    const auto& th = w == Stagger::Node ? g->theta_nodes : g->theta_mid;
    f.values.resize(th.size());
    for (std::size_t i = 0; i < th.size(); ++i) f.values[i] = cplx(fn(th[i]));
    return f;
}

namespace detail {

inline void check_same_grid(const GridFunction& f, const GridFunction& g) {
    if (!f.grid || !g.grid) throw NumericError("grid function without grid");
    const bool same = f.grid == g.grid ||
                      (f.grid->size == g.grid->size && f.grid->beta == g.grid->beta);
    if (!same || f.where != g.where || f.values.size() != g.values.size()) {
        throw NumericError("grid mismatch between grid functions");
    }
}

}  // namespace detail

/// ⟨f|g⟩ = Σ conj(f_i) g_i · h/√β  ≈  ∫ dp/√(1−βp²) f* g.
[[nodiscard]] inline cplx inner_product(const GridFunction& f, const GridFunction& g) {
    detail::check_same_grid(f, g);
    cplx acc{};
    for (std::size_t i = 0; i < f.values.size(); ++i) acc += std::conj(f.values[i]) * g.values[i];
    return acc * f.grid->weight();
}

[[nodiscard]] inline double norm(const GridFunction& f) {
    return std::sqrt(std::max(0.0, inner_product(f, f).real()));
}

[[nodiscard]] inline GridFunction operator-(GridFunction a, const GridFunction& b) {
    detail::check_same_grid(a, b);
    for (std::size_t i = 0; i < a.values.size(); ++i) a.values[i] -= b.values[i];
    return a;
}

[[nodiscard]] inline GridFunction operator*(cplx s, GridFunction a) {
    for (auto& v : a.values) v *= s;
    return a;
}

// ============================================================================
// Ladder operators
// ============================================================================

enum class OperatorLabel { BMinus, BPlus, BMinusAdjoint, Hamiltonian, PSquared };

/// Two-band operator between node and midpoint samples. Row r couples to
/// columns r + col_offset (band0) and r + col_offset + 1 (band1); entries
/// whose column falls outside [0, cols) are zero.
struct OperatorMatrix {
    GridPtr grid;
    OperatorLabel label = OperatorLabel::BMinus;
    Stagger from = Stagger::Node;
    Stagger to = Stagger::Mid;
    int rows = 0;
    int cols = 0;
    int col_offset = 0;
    std::vector<cplx> band0;
    std::vector<cplx> band1;

    [[nodiscard]] GridFunction apply(const GridFunction& f) const {
        if (f.where != from || static_cast<int>(f.values.size()) != cols) {
            throw NumericError("operator applied to a function on the wrong stagger/size");
        }
        GridFunction out{grid, to, std::vector<cplx>(rows)};
        for (int r = 0; r < rows; ++r) {
            const int c0 = r + col_offset;
            cplx acc{};
            if (c0 >= 0 && c0 < cols) acc += band0[r] * f.values[c0];
            if (c0 + 1 >= 0 && c0 + 1 < cols) acc += band1[r] * f.values[c0 + 1];
            out.values[r] = acc;
        }
        return out;
    }

    /// Conjugate transpose with respect to the flat measure.
    [[nodiscard]] OperatorMatrix adjoint() const {
        OperatorMatrix a;
        a.grid = grid;
        a.label = OperatorLabel::BMinusAdjoint;
        a.from = to;
        a.to = from;
        a.rows = cols;
        a.cols = rows;
        // Entry (r, c) moves to (c, r). For row c of the adjoint the
        // contributing original rows are c − col_offset − 1 and c − col_offset.
        a.col_offset = -col_offset - 1;
        a.band0.assign(a.rows, cplx{});
        a.band1.assign(a.rows, cplx{});
        for (int c = 0; c < a.rows; ++c) {
            const int r1 = c - col_offset - 1;  // original row with band1 at column c
            const int r0 = c - col_offset;      // original row with band0 at column c
            if (r1 >= 0 && r1 < rows) a.band0[c] = std::conj(band1[r1]);
            if (r0 >= 0 && r0 < rows) a.band1[c] = std::conj(band0[r0]);
        }
        return a;
    }

    [[nodiscard]] Eigen::MatrixXcd to_dense() const {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows, cols);
        for (int r = 0; r < rows; ++r) {
            const int c0 = r + col_offset;
            if (c0 >= 0 && c0 < cols) m(r, c0) += band0[r];
            if (c0 + 1 >= 0 && c0 + 1 < cols) m(r, c0 + 1) += band1[r];
        }
        return m;
    }
};

namespace detail {

/// Gauge phase φ(θ) = (Im c / (σβ)) ln cos θ of σ√β∂ + i Im(c) tan θ/√β.
inline double gauge_phase(double theta, double im_c, double sigma, double beta) {
    return im_c / (sigma * beta) * std::log(std::cos(theta));
}

/// Assembles σ√β ∂_θ − k√β cot θ + (c/√β) tan θ with staggered differences.
/// σ = +1 maps nodes → midpoints, σ = −1 maps midpoints → nodes.
inline OperatorMatrix assemble_ladder(double sigma, cplx c, int k, GridPtr g,
                                      OperatorLabel label) {
    const double beta = g->beta;
    const double rb = std::sqrt(beta);
    const double h = g->h;
    const int n = g->size;
    auto real_potential = [&](double th) {
        return -k * rb / std::tan(th) + c.real() / rb * std::tan(th);
    };
    auto phase = [&](double th) { return gauge_phase(th, c.imag(), sigma, beta); };

    OperatorMatrix op;
    op.grid = g;
    op.label = label;
    if (sigma > 0) {
        op.from = Stagger::Node;
        op.to = Stagger::Mid;
        op.rows = n + 1;
        op.cols = n;
        op.col_offset = -1;
    } else {
        op.from = Stagger::Mid;
        op.to = Stagger::Node;
        op.rows = n;
        op.cols = n + 1;
        op.col_offset = 0;
    }
    op.band0.assign(op.rows, cplx{});
    op.band1.assign(op.rows, cplx{});

    const auto& row_theta = sigma > 0 ? g->theta_mid : g->theta_nodes;
    const auto& col_theta = sigma > 0 ? g->theta_nodes : g->theta_mid;
    for (int r = 0; r < op.rows; ++r) {
        const double tr = row_theta[r];
        const double phr = phase(tr);
        for (int side = 0; side < 2; ++side) {
            const int col = r + op.col_offset + side;
            if (col < 0 || col >= op.cols) continue;
            const double tc = col_theta[col];
            // Derivative weight: ±σ√β/h; potential is averaged over the two
            // samples, evaluated on the midpoint grid.
            const double d = (side == 0 ? -1.0 : 1.0) * sigma * rb / h;
            const double v = sigma > 0 ? 0.5 * real_potential(tr) : 0.5 * real_potential(tc);
            const cplx link = std::polar(1.0, phr - phase(tc));
            (side == 0 ? op.band0 : op.band1)[r] = link * (d + v);
        }
    }
    return op;
}

inline void check_k(int k) {
    if (k == 0) throw DomainError("k = s(2j+1) cannot be zero");
}

}  // namespace detail

/// b⁻ (nodes → midpoints).
[[nodiscard]] inline OperatorMatrix build_b_minus(const DerivedConstants& dc, int k, GridPtr g) {
    detail::check_k(k);
    return detail::assemble_ladder(+1.0, std::conj(dc.eta), k, std::move(g), OperatorLabel::BMinus);
}

/// b⁺ (midpoints → nodes), assembled from its own formula rather than by adjoining b⁻.
[[nodiscard]] inline OperatorMatrix build_b_plus(const DerivedConstants& dc, int k, GridPtr g) {
    detail::check_k(k);
    return detail::assemble_ladder(-1.0, dc.eta, k, std::move(g), OperatorLabel::BPlus);
}

// ============================================================================
// ⟨P²⟩ quadratic form
// ============================================================================

struct PSquaredResult {
    double value = 0;
    double imag_residue = 0;  ///< |Im| of the discrete quadratic form
    double tail_exponent = 0; ///< fitted power of the integrand near θ = π/2
};

/// ⟨R/p | P²_p | R/p⟩ with the measure p² dp/√(1−βp²), for f = R sampled on nodes.
/// P²_p = −(α/β)[(1−βp²)(p⁻²∂_p p²∂_p − l(l+1)/p²) − βp∂_p] − 2i√(α/β)(1−λ)p∂_p
///        + (1−λ)((1−λ) − iβ√(α/β)) p²/(1−βp²) − 3i√(α/β)(1−λ),
/// the radial part of P_iP_i for P_i = −i√(α/β)√(1−βp²)∂_i + (1−λ)p_i/√(1−βp²).
/// Throws DivergenceError when the integrand grows like (π/2 − θ)^s with s ≤ −1.
[[nodiscard]] inline PSquaredResult p_squared_expectation(const DerivedConstants& dc,
                                                          const ModelParams& params, int l,
                                                          const GridFunction& f) {
    if (l < 0) throw DomainError("orbital quantum number l must be >= 0");
    if (f.where != Stagger::Node) throw NumericError("p_squared_expectation expects node samples");
    const RadialGrid& g = *f.grid;
    const int n = g.size;
    const double beta = g.beta;
    const double rb = std::sqrt(beta);
    const double r_ab = std::sqrt(params.alpha / params.beta);
    const double one_l = 1.0 - params.lambda;
    const double ll = static_cast<double>(l) * (l + 1);
    const double h = g.h;
    (void)dc;

    std::vector<cplx> psi(n);
    for (int i = 0; i < n; ++i) psi[i] = f.values[i] / g.p_nodes[i];

    std::vector<double> density(n, 0.0);
    cplx total{};
    for (int i = 1; i + 1 < n; ++i) {
        const double th = g.theta_nodes[i];
        const double c = std::cos(th);
        const double s = std::sin(th);
        const double p = g.p_nodes[i];
        const cplx d1 = (psi[i + 1] - psi[i - 1]) / (2.0 * h);
        const cplx d2 = (psi[i + 1] - 2.0 * psi[i] + psi[i - 1]) / (h * h);
        const cplx dp = rb * d1 / c;
        const cplx dpp = beta * (d2 / (c * c) + s * d1 / (c * c * c));
        const cplx lap = dpp + 2.0 * dp / p - ll * psi[i] / (p * p);
        const cplx p2 = -(params.alpha / beta) * (c * c * lap - beta * p * dp) -
                        cplx(0, 2.0 * r_ab * one_l) * p * dp +
                        one_l * cplx(one_l, -r_ab * beta) * p * p * psi[i] / (c * c) -
                        cplx(0, 3.0 * r_ab * one_l) * psi[i];
        const cplx integrand = p * p / rb * std::conj(psi[i]) * p2;
        density[i] = std::abs(integrand);
        total += integrand * h;
    }

    // Power-law fit of |integrand| against x = π/2 − θ on the outer 5% of the range.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    const double x_hi = 0.05 * std::numbers::pi / 2;
    for (int i = 1; i + 1 < n; ++i) {
        const double x = std::numbers::pi / 2 - g.theta_nodes[i];
        if (x > x_hi || x < 3.0 * h || !(density[i] > 0.0)) continue;
        const double lx = std::log(x);
        const double ly = std::log(density[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++cnt;
    }
    PSquaredResult res;
    if (cnt >= 4) {
        res.tail_exponent = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
        if (res.tail_exponent <= -1.0) {
            throw DivergenceError("<P^2> diverges at beta*p^2 -> 1 (integrand ~ x^" +
                                  std::to_string(res.tail_exponent) +
                                  "); the finite-momentum condition xi_tilde > 1/2 is violated");
        }
    }
    res.value = total.real();
    res.imag_residue = std::abs(total.imag());
    return res;
}

}  // namespace sds
