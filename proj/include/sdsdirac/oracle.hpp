// Copyright 2026 The sdsdirac Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file oracle.hpp
 * @brief Numerical diagonalization of H = b⁺b⁻, independent of the closed forms.
 *
 * Two discretizations are available.
 *
 * Factorized: H = BᴴB with B the staggered two-band b⁻ of radial_ops. It is a
 * Hermitian tridiagonal matrix, positive semidefinite by construction, and
 * its partner BBᴴ is available for the supersymmetry check.
 *
 * Regularized: after the gauge transform, b⁺b⁻ is the Pöschl–Teller operator
 *     β[−∂² + k(k−1)/sin²θ + ν(ν−1)/cos²θ − (k+ν)²].
 * Writing ψ = sin^κ cos^γ · v with the regular indicial roots κ = max(k, 1−k),
 * γ = max(ν, 1−ν) gives the weighted form
 *     −(1/W)(W v')' β + β(κ+γ)² − β(k+ν)²,   W = sin^{2κ} cos^{2γ},
 * discretized with exact cell integrals of W (linear finite elements with
 * lumped mass). Its spectrum converges as O(h²) on every branch, including
 * those with eigenfunctions ∝ cos^{1−ν}θ where the factorized scheme is slow.
 */

#pragma once

#include <sdsdirac/deformation.hpp>
#include <sdsdirac/errors.hpp>
#include <sdsdirac/radial_ops.hpp>
#include <sdsdirac/specfun.hpp>
#include <sdsdirac/spectrum.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <limits>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace sds {

inline constexpr int kOracleMinGrid = 256;
inline constexpr int kOracleMaxGrid = 4096;
inline constexpr int kOracleMaxLevels = 12;
inline constexpr double kZeroModeRelTol = 1e-6;

enum class Scheme { Factorized, Regularized };

[[nodiscard]] constexpr std::string_view to_string(Scheme s) noexcept {
    return s == Scheme::Factorized ? "factorized" : "regularized";
}

// ============================================================================
// Tridiagonal linear algebra
// ============================================================================

/// Hermitian tridiagonal matrix: real diagonal, complex superdiagonal.
struct HermitianTridiagonal {
    std::vector<double> diag;
    std::vector<cplx> off;  ///< off[i] = H(i, i+1)

    [[nodiscard]] int size() const noexcept { return static_cast<int>(diag.size()); }

    [[nodiscard]] std::vector<cplx> apply(const std::vector<cplx>& u) const {
        const int n = size();
        std::vector<cplx> out(n);
        for (int i = 0; i < n; ++i) {
            cplx acc = diag[i] * u[i];
            if (i > 0) acc += std::conj(off[i - 1]) * u[i - 1];
            if (i + 1 < n) acc += off[i] * u[i + 1];
            out[i] = acc;
        }
        return out;
    }
};

namespace detail {

/// Diagonal unitary D with H = D T Dᴴ, T real symmetric with |off|.
inline std::vector<cplx> gauge_to_real(const HermitianTridiagonal& h, std::vector<double>& sub) {
    const int n = h.size();
    std::vector<cplx> d(n, cplx(1.0, 0.0));
    sub.assign(n > 0 ? n - 1 : 0, 0.0);
    for (int i = 0; i + 1 < n; ++i) {
        const double mag = std::abs(h.off[i]);
        sub[i] = mag;
        d[i + 1] = mag > 0.0 ? d[i] * std::conj(h.off[i]) / mag : d[i];
    }
    return d;
}

inline std::vector<double> tridiagonal_eigenvalues(const std::vector<double>& diag,
                                                   const std::vector<double>& sub) {
    const int n = static_cast<int>(diag.size());
    if (n == 1) return {diag[0]};
    Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(diag.data(), n);
    Eigen::VectorXd e = Eigen::Map<const Eigen::VectorXd>(sub.data(), n - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericError("tridiagonal eigensolver did not converge");
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
    std::sort(ev.begin(), ev.end());
    return ev;
}

/// Solves (T − σ) y = x for real symmetric tridiagonal T with partial pivoting.
inline std::vector<double> shifted_solve(const std::vector<double>& diag,
                                         const std::vector<double>& sub, double sigma,
                                         std::vector<double> x) {
    const int n = static_cast<int>(diag.size());
    // Row i of U holds u0 (diagonal), u1, u2 (two superdiagonals after pivoting).
    std::vector<double> u0(n), u1(n, 0.0), u2(n, 0.0);
    std::vector<double> lo(n, 0.0);
    std::vector<char> swapped(n, 0);
    const double tiny = std::numeric_limits<double>::epsilon() *
                        (1.0 + std::abs(sigma) + (n > 1 ? *std::max_element(sub.begin(), sub.end()) : 0.0));
    // Working rows: current row (c0, c1, c2) and the next row (n0, n1).
    double c0 = diag[0] - sigma;
    double c1 = n > 1 ? sub[0] : 0.0;
    double c2 = 0.0;
    for (int i = 0; i < n; ++i) {
        if (i + 1 < n) {
            double r0 = sub[i];
            double r1 = diag[i + 1] - sigma;
            double r2 = i + 2 < n ? sub[i + 1] : 0.0;
            if (std::abs(r0) > std::abs(c0)) {
                std::swap(c0, r0);
                std::swap(c1, r1);
                std::swap(c2, r2);
                std::swap(x[i], x[i + 1]);
                swapped[i] = 1;
            }
            if (c0 == 0.0) c0 = tiny;
            const double l = r0 / c0;
            lo[i] = l;
            x[i + 1] -= l * x[i];
            u0[i] = c0;
            u1[i] = c1;
            u2[i] = c2;
            c0 = r1 - l * c1;
            c1 = r2 - l * c2;
            c2 = 0.0;
        } else {
            u0[i] = c0 == 0.0 ? tiny : c0;
            u1[i] = 0.0;
            u2[i] = 0.0;
        }
    }
    std::vector<double> y(n);
    for (int i = n - 1; i >= 0; --i) {
        double acc = x[i];
        if (i + 1 < n) acc -= u1[i] * y[i + 1];
        if (i + 2 < n) acc -= u2[i] * y[i + 2];
        y[i] = acc / u0[i];
    }
    return y;
}

/// Inverse iteration for the eigenvector of a known eigenvalue.
inline std::vector<double> inverse_iteration(const std::vector<double>& diag,
                                             const std::vector<double>& sub, double lambda) {
    const int n = static_cast<int>(diag.size());
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = 1.0 + 0.1 * std::sin(1.0 + 0.7 * i);
    const double sigma = lambda + 1e-13 * (1.0 + std::abs(lambda));
    for (int it = 0; it < 4; ++it) {
        x = shifted_solve(diag, sub, sigma, std::move(x));
        double nrm = 0;
        for (double v : x) nrm += v * v;
        nrm = std::sqrt(nrm);
        if (!(nrm > 0.0) || !std::isfinite(nrm)) throw NumericError("inverse iteration failed");
        for (double& v : x) v /= nrm;
    }
    return x;
}

}  // namespace detail

/// Ascending eigenvalues of a Hermitian tridiagonal matrix.
[[nodiscard]] inline std::vector<double> eigenvalues(const HermitianTridiagonal& h) {
    std::vector<double> sub;
    (void)detail::gauge_to_real(h, sub);
    return detail::tridiagonal_eigenvalues(h.diag, sub);
}

/// Unit eigenvector (Euclidean norm) for the eigenvalue lambda.
[[nodiscard]] inline std::vector<cplx> eigenvector(const HermitianTridiagonal& h, double lambda) {
    std::vector<double> sub;
    const auto d = detail::gauge_to_real(h, sub);
    const auto x = detail::inverse_iteration(h.diag, sub, lambda);
    std::vector<cplx> u(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) u[i] = d[i] * x[i];
    return u;
}

/// H = BᴴB (nodes) from the two-band b⁻.
[[nodiscard]] inline HermitianTridiagonal gram_lower(const OperatorMatrix& b) {
    if (b.from != Stagger::Node || b.col_offset != -1) {
        throw NumericError("gram_lower expects b- mapping nodes to midpoints");
    }
    const int n = b.cols;
    HermitianTridiagonal h;
    h.diag.assign(n, 0.0);
    h.off.assign(n > 0 ? n - 1 : 0, cplx{});
    for (int i = 0; i < n; ++i) {
        h.diag[i] = std::norm(b.band1[i]) + std::norm(b.band0[i + 1]);
        if (i + 1 < n) h.off[i] = std::conj(b.band0[i + 1]) * b.band1[i + 1];
    }
    return h;
}

/// Partner BBᴴ (midpoints).
[[nodiscard]] inline HermitianTridiagonal gram_upper(const OperatorMatrix& b) {
    const int rows = b.rows;
    const int cols = b.cols;
    HermitianTridiagonal h;
    h.diag.assign(rows, 0.0);
    h.off.assign(rows > 0 ? rows - 1 : 0, cplx{});
    for (int r = 0; r < rows; ++r) {
        const int c0 = r + b.col_offset;
        double d = 0;
        if (c0 >= 0 && c0 < cols) d += std::norm(b.band0[r]);
        if (c0 + 1 >= 0 && c0 + 1 < cols) d += std::norm(b.band1[r]);
        h.diag[r] = d;
        // Rows r and r+1 share column c0 + 1.
        if (r + 1 < rows && c0 + 1 >= 0 && c0 + 1 < cols) {
            h.off[r] = b.band1[r] * std::conj(b.band0[r + 1]);
        }
    }
    return h;
}

// ============================================================================
// Regularized scheme
// ============================================================================

namespace detail {

/// ∫_lo^hi f with f ~ (x−lo)^sa at lo and (hi−x)^sb at hi, via a Gauss–Jacobi rule.
template <class F>
double cell_integral(F&& f, double lo, double hi, const QuadratureRule& rule) {
    const double half = 0.5 * (hi - lo);
    const double sa = rule.b;  // (1+z) ↔ x − lo
    const double sb = rule.a;  // (1−z) ↔ hi − x
    double acc = 0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double z = rule.nodes[q];
        const double x = lo + (z + 1.0) * half;
        const double dl = x - lo;
        const double dh = hi - x;
        double den = 1.0;
        if (sa != 0.0) den *= std::pow(dl, sa);
        if (sb != 0.0) den *= std::pow(dh, sb);
        acc += rule.weights[q] * f(x) / den;
    }
    return acc * std::pow(half, 1.0 + sa + sb);
}

inline constexpr int kCellQuadOrder = 12;

}  // namespace detail

struct RegularizedOperator {
    std::vector<double> diag;
    std::vector<double> sub;
    double shift = 0;    ///< added to every eigenvalue
    int first_node = 0;  ///< index of the first kept node (after trimming)
};

/// Symmetric tridiagonal form of the weighted problem on `cells` uniform cells.
[[nodiscard]] inline RegularizedOperator build_regularized(double beta, double nu, int k,
                                                           int cells) {
    const double kap = std::max<double>(k, 1.0 - k);
    const double gam = std::max(nu, 1.0 - nu);
    const double h = 0.5 * std::numbers::pi / cells;
    auto w = [&](double t) {
        return std::pow(std::sin(t), 2.0 * kap) * std::pow(std::cos(t), 2.0 * gam);
    };
    const QuadratureRule plain = gauss_jacobi(detail::kCellQuadOrder, 0.0, 0.0);
    const QuadratureRule left = gauss_jacobi(detail::kCellQuadOrder, 0.0, 2.0 * kap);
    const QuadratureRule right = gauss_jacobi(detail::kCellQuadOrder, 2.0 * gam, 0.0);

    std::vector<double> wcell(cells);
    std::vector<double> mass(cells + 1, 0.0);
    for (int c = 0; c < cells; ++c) {
        const double lo = c * h;
        const double hi = (c + 1) * h;
        const double mid = 0.5 * (lo + hi);
        const QuadratureRule& full =
            c == 0 ? left : (c == cells - 1 ? right : plain);
        wcell[c] = detail::cell_integral(w, lo, hi, full);
        mass[c] += detail::cell_integral(w, lo, mid, c == 0 ? left : plain);
        mass[c + 1] += detail::cell_integral(w, mid, hi, c == cells - 1 ? right : plain);
    }

    // Nodes with negligible mass make the problem ill-conditioned; the
    // eigenfunctions vanish there to all printed digits.
    const double mmax = *std::max_element(mass.begin(), mass.end());
    int lo_keep = 0;
    int hi_keep = cells;
    while (lo_keep < cells && !(mass[lo_keep] > 1e-24 * mmax)) ++lo_keep;
    while (hi_keep > lo_keep && !(mass[hi_keep] > 1e-24 * mmax)) --hi_keep;

    const int n = hi_keep - lo_keep + 1;
    if (n < 8) throw NumericError("regularized scheme: too few nodes with non-negligible weight");
    std::vector<double> stiff_diag(n, 0.0), stiff_off(n - 1, 0.0);
    for (int c = lo_keep; c < hi_keep; ++c) {
        const double s = beta * wcell[c] / (h * h);
        const int i = c - lo_keep;
        stiff_diag[i] += s;
        stiff_diag[i + 1] += s;
        stiff_off[i] -= s;
    }
    // Trimmed neighbour cells keep their stiffness on the surviving node
    // (homogeneous Neumann data there is immaterial at this weight).
    if (lo_keep > 0) stiff_diag[0] += beta * wcell[lo_keep - 1] / (h * h);
    if (hi_keep < cells) stiff_diag[n - 1] += beta * wcell[hi_keep] / (h * h);

    RegularizedOperator op;
    op.diag.resize(n);
    op.sub.resize(n - 1);
    for (int i = 0; i < n; ++i) op.diag[i] = stiff_diag[i] / mass[lo_keep + i];
    for (int i = 0; i + 1 < n; ++i) {
        op.sub[i] = stiff_off[i] / std::sqrt(mass[lo_keep + i] * mass[lo_keep + i + 1]);
    }
    op.shift = beta * ((kap + gam) * (kap + gam) - (k + nu) * (k + nu));
    op.first_node = lo_keep;
    return op;
}

// ============================================================================
// Reports
// ============================================================================

struct EigenReport {
    ModelParams params;
    int k = 1;
    int grid_size = 0;
    Scheme scheme = Scheme::Factorized;
    std::vector<double> h_eigenvalues;        ///< lowest L, ascending
    /// Lowest L eigenvalues of BBᴴ above the zero-mode threshold (factorized
    /// scheme only). BBᴴ is one row larger than BᴴB, so it always carries an
    /// extra exact zero: the grid image of the non-normalizable kernel of b⁺.
    std::vector<double> partner_eigenvalues;
    /// λ₀ ≤ 1e−6·(λ₁ − λ₀).
    bool has_zero_mode = false;
    double zero_mode_threshold = 0;
    /// ‖G u − λu‖ / (‖u‖ · max(|λ|, λ₁ − λ₀)) with G the expanded second-order
    /// form of b⁺b⁻ (factorized scheme only).
    std::vector<double> expanded_form_residuals;
};

namespace detail {

inline void check_oracle_args(int n, int n_levels) {
    if (n < kOracleMinGrid || n > kOracleMaxGrid) {
        throw ParameterError("oracle grid size must lie in [" + std::to_string(kOracleMinGrid) +
                             ", " + std::to_string(kOracleMaxGrid) + "]");
    }
    if (n_levels < 1 || n_levels > kOracleMaxLevels) {
        throw ParameterError("n_levels must lie in [1, " + std::to_string(kOracleMaxLevels) + "]");
    }
}

/// Expanded operator
///   −β∂² + 2iζ tanθ ∂ + β(k²−k)/sin² + (|η|²/β − η*)/cos² − k²β − 2kξ − |η|²/β
/// applied with central differences and zero Dirichlet data.
inline std::vector<cplx> apply_expanded_form(const DerivedConstants& dc, int k,
                                             const RadialGrid& g, const std::vector<cplx>& u) {
    const int n = g.size;
    const double beta = dc.beta;
    const double h = g.h;
    const double eta2 = std::norm(dc.eta);
    const cplx c_cos = eta2 / beta - std::conj(dc.eta);
    const double c0 = -static_cast<double>(k) * k * beta - 2.0 * k * dc.xi - eta2 / beta;
    std::vector<cplx> out(n);
    for (int i = 0; i < n; ++i) {
        const double th = g.theta_nodes[i];
        const cplx um = i > 0 ? u[i - 1] : cplx{};
        const cplx up = i + 1 < n ? u[i + 1] : cplx{};
        const double s = std::sin(th);
        const double c = std::cos(th);
        out[i] = -beta * (up - 2.0 * u[i] + um) / (h * h) +
                 cplx(0, 2.0 * dc.zeta * s / c) * (up - um) / (2.0 * h) +
                 (beta * (static_cast<double>(k) * k - k) / (s * s) + c_cos / (c * c) + c0) * u[i];
    }
    return out;
}

}  // namespace detail

/// Lowest eigenvalues of H = b⁺b⁻ for (params, k) on the given grid.
[[nodiscard]] inline EigenReport diagonalize_h(const DerivedConstants& dc, const ModelParams& params,
                                               int k, const GridPtr& grid, int n_levels,
                                               Scheme scheme = Scheme::Factorized) {
    detail::check_oracle_args(grid->size, n_levels);
    EigenReport rep;
    rep.params = params;
    rep.k = k;
    rep.grid_size = grid->size;
    rep.scheme = scheme;

    if (scheme == Scheme::Regularized) {
        if (k == 0) throw DomainError("k = s(2j+1) cannot be zero");
        const RegularizedOperator op = build_regularized(dc.beta, dc.nu(), k, grid->size);
        auto ev = detail::tridiagonal_eigenvalues(op.diag, op.sub);
        const int L = std::min<int>(n_levels, static_cast<int>(ev.size()));
        for (int i = 0; i < L; ++i) rep.h_eigenvalues.push_back(ev[i] + op.shift);
        return rep;
    }

    const OperatorMatrix b = build_b_minus(dc, k, grid);
    const HermitianTridiagonal h = gram_lower(b);
    const HermitianTridiagonal hp = gram_upper(b);
    const auto ev = eigenvalues(h);
    const auto evp = eigenvalues(hp);
    const int L = std::min<int>(n_levels, static_cast<int>(ev.size()));
    rep.h_eigenvalues.assign(ev.begin(), ev.begin() + L);
    rep.zero_mode_threshold = kZeroModeRelTol * (ev[1] - ev[0]);
    rep.has_zero_mode = ev[0] <= rep.zero_mode_threshold;
    for (double v : evp) {
        if (static_cast<int>(rep.partner_eigenvalues.size()) == L) break;
        if (v > rep.zero_mode_threshold) rep.partner_eigenvalues.push_back(v);
    }

    const double spacing = ev.size() > 1 ? ev[1] - ev[0] : 1.0;
    for (int i = 0; i < L; ++i) {
        const auto u = eigenvector(h, ev[i]);
        const auto gu = detail::apply_expanded_form(dc, k, *grid, u);
        double r2 = 0, n2 = 0;
        for (int q = 0; q < grid->size; ++q) {
            r2 += std::norm(gu[q] - ev[i] * u[q]);
            n2 += std::norm(u[q]);
        }
        rep.expanded_form_residuals.push_back(std::sqrt(r2 / n2) /
                                              std::max(std::abs(ev[i]), spacing));
    }
    return rep;
}

/// Zero-mode (lowest) eigenvector of the factorized H as node samples, unit norm.
[[nodiscard]] inline GridFunction lowest_eigenvector(const DerivedConstants& dc, int k,
                                                     const GridPtr& grid) {
    const HermitianTridiagonal h = gram_lower(build_b_minus(dc, k, grid));
    const auto ev = eigenvalues(h);
    GridFunction f{grid, Stagger::Node, eigenvector(h, ev[0])};
    const double nrm = norm(f);
    for (auto& v : f.values) v /= nrm;
    return f;
}

// ============================================================================
// Comparison with the closed forms
// ============================================================================

struct LevelComparison {
    int n = 0;
    double numeric = 0;
    double exact = 0;
    double rel_error = 0;
};

struct ComparisonReport {
    std::vector<LevelComparison> levels;
    double max_rel_error = 0;
    double tolerance = 0;
    bool pass = false;
};

/// Relative error with the level spacing as the scale of a zero level.
[[nodiscard]] inline double level_rel_error(double numeric, double exact, double spacing) {
    const double scale = std::max(std::abs(exact), exact == 0.0 ? std::abs(spacing) : 0.0);
    return std::abs(numeric - exact) / (scale > 0.0 ? scale : 1.0);
}

[[nodiscard]] inline ComparisonReport compare_to_closed_form(const EigenReport& report,
                                                             const SpectrumTable& table,
                                                             double tolerance) {
    const std::size_t L = report.h_eigenvalues.size();
    if (table.rows.size() < L) {
        throw NumericError("level-count mismatch: " + std::to_string(L) + " eigenvalues vs " +
                           std::to_string(table.rows.size()) + " table rows");
    }
    const double spacing = table.rows.size() > 1 ? table.rows[1].e_n - table.rows[0].e_n : 1.0;
    ComparisonReport c;
    c.tolerance = tolerance;
    for (std::size_t i = 0; i < L; ++i) {
        LevelComparison lv;
        lv.n = static_cast<int>(i);
        lv.numeric = report.h_eigenvalues[i];
        lv.exact = table.rows[i].e_n;
        lv.rel_error = level_rel_error(lv.numeric, lv.exact, spacing);
        c.max_rel_error = std::max(c.max_rel_error, lv.rel_error);
        c.levels.push_back(lv);
    }
    c.pass = c.max_rel_error <= tolerance;
    return c;
}

/// Spacing h of a scheme at grid size N.
[[nodiscard]] inline double scheme_spacing(Scheme s, int n) {
    return 0.5 * std::numbers::pi / (s == Scheme::Factorized ? n + 1 : n);
}

struct ConvergenceStudy {
    Scheme scheme = Scheme::Factorized;
    std::vector<int> sizes;
    std::vector<double> max_errors;       ///< max relative error over the compared levels
    std::vector<double> observed_orders;  ///< between consecutive sizes
    double richardson_error = 0;          ///< order-2 extrapolation of the two finest grids
};

[[nodiscard]] inline ConvergenceStudy convergence_study(const DerivedConstants& dc,
                                                        const ModelParams& params, int k,
                                                        const SpectrumTable& table,
                                                        const std::vector<int>& sizes,
                                                        int n_levels, Scheme scheme) {
    if (sizes.size() < 2) throw ParameterError("convergence study needs at least two grids");
    ConvergenceStudy st;
    st.scheme = scheme;
    st.sizes = sizes;
    std::vector<std::vector<double>> vals;
    const double spacing = table.rows.size() > 1 ? table.rows[1].e_n - table.rows[0].e_n : 1.0;
    for (int n : sizes) {
        const auto rep = diagonalize_h(dc, params, k, make_grid(params.beta, n), n_levels, scheme);
        st.max_errors.push_back(compare_to_closed_form(rep, table, 1.0).max_rel_error);
        vals.push_back(rep.h_eigenvalues);
    }
    for (std::size_t i = 1; i < sizes.size(); ++i) {
        const double r = scheme_spacing(scheme, sizes[i - 1]) / scheme_spacing(scheme, sizes[i]);
        st.observed_orders.push_back(std::log(st.max_errors[i - 1] / st.max_errors[i]) /
                                     std::log(r));
    }
    const std::size_t f = sizes.size() - 1;
    const double r = scheme_spacing(scheme, sizes[f - 1]) / scheme_spacing(scheme, sizes[f]);
    const double r2 = r * r;
    double worst = 0;
    for (std::size_t i = 0; i < vals[f].size(); ++i) {
        const double ext = (r2 * vals[f][i] - vals[f - 1][i]) / (r2 - 1.0);
        worst = std::max(worst, level_rel_error(ext, table.rows[i].e_n, spacing));
    }
    st.richardson_error = worst;
    return st;
}

// ============================================================================
// Zero mode under refinement
// ============================================================================

struct ZeroModeStudy {
    std::vector<int> sizes;
    std::vector<double> lowest;  ///< λ₀ per grid
    double gap = 0;              ///< λ₁ − λ₀ on the finest grid
    double extrapolated = 0;     ///< iterated Aitken Δ² estimate of λ₀ as h → 0
    bool has_zero_mode = false;  ///< extrapolated ≤ 1e−6 · gap
};

namespace detail {

/// Aitken Δ² of three terms; returns the last term unless they converge geometrically.
inline double aitken(double a, double b, double c) {
    const double d1 = b - a;
    const double d2 = c - b;
    if (d1 * d2 > 0.0 && std::abs(d2) < std::abs(d1)) return c - d2 * d2 / (d2 - d1);
    return c;
}

}  // namespace detail

/// λ₀ of the factorized H on N+1 = 256 … 4096 (exact halving of h) and its
/// extrapolation to h → 0 by Aitken's Δ² applied twice. A true zero mode
/// converges only like h^(2ν−1), so the threshold is applied to the
/// extrapolated value.
[[nodiscard]] inline ZeroModeStudy zero_mode_study(const DerivedConstants& dc, int k) {
    ZeroModeStudy z;
    z.sizes = {255, 511, 1023, 2047, 4095};
    for (int n : z.sizes) {
        const auto ev = eigenvalues(gram_lower(build_b_minus(dc, k, make_grid(dc.beta, n))));
        z.lowest.push_back(ev[0]);
        z.gap = ev[1] - ev[0];
    }
    const auto& l = z.lowest;
    const double a0 = detail::aitken(l[0], l[1], l[2]);
    const double a1 = detail::aitken(l[1], l[2], l[3]);
    const double a2 = detail::aitken(l[2], l[3], l[4]);
    z.extrapolated = detail::aitken(a0, a1, a2);
    z.has_zero_mode = z.extrapolated <= kZeroModeRelTol * z.gap;
    return z;
}

// ============================================================================
// λ invariance
// ============================================================================

/// Max relative difference between the factorized spectra at two gauges.
[[nodiscard]] inline double lambda_invariance_check(const ModelParams& p1, const ModelParams& p2,
                                                    int k, const GridPtr& grid, int n_levels = 6) {
    if (p1.alpha != p2.alpha || p1.beta != p2.beta || p1.m != p2.m || p1.omega != p2.omega) {
        throw ParameterError("lambda_invariance_check: parameters must differ only in lambda");
    }
    const auto r1 = diagonalize_h(derive_constants(p1), p1, k, grid, n_levels);
    const auto r2 = diagonalize_h(derive_constants(p2), p2, k, grid, n_levels);
    const auto& a = r1.h_eigenvalues;
    const auto& b = r2.h_eigenvalues;
    const double spacing = a.size() > 1 ? a[1] - a[0] : 1.0;
    double worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double scale = std::max({std::abs(a[i]), std::abs(b[i]), spacing});
        worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
    }
    return worst;
}

}  // namespace sds
