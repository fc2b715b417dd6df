// Copyright 2026 The sdsdirac Authors
// SPDX-License-Identifier: Apache-2.0

// sds_cli: spectrum tables, regime classification, wavefunction samples,
// uncertainty bounds and verification suites.
//
// Exit status: 0 success, 2 invalid input, 3 failed verification suite.

#pragma once

#include "report.hpp"

#include <sdsdirac/sdsdirac.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace sds::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitVerifyFailed = 3;
inline constexpr int kDefaultGrid = 2000;

struct RunConfig {
    std::string command;
    ModelParams params;
    std::string j_text = "1/2";
    std::string s_text = "+1/2";
    int n = 0;
    int n_max = 4;
    std::string branch;  // empty: physical branch for (j, s)
    int grid = 0;        // 0: SDS_DEFAULT_GRID or 2000
    double tolerance = 1e-3;
    int levels = 5;
    std::string suite = "oracle";
    std::string scheme = "regularized";
    int samples = 64;
    double mean_x = 0;
    double mean_p = 0;
    std::string format = "json";
    std::string output;
};

// ---------------------------------------------------------------------------
// Parsing helpers
// ---------------------------------------------------------------------------

/// Twice the value of "0.5", "+1/2", "-3/2", "1.5", ...; throws if not a half-integer.
inline int parse_twice(const std::string& text, const char* what) {
    auto bad = [&]() {
        return ParameterError(std::string(what) + ": '" + text + "' is not a half-integer");
    };
    double v = 0;
    try {
        const auto slash = text.find('/');
        std::size_t used = 0;
        if (slash == std::string::npos) {
            v = std::stod(text, &used);
            if (used != text.size()) throw bad();
        } else {
            const std::string num = text.substr(0, slash);
            const std::string den = text.substr(slash + 1);
            const double a = std::stod(num, &used);
            if (used != num.size()) throw bad();
            const double b = std::stod(den, &used);
            if (used != den.size() || b == 0.0) throw bad();
            v = a / b;
        }
    } catch (const std::invalid_argument&) {
        throw bad();
    } catch (const std::out_of_range&) {
        throw bad();
    }
    const double t = 2.0 * v;
    if (!std::isfinite(t) || std::abs(t - std::round(t)) > 1e-12) throw bad();
    return static_cast<int>(std::lround(t));
}

inline HalfInt parse_j(const std::string& text) {
    const HalfInt j{parse_twice(text, "j")};
    check_total_j(j);
    return j;
}

inline Spin parse_s(const std::string& text) {
    const int t = parse_twice(text, "s");
    if (t == 1) return Spin::Up;
    if (t == -1) return Spin::Down;
    throw ParameterError("s must be +1/2 or -1/2, got '" + text + "'");
}

inline std::string spin_text(Spin s) { return s == Spin::Up ? "+1/2" : "-1/2"; }

inline std::string half_text(HalfInt j) {
    return j.twice % 2 == 0 ? std::to_string(j.twice / 2) : std::to_string(j.twice) + "/2";
}

inline int resolve_grid(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SDS_DEFAULT_GRID"); env && *env) {
        try {
            std::size_t used = 0;
            const int g = std::stoi(env, &used);
            if (used == std::string(env).size() && g > 0) return g;
        } catch (const std::exception&) {
        }
        throw ParameterError(std::string("SDS_DEFAULT_GRID='") + env + "' is not a positive integer");
    }
    return kDefaultGrid;
}

inline BranchTag resolve_branch(const RunConfig& c, const ModelParams& p, HalfInt j, Spin s) {
    if (!c.branch.empty()) return branch_from_string(c.branch);
    return physical_branch(p, j, s);
}

inline Scheme parse_scheme(const std::string& s) {
    if (s == "factorized") return Scheme::Factorized;
    if (s == "regularized") return Scheme::Regularized;
    throw ParameterError("unknown scheme '" + s + "'");
}

// ---------------------------------------------------------------------------
// Documents
// ---------------------------------------------------------------------------

using report::Json;

inline Json params_json(const ModelParams& p) {
    Json j = Json::object();
    j["alpha"] = p.alpha;
    j["beta"] = p.beta;
    j["lambda"] = p.lambda;
    j["m"] = p.m;
    j["omega"] = p.omega;
    return j;
}

inline Json make_doc(const RunConfig& c, const Json& branch, const Json& grid) {
    Json doc = Json::object();
    Json meta = Json::object();
    meta["command"] = c.command;
    meta["params"] = params_json(c.params);
    meta["branch"] = branch;
    meta["grid"] = grid;
    doc["meta"] = meta;
    doc["rows"] = Json::array();
    return doc;
}

inline Json cmd_spectrum(const RunConfig& c) {
    const HalfInt j = parse_j(c.j_text);
    const Spin s = parse_s(c.s_text);
    const BranchTag tag = resolve_branch(c, c.params, j, s);
    if (branch_spin(tag) != s) {
        throw InvalidBranchError(std::string(to_string(tag)) + " is not an s=" + spin_text(s) +
                                 " branch");
    }
    const SpectrumTable t = spectrum_table(tag, c.params, j, c.n_max);
    Json doc = make_doc(c, std::string(to_string(tag)), nullptr);
    doc["meta"]["j"] = half_text(j);
    doc["meta"]["s"] = spin_text(s);
    for (const auto& r : t.rows) {
        Json row = Json::object();
        row["n"] = r.n;
        row["N_principal"] = r.N_principal;
        row["E2_minus_m2"] = r.e2_minus_m2;
        row["E"] = r.energy;
        row["e_n"] = r.e_n;
        row["branch"] = std::string(to_string(tag));
        row["valid"] = true;
        row["physical"] = t.physical;
        row["epsilon_positivity_proven"] = t.epsilon_positivity_proven;
        row["energy_real"] = r.energy_real;
        doc["rows"].push_back(row);
    }
    return doc;
}

inline Json cmd_classify(const RunConfig& c) {
    const HalfInt j = parse_j(c.j_text);
    const Spin s = parse_s(c.s_text);
    Json doc = make_doc(c, nullptr, nullptr);
    doc["meta"]["j"] = half_text(j);
    doc["meta"]["s"] = spin_text(s);
    doc["meta"]["Q"] = regime_q(c.params);
    for (const auto& e : classify_regime(c.params, j, s)) {
        Json row = Json::object();
        row["branch"] = std::string(to_string(e.branch.tag));
        row["valid"] = e.valid;
        row["physical"] = e.physical;
        row["epsilon_positivity_proven"] = e.epsilon_positivity_proven;
        row["k_prime"] = e.branch.k_prime;
        row["xi_prime"] = e.branch.xi_prime;
        row["reason"] = e.reason;
        doc["rows"].push_back(row);
    }
    return doc;
}

inline Json cmd_wavefunction(const RunConfig& c) {
    const HalfInt j = parse_j(c.j_text);
    const Spin s = parse_s(c.s_text);
    const BranchTag tag = resolve_branch(c, c.params, j, s);
    if (c.samples < 1 || c.samples > 100000) throw ParameterError("samples must lie in [1, 100000]");
    const auto qn = make_quantum_numbers(j, s, c.n);
    const RadialWavefunction w = make_wavefunction(tag, c.params, qn);
    Json doc = make_doc(c, std::string(to_string(tag)), nullptr);
    doc["meta"]["j"] = half_text(j);
    doc["meta"]["s"] = spin_text(s);
    doc["meta"]["n"] = c.n;
    doc["meta"]["E"] = w.energy;
    doc["meta"]["joint_norm"] = joint_norm(w);
    const double rb = std::sqrt(c.params.beta);
    for (int i = 0; i < c.samples; ++i) {
        // Interior θ samples, mapped to p = sin θ / √β.
        const double th = (i + 1) * (0.5 * std::numbers::pi) / (c.samples + 1);
        const cplx r1 = w.large.eval_theta(th);
        const cplx r2 = w.small.eval_theta(th);
        Json row = Json::object();
        row["p"] = std::sin(th) / rb;
        row["re_R1"] = r1.real();
        row["im_R1"] = r1.imag();
        row["re_R2"] = r2.real();
        row["im_R2"] = r2.imag();
        doc["rows"].push_back(row);
    }
    return doc;
}

inline Json cmd_uncertainty(const RunConfig& c) {
    const UncertaintyReport u = uncertainty_bounds(c.params, c.mean_x, c.mean_p);
    Json doc = make_doc(c, nullptr, nullptr);
    Json row = Json::object();
    row["gamma"] = u.gamma;
    row["dx_min"] = u.dx_min;
    row["dp_min"] = u.dp_min;
    row["alpha_bar"] = u.alpha_bar;
    row["beta_bar"] = u.beta_bar;
    row["dx_bar_min"] = u.dx_bar_min;
    row["dp_bar_min"] = u.dp_bar_min;
    row["rescale"] = u.rescale;
    doc["rows"].push_back(row);
    return doc;
}

// ---------------------------------------------------------------------------
// Verification suites
// ---------------------------------------------------------------------------

inline Json check_row(const std::string& suite, const std::string& check, Json detail,
                      double residual, double tolerance) {
    Json row = Json::object();
    row["suite"] = suite;
    row["check"] = check;
    row["detail"] = std::move(detail);
    row["residual"] = residual;
    row["tolerance"] = tolerance;
    row["pass"] = residual <= tolerance;
    return row;
}

struct VerifyContext {
    ModelParams params;
    DerivedConstants dc;
    HalfInt j{1};
    Spin s = Spin::Up;
    int k = 1;
    BranchTag tag = BranchTag::ZeroGS;
    int grid = kDefaultGrid;
    int levels = 5;
    double tolerance = 1e-3;
    Scheme scheme = Scheme::Regularized;
};

inline void suite_oracle(const VerifyContext& v, Json& rows) {
    const SpectrumTable table = spectrum_table(v.tag, v.params, v.j, v.levels);
    const auto rep = diagonalize_h(v.dc, v.params, v.k, make_grid(v.params.beta, v.grid), v.levels,
                                   v.scheme);
    const auto cmp = compare_to_closed_form(rep, table, v.tolerance);
    for (const auto& lv : cmp.levels) {
        rows.push_back(check_row("oracle", "level",
                                 "n=" + std::to_string(lv.n) + " numeric=" +
                                     report::format_number(lv.numeric) +
                                     " exact=" + report::format_number(lv.exact),
                                 lv.rel_error, v.tolerance));
    }
    if (v.scheme == Scheme::Factorized) {
        const auto& h = rep.h_eigenvalues;
        const auto& hp = rep.partner_eigenvalues;
        const std::size_t skip = rep.has_zero_mode ? 1 : 0;
        double worst = 0;
        for (std::size_t i = skip; i < h.size() && i - skip < hp.size(); ++i) {
            worst = std::max(worst, std::abs(h[i] - hp[i - skip]));
        }
        rows.push_back(check_row("oracle", "partner_isospectral", "absolute", worst, 1e-6));
        rows.push_back(check_row("oracle", "psd", "-min eigenvalue", std::max(0.0, -h[0]), 1e-10));
    }
}

inline void suite_spectrum(const VerifyContext& v, Json& rows) {
    const Branch b = make_branch(v.tag, v.k, v.dc);
    const SpectrumTable table = spectrum_table(v.tag, v.params, v.j, v.levels - 1);
    for (const auto& r : table.rows) {
        const double route = v.dc.omega_tilde_sq * shape_invariance_level(b, v.dc, v.k, r.n);
        const double scale = std::max(std::abs(r.e2_minus_m2), 1e-300);
        rows.push_back(check_row("spectrum", "shape_invariance_route", "n=" + std::to_string(r.n),
                                 std::abs(route - r.e2_minus_m2) / scale, 1e-10));
        const double pf = principal_form(v.tag, v.params, v.j, r.N_principal);
        rows.push_back(check_row("spectrum", "principal_form", "N=" + std::to_string(r.N_principal),
                                 std::abs(pf - r.e2_minus_m2) / scale, 1e-12));
    }
    const double eps = ground_state_epsilon(v.tag, v.dc, v.params.beta, v.k);
    const double e0 = table.rows[0].e2_minus_m2;
    rows.push_back(check_row("spectrum", "ground_epsilon", "n=0",
                             std::abs(v.dc.omega_tilde_sq * eps - e0) /
                                 std::max(std::abs(e0), v.dc.omega_tilde_sq * 1e-12),
                             1e-10));
}

inline void suite_wavefunction(const VerifyContext& v, Json& rows) {
    const GridPtr g = make_grid(v.params.beta, v.grid);
    for (int n = 0; n < v.levels; ++n) {
        const auto w = make_wavefunction(v.tag, v.params, make_quantum_numbers(v.j, v.s, n));
        rows.push_back(check_row("wavefunction", "joint_norm", "n=" + std::to_string(n),
                                 std::abs(joint_norm(w) - 1.0), 1e-8));
        rows.push_back(check_row("wavefunction", "intertwining", "n=" + std::to_string(n),
                                 intertwining_residual(w, v.dc, g), v.tolerance));
    }
}

inline void suite_lambda(const VerifyContext& v, Json& rows) {
    const GridPtr g = make_grid(v.params.beta, std::clamp(v.grid, kOracleMinGrid, kOracleMaxGrid));
    const double lambdas[] = {0.0, 0.5, 1.0};
    for (double l1 : lambdas) {
        for (double l2 : lambdas) {
            if (!(l1 < l2)) continue;
            ModelParams a = v.params;
            ModelParams b = v.params;
            a.lambda = l1;
            b.lambda = l2;
            rows.push_back(check_row("lambda", "invariance",
                                     "lambda=" + report::format_number(l1) + "," +
                                         report::format_number(l2),
                                     lambda_invariance_check(a, b, v.k, g, v.levels), 1e-8));
        }
    }
}

inline Json cmd_verify(const RunConfig& c, bool& all_pass) {
    VerifyContext v;
    v.params = c.params;
    v.dc = derive_constants(c.params);
    v.j = parse_j(c.j_text);
    v.s = parse_s(c.s_text);
    v.k = kappa_of(v.j, v.s);
    v.tag = resolve_branch(c, c.params, v.j, v.s);
    v.grid = resolve_grid(c.grid);
    v.levels = c.levels;
    v.tolerance = c.tolerance;
    v.scheme = parse_scheme(c.scheme);
    if (v.levels < 1 || v.levels > kOracleMaxLevels) {
        throw ParameterError("levels must lie in [1, " + std::to_string(kOracleMaxLevels) + "]");
    }
    if (!(v.tolerance > 0.0)) throw ParameterError("tolerance must be > 0");

    Json grid = Json::object();
    grid["N"] = v.grid;
    grid["scheme"] = std::string(to_string(v.scheme));
    Json doc = make_doc(c, std::string(to_string(v.tag)), grid);
    doc["meta"]["j"] = half_text(v.j);
    doc["meta"]["s"] = spin_text(v.s);
    doc["meta"]["suite"] = c.suite;

    Json& rows = doc["rows"];
    const bool every = c.suite == "all";
    bool known = every;
    if (every || c.suite == "oracle") {
        suite_oracle(v, rows);
        known = true;
    }
    if (every || c.suite == "spectrum") {
        suite_spectrum(v, rows);
        known = true;
    }
    if (every || c.suite == "wavefunction") {
        suite_wavefunction(v, rows);
        known = true;
    }
    if (every || c.suite == "lambda") {
        suite_lambda(v, rows);
        known = true;
    }
    if (!known) throw ParameterError("unknown suite '" + c.suite + "'");
    all_pass = true;
    for (const auto& r : rows) all_pass = all_pass && r["pass"].get<bool>();
    doc["meta"]["pass"] = all_pass;
    return doc;
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

inline std::string one_line(std::string s) {
    for (char& ch : s) {
        if (ch == '\n' || ch == '\r') ch = ' ';
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s;
}

inline void add_physics_options(CLI::App* sub, RunConfig& c) {
    sub->add_option("--alpha", c.params.alpha, "deformation alpha (> 0)")->required();
    sub->add_option("--beta", c.params.beta, "deformation beta (> 0)")->required();
    sub->add_option("--m", c.params.m, "mass (> 0)")->capture_default_str();
    sub->add_option("--omega", c.params.omega, "oscillator frequency (> 0)")->capture_default_str();
    sub->add_option("--lambda", c.params.lambda, "gauge parameter")->capture_default_str();
}

inline void add_output_options(CLI::App* sub, RunConfig& c) {
    sub->add_option("--format", c.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    sub->add_option("--output", c.output, "output file (default: standard output)");
}

inline void add_quantum_options(CLI::App* sub, RunConfig& c) {
    sub->add_option("--j", c.j_text, "total angular momentum (0.5, 3/2, ...)")->capture_default_str();
    sub->add_option("--s", c.s_text, "spin projection (+1/2 or -1/2)")->capture_default_str();
}

/// Runs the tool; returns the exit status. Reports go to `out`, diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Dirac oscillator with Snyder-de Sitter deformation", "sds_cli"};
    app.require_subcommand(1);

    auto* sp = app.add_subcommand("spectrum", "closed-form spectrum table");
    add_physics_options(sp, c);
    add_quantum_options(sp, c);
    sp->add_option("--n-max", c.n_max, "highest radial quantum number")->capture_default_str();
    sp->add_option("--branch", c.branch, "branch tag (default: physical branch)");
    add_output_options(sp, c);

    auto* cl = app.add_subcommand("classify", "branch validity for (j, s)");
    add_physics_options(cl, c);
    add_quantum_options(cl, c);
    add_output_options(cl, c);

    auto* wf = app.add_subcommand("wavefunction", "sample R1 and R2 on interior momenta");
    add_physics_options(wf, c);
    add_quantum_options(wf, c);
    wf->add_option("--n", c.n, "radial quantum number")->capture_default_str();
    wf->add_option("--branch", c.branch, "branch tag (default: physical branch)");
    wf->add_option("--samples", c.samples, "number of sample points")->capture_default_str();
    add_output_options(wf, c);

    auto* un = app.add_subcommand("uncertainty", "minimal uncertainties");
    add_physics_options(un, c);
    un->add_option("--mean-x", c.mean_x, "<X>")->capture_default_str();
    un->add_option("--mean-p", c.mean_p, "<P>")->capture_default_str();
    add_output_options(un, c);

    auto* ve = app.add_subcommand("verify", "run a verification suite");
    add_physics_options(ve, c);
    add_quantum_options(ve, c);
    ve->add_option("--suite", c.suite, "oracle, spectrum, wavefunction, lambda or all")
        ->capture_default_str();
    ve->add_option("--branch", c.branch, "branch tag (default: physical branch)");
    ve->add_option("--grid", c.grid, "grid size N (default: $SDS_DEFAULT_GRID or 2000)");
    ve->add_option("--tolerance", c.tolerance, "relative tolerance")->capture_default_str();
    ve->add_option("--levels", c.levels, "number of levels")->capture_default_str();
    ve->add_option("--scheme", c.scheme, "factorized or regularized")
        ->check(CLI::IsMember({"factorized", "regularized"}))
        ->capture_default_str();
    add_output_options(ve, c);

    try {
        std::vector<std::string> args;
        for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: usage: " << one_line(e.what()) << "\n";
        return kExitInvalid;
    }

    for (auto* sub : app.get_subcommands()) c.command = sub->get_name();

    try {
        Json doc;
        bool pass = true;
        validate(c.params);
        if (c.command == "spectrum") doc = cmd_spectrum(c);
        else if (c.command == "classify") doc = cmd_classify(c);
        else if (c.command == "wavefunction") doc = cmd_wavefunction(c);
        else if (c.command == "uncertainty") doc = cmd_uncertainty(c);
        else doc = cmd_verify(c, pass);

        const std::string text = c.format == "csv" ? report::to_csv(doc["rows"]) : report::to_json(doc);
        if (c.output.empty()) {
            out << text;
        } else {
            report::write_atomic(c.output, text);
        }
        if (!pass) {
            err << "error: verification: suite '" << c.suite << "' failed\n";
            return kExitVerifyFailed;
        }
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.code() << ": " << one_line(e.what()) << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        err << "error: io: " << one_line(e.what()) << "\n";
        return kExitInvalid;
    }
}

}  // namespace sds::cli
