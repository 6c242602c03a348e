#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "bos/cli.hpp"
#include "bos/gauge.hpp"
#include "bos/hamiltonian.hpp"

namespace bos::cli {

namespace {

std::vector<double> logspace(double a, double b, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = a * std::pow(b / a, double(i) / (n - 1));
    return out;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Residual of w^4 - B w^2 + C relative to its largest term.
double quartic_residual(const PhysicalParams& p, double k, double w2) {
    const double a = std::abs(k), cth = 1.0 / std::tanh(p.h1 * a);
    const double den = p.rho * cth + p.rho1;
    const double B = p.g * p.rho * a * (1.0 + cth) / den;
    const double C = p.g * p.g * (p.rho - p.rho1) * k * k / den;
    const double t1 = w2 * w2, t2 = B * w2;
    return std::abs(t1 - t2 + C) / std::max({std::abs(t1), std::abs(t2), std::abs(C)});
}

void suite_quartic(const Config& c, std::vector<CheckRow>& rows) {
    const PhysicalParams p = physical_params(c);
    const double pert = c.num("verify.perturb");
    double r1 = 0.0, r2 = 0.0;
    for (double k : logspace(1e-2, 10.0, 100)) {
        r1 = std::max(r1, quartic_residual(p, k, dispersion_internal(p, k) * (1.0 + pert)));
        r2 = std::max(r2, quartic_residual(p, k, dispersion_surface(p, k) * (1.0 + pert)));
    }
    rows.push_back({"quartic", "interface root residual", r1, 1e-10});
    rows.push_back({"quartic", "surface root residual", r2, 1e-10});
}

void suite_eigen(const Config& c, std::vector<CheckRow>& rows) {
    const PhysicalParams p = physical_params(c);
    const double pert = c.num("verify.perturb");
    const auto ks = logspace(1e-3 / p.h1, 50.0 / p.h1, 60);
    const SymbolTable t = symbol_table(p, ks);
    double e = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double a = t.Qa[i], b = t.Qb[i], d = t.Qc[i];
        const double tr = a + d, det = a * d - b * b;
        const double big = 0.5 * (tr + std::sqrt((a - d) * (a - d) + 4.0 * b * b));
        const double small = det / big;
        e = std::max({e, rel(t.omega2[i] * (1.0 + pert), small), rel(t.omega1_2[i], big)});
        norm = std::max(norm, std::abs(t.a_plus[i] * t.a_plus[i] + t.b_plus[i] * t.b_plus[i] - 1.0));
    }
    rows.push_back({"eigen", "Q eigenvalues vs (w^2, w1^2)", e, 1e-10});
    rows.push_back({"eigen", "a+^2 + b+^2 - 1", norm, 1e-12});
}

void suite_resonance(const Config& c, std::vector<CheckRow>& rows) {
    const PhysicalParams p = physical_params(c);
    const auto m = derive_coefficients(p, c.num("scaling.epsilon"), c.num("scaling.delta"));
    rows.push_back({"resonance", "|w1'(k0) - c0| / c0", rel(0.5 * std::sqrt(p.g / m.k0), m.c0), 1e-12});
    rows.push_back({"resonance", "|kappa8|", std::abs(m.kappa[8]), 1e-12});
    rows.push_back({"resonance", "|Omega0 - c0^2| / c0^2", rel(m.Omega0, m.c0 * m.c0), 1e-14});
}

Grid ham_grid(const PhysicalParams& p, std::size_t n) { return Grid(n, 8.0 * std::numbers::pi * p.h1); }

void suite_hamiltonian(const Config& c, std::vector<CheckRow>& rows) {
    const PhysicalParams p = physical_params(c);
    const auto seed = static_cast<std::uint64_t>(c.integer("seed"));
    const long ns = c.integer("verify.samples");
    for (std::size_t n : {128u, 256u}) {
        const Grid g = ham_grid(p, n);
        const Hamiltonian H(g, p);
        double e2 = 0.0, e3 = 0.0;
        for (long s = 0; s < ns; ++s) {
            const auto f = random_four_field(g, p, seed * 1000 + s);
            const auto nf = H.normal_transform(f);
            e2 = std::max(e2, rel(H.eval_H2(nf), H.eval_H2(f)));
            e3 = std::max(e3, rel(H.eval_H3(nf).total, H.eval_H3(f).total));
        }
        rows.push_back({"hamiltonian", "H2 original vs normal, n=" + std::to_string(n), e2, 1e-10});
        rows.push_back({"hamiltonian", "H3 original vs normal, n=" + std::to_string(n), e3, 1e-10});
    }
}

void suite_decomposition(const Config& c, std::vector<CheckRow>& rows) {
    const PhysicalParams p = physical_params(c);
    const auto seed = static_cast<std::uint64_t>(c.integer("seed"));
    const Grid g = ham_grid(p, 128);
    const Hamiltonian H(g, p);
    double es = 0.0, er = 0.0;
    for (long s = 0; s < c.integer("verify.samples"); ++s) {
        const auto f = random_four_field(g, p, seed * 2000 + s);
        const auto k = H.kinetic_cubic_parts(f);
        const auto o = H.kinetic_cubic_operator_route(f);
        es = std::max(es, rel(k.signed_sum(), H.eval_H3(f).total));
        er = std::max({er, rel(o.I3, k.I3), rel(o.II3, k.II3), rel(o.III3, k.III3)});
    }
    rows.push_back({"decomposition", "I3 - II3 + III3 vs H3", es, 1e-10});
    rows.push_back({"decomposition", "parts via DNO operators", er, 1e-10});
}

void suite_gauge(const Config& c, std::vector<CheckRow>& rows) {
    const auto seed = static_cast<std::uint64_t>(c.integer("seed"));
    ReducedCoeffs rc{0.5, 1.0, 1.0, 0.5, 1.0, 1.0};
    const Grid g(256, 60.0);
    double u = 0.0, o = 0.0, r = 0.0, cj = 0.0;
    for (long s = 0; s < c.integer("verify.samples"); ++s) {
        const RVec f = random_band_limited(g, seed * 3000 + s, 0.3, true, 16);
        const auto d = gauge_diagnostics(g, f, rc);
        u = std::max(u, d.unimodularity);
        o = std::max(o, d.ode_residual / d.r_inf);
        r = std::max(r, d.reconstruction);
        cj = std::max(cj, d.conjugation);
    }
    rows.push_back({"gauge", "max ||Psi| - 1|", u, 1e-12});
    rows.push_back({"gauge", "gauge ODE residual / |r|_inf", o, 1e-8});
    rows.push_back({"gauge", "r_x reconstruction (relative)", r, 1e-10});
    rows.push_back({"gauge", "w- = conj(w+)", cj, 1e-12});
}

void suite_projections(const Config& c, std::vector<CheckRow>& rows) {
    const auto seed = static_cast<std::uint64_t>(c.integer("seed"));
    const Grid g(256, 50.0);
    double hh = 0.0, pp = 0.0, hp = 0.0, dh = 0.0;
    for (long s = 0; s < c.integer("verify.samples"); ++s) {
        const RVec f = random_band_limited(g, seed * 4000 + s, 1.0);
        const double m = mean(f);
        const RVec h2 = hilbert(g, hilbert(g, f));
        const CVec Pp = project(g, f, +1), Pm = project(g, f, -1);
        const RVec H = hilbert(g, f), D = abs_d(g, f), dH = deriv(g, H);
        for (std::size_t i = 0; i < g.n(); ++i) {
            hh = std::max(hh, std::abs(h2[i] + (f[i] - m)));
            pp = std::max(pp, std::abs(Pp[i] + Pm[i] - f[i]));
            hp = std::max(hp, std::abs(cplx(0, -1) * (Pp[i] - Pm[i]) - H[i]));
            dh = std::max(dh, std::abs(D[i] - dH[i]) / std::max(1.0, norm_inf(D)));
        }
    }
    rows.push_back({"projections", "H^2 = -I on mean-zero", hh, 1e-12});
    rows.push_back({"projections", "P+ + P- = I", pp, 1e-12});
    rows.push_back({"projections", "H = -i(P+ - P-)", hp, 1e-12});
    rows.push_back({"projections", "|D| = d/dx H", dh, 1e-12});
}

}  // namespace

std::vector<std::string> all_suites() {
    return {"quartic", "eigen", "resonance", "hamiltonian", "decomposition", "gauge", "projections"};
}

std::vector<CheckRow> run_suites(const Config& c, const std::vector<std::string>& suites) {
    std::vector<CheckRow> rows;
    for (const auto& s : suites) {
        if (s == "quartic")
            suite_quartic(c, rows);
        else if (s == "eigen")
            suite_eigen(c, rows);
        else if (s == "resonance")
            suite_resonance(c, rows);
        else if (s == "hamiltonian")
            suite_hamiltonian(c, rows);
        else if (s == "decomposition")
            suite_decomposition(c, rows);
        else if (s == "gauge")
            suite_gauge(c, rows);
        else if (s == "projections")
            suite_projections(c, rows);
        else
            throw ConfigError("unknown verification suite '" + s + "'");
    }
    return rows;
}

}  // namespace bos::cli
