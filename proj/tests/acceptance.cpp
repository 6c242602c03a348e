// Acceptance criteria 1-12: one PASS/FAIL line each, with the measured value,
// tolerance and runtime. Exit status is non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "bos/gauge.hpp"
#include "bos/hamiltonian.hpp"
#include "bos/solver.hpp"
#include "oracles.hpp"

using namespace bos;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string sci(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.3e", v);
    return b;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::vector<PhysicalParams> random_params(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ug(9.7, 9.9), uh(50.0, 1000.0), ur(1000.0, 1030.0), uf(0.95, 0.999);
    std::vector<PhysicalParams> out;
    for (int i = 0; i < count; ++i) {
        PhysicalParams p;
        p.g = ug(rng);
        p.h1 = uh(rng);
        p.rho = ur(rng);
        p.rho1 = p.rho * uf(rng);
        out.push_back(p);
    }
    return out;
}

std::vector<double> logspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a * std::pow(b / a, double(i) / (n - 1));
    return v;
}

const ReducedCoeffs UNIT{0.5, 1.0, 1.0, 0.5, 1.0, 1.0};

SystemState smooth_state(const Grid& g, double amp) {
    return {gaussian_r(g, amp, 2.0), gaussian_q(g, amp, 3.0, 4), 0.0};
}

SystemState evolve(const Grid& g, const SystemState& s, const ReducedCoeffs& c, Scheme sch, double dt, double T) {
    StepperConfig cfg;
    cfg.dt = dt;
    cfg.scheme = sch;
    RunOptions o;
    o.t_end = T;
    o.diagnostics_every = 0;
    o.gauge_diagnostics = false;
    return run(g, s, cfg, c, o).final_state;
}

double state_dist(const Grid& g, const SystemState& a, const SystemState& b) {
    RVec dr(a.r.size());
    CVec dq(a.q.size());
    for (std::size_t i = 0; i < dr.size(); ++i) {
        dr[i] = a.r[i] - b.r[i];
        dq[i] = a.q[i] - b.q[i];
    }
    return std::hypot(norm_l2(g, dr), norm_l2(g, dq));
}

// ---------------------------------------------------------------- criteria

Outcome c1_resonance() {
    auto ps = random_params(101, 20);
    ps.insert(ps.begin(), {PhysicalParams::andaman(), PhysicalParams::oregon()});
    double worst = 0.0;
    for (const auto& p : ps) {
        const auto m = derive_coefficients(p);
        // group velocity of the surface branch w1 = sqrt(g k)
        worst = std::max(worst, rel(0.5 * std::sqrt(p.g / m.k0), m.c0));
    }
    return {worst <= 1e-12, "max |w1'(k0) - c0|/c0 = " + sci(worst) + " over 22 sets (tol 1e-12)"};
}

Outcome c2_quartic() {
    auto ps = random_params(202, 20);
    ps.insert(ps.begin(), {PhysicalParams::andaman(), PhysicalParams::oregon()});
    double res = 0.0, root = 0.0;
    for (const auto& p : ps)
        for (double k : logspace(1e-2, 10.0, 100)) {
            const double w2 = dispersion_internal(p, k), w12 = dispersion_surface(p, k);
            res = std::max({res, oracle::quartic_residual(p, k, w2), oracle::quartic_residual(p, k, w12)});
            const auto r = oracle::quartic_roots(p, k);
            root = std::max({root, rel(w2, r[0]), rel(w12, r[1])});
        }
    return {res <= 1e-10 && root <= 1e-10,
            "max residual " + sci(res) + ", max root mismatch " + sci(root) + " (tol 1e-10)"};
}

Outcome c3_kappa8() {
    double worst = 0.0;
    for (const auto& p : random_params(303, 50)) worst = std::max(worst, std::abs(derive_coefficients(p).kappa[8]));
    return {worst <= 1e-12, "max |kappa8| = " + sci(worst) + " over 50 sets (tol 1e-12)"};
}

Outcome c4_asymptotics() {
    // deviations below this are at the numerical-differentiation noise floor
    constexpr double floor = 1e-10;
    const double gammas[] = {0.05, 0.02, 0.01, 0.005};
    double dev[4][5];
    for (int i = 0; i < 4; ++i) {
        const PhysicalParams p{9.81, 500.0, 1000.0, 1000.0 * (1.0 - gammas[i])};
        const auto e = derive_coefficients(p);
        const auto a = asymptotic_coefficients(p, 0.1, 0.25, nullptr);
        for (int j = 0; j < 5; ++j) dev[i][j] = rel(a.kt[j], e.kt[j]);
    }
    bool ok = true;
    double at01 = 0.0;
    for (int j = 0; j < 5; ++j) {
        at01 = std::max(at01, dev[2][j]);
        ok = ok && dev[2][j] <= 1e-4;
        for (int i = 0; i + 1 < 4; ++i) ok = ok && dev[i + 1][j] <= std::max(dev[i][j], floor);
    }
    std::string d = "max dev at gamma=0.01: " + sci(at01) + " (tol 1e-4); kt3 series";
    for (int i = 0; i < 4; ++i) d += " " + sci(dev[i][3]);
    return {ok, d + "; monotone with floor 1e-10"};
}

Outcome c5_hamiltonian() {
    const PhysicalParams p = PhysicalParams::andaman();
    double e2 = 0.0, e3 = 0.0;
    for (std::size_t n : {128u, 256u}) {
        const Grid g(n, 8.0 * std::numbers::pi * p.h1);
        const Hamiltonian H(g, p);
        for (std::uint64_t s = 0; s < 50; ++s) {
            const auto f = random_four_field(g, p, 5000 + s);
            const auto nf = H.normal_transform(f);
            e2 = std::max(e2, rel(H.eval_H2(nf), H.eval_H2(f)));
            e3 = std::max(e3, rel(H.eval_H3(nf).total, H.eval_H3(f).total));
        }
    }
    return {e2 <= 1e-10 && e3 <= 1e-10, "H2 rel " + sci(e2) + ", H3 rel " + sci(e3) + " (tol 1e-10, 100 fields)"};
}

Outcome c6_decomposition() {
    const PhysicalParams p = PhysicalParams::andaman();
    const Grid g(128, 8.0 * std::numbers::pi * p.h1);
    const Hamiltonian H(g, p);
    double e = 0.0;
    for (std::uint64_t s = 0; s < 50; ++s) {
        const auto f = random_four_field(g, p, 6000 + s);
        e = std::max(e, rel(H.kinetic_cubic_parts(f).signed_sum(), H.eval_H3(f).total));
    }
    return {e <= 1e-10, "max rel |I3 - II3 + III3 - H3| = " + sci(e) + " (tol 1e-10, 50 fields)"};
}

Outcome c7_gauge() {
    const Grid g(256, 60.0);
    double u = 0.0, o = 0.0, r = 0.0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        const RVec f = random_band_limited(g, 7000 + s, 0.3, true, 16);
        const auto d = gauge_diagnostics(g, f, UNIT);
        u = std::max(u, d.unimodularity);
        o = std::max(o, d.ode_residual / d.r_inf);
        r = std::max(r, d.reconstruction);
    }
    return {u <= 1e-12 && o <= 1e-8 && r <= 1e-10,
            "||Psi|-1| " + sci(u) + " (1e-12), ODE/|r| " + sci(o) + " (1e-8), r_x rec " + sci(r) + " (1e-10)"};
}

Outcome c8_conservation() {
    const Grid g(512, 40.0 * std::numbers::pi);
    StepperConfig cfg;
    cfg.dt = 1e-3;
    RunOptions o;
    o.t_end = 10.0;
    o.diagnostics_every = 100;
    o.gauge_diagnostics = false;
    const auto res = run(g, smooth_state(g, 0.1), cfg, UNIT, o);
    const auto& a = res.log.front();
    double d1 = 0.0, d2 = 0.0, d3 = 0.0, dm = 0.0;
    for (const auto& row : res.log) {
        d1 = std::max(d1, rel(row.E1, a.E1));
        d2 = std::max(d2, rel(row.E2, a.E2));
        d3 = std::max(d3, rel(row.E3, a.E3));
        dm = std::max(dm, std::abs(row.mean_r - a.mean_r));
    }
    return {d1 <= 1e-7 && d2 <= 1e-9 && d3 <= 1e-9 && dm <= 1e-12,
            "Strang: dE1 " + sci(d1) + " (1e-7), dE2 " + sci(d2) + " (1e-9), dE3 " + sci(d3) + " (1e-9), dmean " +
                sci(dm) + " (1e-12)"};
}

Outcome c9_order() {
    const Grid g(512, 40.0 * std::numbers::pi);
    const SystemState s0 = smooth_state(g, 0.5);
    double p[2];
    int i = 0;
    for (Scheme sch : {Scheme::strang, Scheme::etdrk4}) {
        const double dt = 0.02;
        const auto u1 = evolve(g, s0, UNIT, sch, dt, 1.0);
        const auto u2 = evolve(g, s0, UNIT, sch, dt / 2, 1.0);
        const auto u3 = evolve(g, s0, UNIT, sch, dt / 4, 1.0);
        p[i++] = std::log2(state_dist(g, u1, u2) / state_dist(g, u2, u3));
    }
    return {p[0] >= 1.9 && p[0] <= 2.1 && p[1] >= 3.8,
            "Strang order " + std::to_string(p[0]) + " ([1.9, 2.1]), ETDRK4 order " + std::to_string(p[1]) + " (>= 3.8)"};
}

Outcome c10_linear() {
    const Grid g(512, 40.0 * std::numbers::pi);
    const ReducedCoeffs c{0.5, 1.0, 0.0, 0.0, 1.0, 0.0};
    const SystemState s0 = smooth_state(g, 0.1);
    const SystemState s = evolve(g, s0, c, Scheme::strang, 1e-3, 1.0);
    const SystemState exact{propagate(g, Flow::V, c, 1.0, truncate(g, s0.r)),
                            propagate(g, Flow::U, c, 1.0, truncate(g, s0.q)), 1.0};
    const double e = state_dist(g, s, exact);
    return {e <= 1e-9, "L2 error vs exact propagator at t=1: " + sci(e) + " (tol 1e-9)"};
}

Outcome c11_spectral() {
    const Grid g(256, 50.0);
    double hh = 0.0, pp = 0.0, hp = 0.0, dh = 0.0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        const RVec f = random_band_limited(g, 11000 + s, 1.0);
        const double m = mean(f);
        const RVec h2 = hilbert(g, hilbert(g, f));
        const CVec Pp = project(g, f, +1), Pm = project(g, f, -1);
        const RVec H = hilbert(g, f), D = abs_d(g, f), dH = deriv(g, H);
        for (std::size_t i = 0; i < g.n(); ++i) {
            hh = std::max(hh, std::abs(h2[i] + (f[i] - m)));
            pp = std::max(pp, std::abs(Pp[i] + Pm[i] - f[i]));
            hp = std::max(hp, std::abs(cplx(0, -1) * (Pp[i] - Pm[i]) - H[i]));
            dh = std::max(dh, std::abs(D[i] - dH[i]));
        }
    }
    const double w = std::max({hh, pp, hp, dh});
    return {w <= 1e-12, "H^2 " + sci(hh) + ", P+ + P- " + sci(pp) + ", H vs P " + sci(hp) + ", |D| " + sci(dh) +
                            " (tol 1e-12)"};
}

Outcome c12_commutativity() {
    // Gaussian with full width at half maximum L/20, window L = 100
    const double L = 100.0;
    const ReducedCoeffs c{0.5, 1.0, 0.0, 0.0, 1.0, 0.0};
    const double sigma = (L / 20.0) / std::sqrt(8.0 * std::log(2.0));
    const Grid g(1024, L);
    RVec h(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) h[i] = std::exp(-0.5 * g.x()[i] * g.x()[i] / (sigma * sigma));
    const auto r1 = commutativity_check(g, c, h, 1);
    // doubling n at fixed spacing (window doubles) isolates the periodic defect
    const auto r2 = commutativity_check(g, c, h, 2);
    // doubling n at fixed window
    const Grid g2(2048, L);
    RVec h2(g2.n());
    for (std::size_t i = 0; i < g2.n(); ++i) h2[i] = std::exp(-0.5 * g2.x()[i] * g2.x()[i] / (sigma * sigma));
    const auto rf = commutativity_check(g2, c, h2, 1);
    const bool ok = r1.abs_residual <= 1e-6 && r2.abs_residual <= 0.5 * r1.abs_residual;
    return {ok, "residual n=1024: " + sci(r1.abs_residual) + " (tol 1e-6, relative " + sci(r1.rel_residual) + "); n=2048 same dx: " + sci(r2.abs_residual) +
                    " (ratio " + sci(r1.abs_residual / r2.abs_residual) + ", need >= 2); n=2048 same L: " +
                    sci(rf.abs_residual)};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget;
        std::function<Outcome()> fn;
    };
    const std::vector<Criterion> all = {
        {1, "resonance identity", 1.0, c1_resonance},
        {2, "dispersion quartic", 1.0, c2_quartic},
        {3, "kappa8 vanishes", 1.0, c3_kappa8},
        {4, "small-gamma asymptotics", 1.0, c4_asymptotics},
        {5, "Hamiltonian coordinate equivalence", 10.0, c5_hamiltonian},
        {6, "cubic kinetic decomposition", 10.0, c6_decomposition},
        {7, "gauge diagnostics", 5.0, c7_gauge},
        {8, "conservation under evolution", 60.0, c8_conservation},
        {9, "scheme order", 120.0, c9_order},
        {10, "linear-flow oracle", 5.0, c10_linear},
        {11, "spectral identity suite", 1.0, c11_spectral},
        {12, "commutativity relation", 5.0, c12_commutativity},
    };
    int failed = 0;
    for (const auto& c : all) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = dt <= c.budget;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::printf("%s criterion %2d %-36s %s [%.2f s / %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name,
                    o.detail.c_str(), dt, c.budget, in_time ? "" : " OVER BUDGET");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
    return failed ? 1 : 0;
}
