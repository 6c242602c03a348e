#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bos/hamiltonian.hpp"
#include "bos/solver.hpp"

using namespace bos;

namespace {

const ReducedCoeffs C{0.5, 1.0, 1.0, 0.5, 1.0, 1.0};

double max_diff(const RVec& a, const RVec& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double max_diff(const CVec& a, const CVec& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

SystemState smooth_state(const Grid& g, double amp) {
    return {gaussian_r(g, amp, 2.0), gaussian_q(g, amp, 3.0, 4), 0.0};
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

SystemState evolve(const Grid& g, SystemState s, const ReducedCoeffs& c, Scheme sch, double dt, double T) {
    StepperConfig cfg;
    cfg.dt = dt;
    cfg.scheme = sch;
    RunOptions o;
    o.t_end = T;
    o.diagnostics_every = 0;
    o.gauge_diagnostics = false;
    return run(g, s, cfg, c, o).final_state;
}

}  // namespace

TEST_CASE("zero state") {
    const Grid g(64, 20.0);
    SystemState s{RVec(g.n(), 0.0), CVec(g.n(), 0.0), 0.0};
    const auto d = rhs_reduced(g, s, C, Dealias::two_thirds);
    CHECK(norm_inf(d.dr) == 0.0);
    CHECK(norm_inf(d.dq) == 0.0);
    const auto e = conserved(g, s, C);
    CHECK(e.E1 == 0.0);
    CHECK(e.E2 == 0.0);
    CHECK(e.E3 == 0.0);
    for (Scheme sch : {Scheme::strang, Scheme::etdrk4}) {
        StepperConfig cfg;
        cfg.scheme = sch;
        const Stepper st(g, cfg, C);
        SystemState z = s;
        for (int i = 0; i < 1000; ++i) st.step(z);
        CHECK(norm_inf(z.r) == 0.0);
        CHECK(norm_inf(z.q) == 0.0);
        CHECK(z.t == doctest::Approx(1.0));
    }
}

TEST_CASE("linear right-hand side matches the propagator difference quotient") {
    const Grid g(128, 40.0);
    ReducedCoeffs c{0.5, 1.0, 0.0, 0.0, 1.0, 0.0};
    const RVec r = random_band_limited(g, 5, 0.2, true, 12);
    const CVec q = gaussian_q(g, 0.3, 2.0, 3);
    const auto d = rhs_reduced(g, {r, q, 0.0}, c, Dealias::two_thirds);
    const double h = 1e-6;
    const RVec vr = propagate(g, Flow::V, c, h, r);
    const CVec uq = propagate(g, Flow::U, c, h, q);
    RVec fr(g.n());
    CVec fq(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) {
        fr[i] = (vr[i] - r[i]) / h;
        fq[i] = (uq[i] - q[i]) / h;
    }
    CHECK(max_diff(d.dr, fr) <= 1e-5);
    CHECK(max_diff(d.dq, fq) <= 1e-5);
}

TEST_CASE("beta coupling on a single mode") {
    const double L = 20.0;
    const Grid g(64, L);
    ReducedCoeffs c{0.5, 1.0, 0.0, 0.0, 0.8, 1.3};
    const long j = 3;
    const double k = 2.0 * std::numbers::pi * j / L;
    const CVec q = monochromatic_q(g, 1.0, j);
    const auto d = rhs_reduced(g, {RVec(g.n(), 0.0), q, 0.0}, c, Dealias::two_thirds);
    // |q|^2 = 1 so r does not move; q rotates at i alpha k^2
    CHECK(norm_inf(d.dr) < 1e-13);
    for (std::size_t i = 0; i < g.n(); ++i) CHECK(std::abs(d.dq[i] - cplx(0.0, c.alpha * k * k) * q[i]) < 1e-12);
}

TEST_CASE("reduced right-hand side against a direct evaluation") {
    const Grid g(128, 30.0);
    const RVec r = random_band_limited(g, 41, 0.3, true, 20);
    const CVec q = gaussian_q(g, 0.2, 2.5, 2);
    const auto d = rhs_reduced(g, {r, q, 0.0}, C, Dealias::off);
    // term by term with the spectral operators
    const RVec rx = deriv(g, r);
    const RVec Hrxx = hilbert(g, deriv(g, r, 2));
    const RVec rxxx = deriv(g, r, 3);
    RVec rHrx(g.n()), rrx(g.n()), q2(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) {
        rrx[i] = r[i] * rx[i];
        q2[i] = std::norm(q[i]);
    }
    const RVec Hrx = hilbert(g, rx);
    for (std::size_t i = 0; i < g.n(); ++i) rHrx[i] = r[i] * Hrx[i];
    const RVec t1 = deriv(g, rHrx), t2 = deriv(g, hilbert(g, rrx)), t3 = deriv(g, q2);
    RVec want(g.n());
    for (std::size_t i = 0; i < g.n(); ++i)
        want[i] = -C.a * rxxx[i] + C.b * Hrxx[i] + C.c * rrx[i] - C.d * (t1[i] + t2[i]) + C.beta * t3[i];
    CHECK(max_diff(d.dr, want) < 1e-12 * std::max(1.0, norm_inf(want)));
    const CVec qxx = deriv(g, q, 2);
    for (std::size_t i = 0; i < g.n(); ++i)
        CHECK(std::abs(d.dq[i] - (cplx(0, -C.alpha) * qxx[i] + cplx(0, C.beta) * r[i] * q[i])) < 1e-12);
    // dr/dt has zero mean
    CHECK(std::abs(mean(d.dr)) < 1e-15);
}

TEST_CASE("full system reduces to the reduced system without kt3 and kt4") {
    const auto m0 = derive_coefficients(PhysicalParams::andaman(), 0.1, 0.25);
    ModelCoefficients m = m0;
    m.kt[3] = 0.0;
    m.kt[4] = 0.0;
    const Grid g(128, 60.0);
    const RVec r = random_band_limited(g, 8, 0.05, true, 20);
    const CVec q = gaussian_q(g, 0.3, 4.0, 2);
    for (Dealias mode : {Dealias::off, Dealias::two_thirds, Dealias::strict}) {
        const auto f = rhs_full(g, {r, q, 0.0}, m, mode);
        CVec qs(g.n());
        for (std::size_t i = 0; i < g.n(); ++i) qs[i] = m.q_scale * q[i];
        const auto d = rhs_reduced(g, {r, qs, 0.0}, m.reduced, mode);
        const double sr = std::max(norm_inf(d.dr), 1e-300), sq = std::max(norm_inf(d.dq), 1e-300);
        CHECK(max_diff(f.dr, d.dr) <= 1e-12 * sr);
        CVec fq(g.n());
        for (std::size_t i = 0; i < g.n(); ++i) fq[i] = m.q_scale * f.dq[i];
        CHECK(max_diff(fq, d.dq) <= 1e-12 * sq);
    }
    // q = 0: only the c and d terms remain, identical to the reduced flow with beta = 0
    {
        ReducedCoeffs rc = m0.reduced;
        rc.beta = 0.0;
        const CVec z(g.n(), 0.0);
        const auto f = rhs_full(g, {r, z, 0.0}, m0, Dealias::two_thirds);
        const auto d = rhs_reduced(g, {r, z, 0.0}, rc, Dealias::two_thirds);
        CHECK(max_diff(f.dr, d.dr) <= 1e-12 * norm_inf(d.dr));
        CHECK(norm_inf(f.dq) == 0.0);
    }
}

TEST_CASE("full system right-hand side is real and has zero-mean dr") {
    const auto m = derive_coefficients(PhysicalParams::andaman(), 0.1, 0.25);
    const Grid g(128, 60.0);
    const RVec r = random_band_limited(g, 18, 0.05, true, 20);
    const CVec q = gaussian_q(g, 0.3, 4.0, 5);
    // the r-equation assembled in complex arithmetic from the literal D = -i d/dx
    const auto f = rhs_full(g, {r, q, 0.0}, m, Dealias::off);
    const double eps = m.epsilon, e2d = std::pow(eps, 2.0 * m.delta);
    CVec Dq = deriv(g, q);
    for (auto& v : Dq) v *= cplx(0.0, -1.0);
    CVec mix(g.n());
    RVec q2(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) {
        mix[i] = q[i] * std::conj(Dq[i]) + std::conj(q[i]) * Dq[i];
        q2[i] = std::norm(q[i]);
    }
    const CVec dmix = deriv(g, mix);
    double im = 0.0;
    for (const auto& v : dmix) im = std::max(im, std::abs(v.imag()));
    CHECK(im <= 1e-12);
    const RVec rx = deriv(g, r), Dr = abs_d(g, r);
    RVec rDr(g.n()), rrx(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) {
        rDr[i] = r[i] * Dr[i];
        rrx[i] = r[i] * rx[i];
    }
    const RVec lin = deriv(g, abs_d(g, r));
    const RVec r3 = deriv(g, r, 3);
    const RVec a = deriv(g, rDr), b = abs_d(g, rrx), cq = deriv(g, q2), dq = deriv(g, abs_d(g, q2));
    RVec want(g.n());
    for (std::size_t i = 0; i < g.n(); ++i)
        want[i] = -eps * m.Omega1 / (2 * m.c0) * lin[i] + 6 * eps * m.kt[0] * rrx[i] +
                  eps * eps * m.Omega2 / (2 * m.c0) * r3[i] - eps * e2d * m.kt[1] * cq[i] +
                  eps * eps * m.kt[2] * (a[i] + b[i]) - eps * eps * e2d * m.kt[3] * dmix[i].real() -
                  eps * eps * e2d * m.kt[4] * dq[i];
    CHECK(max_diff(f.dr, want) <= 1e-12 * norm_inf(want));
    CHECK(std::abs(mean(f.dr)) < 1e-15);

    // q-equation: i q_t = -eps w''/2 q_XX + kt1 r q - i eps kt3 (d(rq) + r q_X) + eps kt4 q |D| r
    const CVec qxx = deriv(g, q, 2), qx = deriv(g, q);
    CVec rq(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) rq[i] = r[i] * q[i];
    const CVec drq = deriv(g, rq);
    for (std::size_t i = 0; i < g.n(); ++i) {
        const cplx rhs = -eps * m.omega1_pp / 2.0 * qxx[i] + m.kt[1] * r[i] * q[i] -
                         cplx(0, 1) * eps * m.kt[3] * (drq[i] + r[i] * qx[i]) + eps * m.kt[4] * q[i] * Dr[i];
        CHECK(std::abs(cplx(0, 1) * f.dq[i] - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("linear-only stepping matches the exact propagator") {
    const Grid g(256, 40.0 * std::numbers::pi);
    ReducedCoeffs c{0.5, 1.0, 0.0, 0.0, 1.0, 0.0};
    const SystemState s0 = smooth_state(g, 0.1);
    for (Scheme sch : {Scheme::strang, Scheme::etdrk4}) {
        const SystemState s = evolve(g, s0, c, sch, 1e-3, 1.0);
        const RVec wr = propagate(g, Flow::V, c, 1.0, truncate(g, s0.r));
        const CVec wq = propagate(g, Flow::U, c, 1.0, truncate(g, s0.q));
        CHECK(std::hypot(norm_l2(g, RVec([&] {
                                     RVec d(g.n());
                                     for (std::size_t i = 0; i < g.n(); ++i) d[i] = s.r[i] - wr[i];
                                     return d;
                                 }())),
                         norm_l2(g, CVec([&] {
                                     CVec d(g.n());
                                     for (std::size_t i = 0; i < g.n(); ++i) d[i] = s.q[i] - wq[i];
                                     return d;
                                 }()))) <= 1e-9);
    }
}

TEST_CASE("decoupled envelope keeps its spectrum") {
    const Grid g(128, 40.0);
    ReducedCoeffs c = C;
    c.beta = 0.0;
    const SystemState s0 = smooth_state(g, 0.2);
    const SystemState s = evolve(g, s0, c, Scheme::strang, 1e-3, 0.5);
    const CVec q0 = truncate(g, s0.q);
    CHECK(std::abs(norm_l2(g, s.q) - norm_l2(g, q0)) <= 1e-12 * norm_l2(g, q0));
    const CVec a = g.fft(q0), b = g.fft(s.q);
    double e = 0.0;
    for (std::size_t i = 0; i < g.n(); ++i) e = std::max(e, std::abs(std::abs(a[i]) - std::abs(b[i])));
    CHECK(e <= 1e-10 * norm_inf(a));
}

TEST_CASE("temporal convergence order") {
    const Grid g(256, 40.0 * std::numbers::pi);
    const SystemState s0 = smooth_state(g, 0.5);
    for (Scheme sch : {Scheme::strang, Scheme::etdrk4}) {
        const double dt = 0.05;
        const auto u1 = evolve(g, s0, C, sch, dt, 1.0);
        const auto u2 = evolve(g, s0, C, sch, dt / 2, 1.0);
        const auto u3 = evolve(g, s0, C, sch, dt / 4, 1.0);
        const double p = std::log2(state_dist(g, u1, u2) / state_dist(g, u2, u3));
        if (sch == Scheme::strang)
            CHECK(p == doctest::Approx(2.0).epsilon(0.05));
        else
            CHECK(p >= 3.8);
    }
}

TEST_CASE("conservation, mean and reality over a short run") {
    const Grid g(256, 40.0 * std::numbers::pi);
    const SystemState s0 = smooth_state(g, 0.1);
    for (Scheme sch : {Scheme::strang, Scheme::etdrk4}) {
        StepperConfig cfg;
        cfg.dt = 1e-3;
        cfg.scheme = sch;
        RunOptions o;
        o.t_end = 1.0;
        o.diagnostics_every = 100;
        const auto res = run(g, s0, cfg, C, o);
        const auto& a = res.log.front();
        REQUIRE(res.log.size() == 11);
        for (const auto& row : res.log) {
            CHECK(std::abs(row.E1 - a.E1) <= 1e-7 * std::abs(a.E1));
            CHECK(std::abs(row.E2 - a.E2) <= 1e-9 * std::abs(a.E2));
            CHECK(std::abs(row.E3 - a.E3) <= 1e-9 * std::abs(a.E3));
            CHECK(std::abs(row.mean_r - a.mean_r) <= 1e-12);
            CHECK(row.gauge_residual <= 1e-8 * row.max_r);
        }
    }
}

TEST_CASE("conserved quantities on closed forms") {
    const double L = 20.0;
    const Grid g(64, L);
    const CVec q = monochromatic_q(g, 0.7, 2);
    const SystemState s{RVec(g.n(), 0.0), q, 0.0};
    const auto e = conserved(g, s, C);
    CHECK(e.E2 == doctest::Approx(0.49 * L).epsilon(1e-13));
    // E3 = Im int conj(q) q_x = |A|^2 k L for r = 0
    const double k = 2.0 * std::numbers::pi * 2 / L;
    CHECK(e.E3 == doctest::Approx(0.49 * k * L).epsilon(1e-12));
    // E1 = -alpha |A|^2 k^2 L
    CHECK(e.E1 == doctest::Approx(-C.alpha * 0.49 * k * k * L).epsilon(1e-12));
}

TEST_CASE("blow-up guard") {
    const Grid g(64, 20.0);
    StepperConfig cfg;
    cfg.blowup_guard = 0.05;
    SystemState s{gaussian_r(g, 0.1, 1.0), CVec(g.n(), 0.0), 0.0};
    RunOptions o;
    o.t_end = 0.01;
    bool thrown = false;
    try {
        run(g, s, cfg, C, o);
    } catch (const BlowUp& b) {
        thrown = true;
        CHECK(b.t == doctest::Approx(cfg.dt));
        CHECK(b.max_abs_r > 0.05);
    }
    CHECK(thrown);
    StepperConfig bad;
    bad.dt = 0.0;
    CHECK_THROWS_AS(Stepper(g, bad, C), DomainError);
    bad = StepperConfig{};
    bad.model = Model::full;
    CHECK_THROWS_AS(Stepper(g, bad, C), DomainError);
}

TEST_CASE("initial data library") {
    const Grid g(256, 100.0);
    const RVec r = gaussian_r(g, 0.1, 2.0);
    CHECK(norm_inf(r) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(std::abs(mean(r)) < 1e-16);
    const RVec b = bo_soliton_r(g, 0.5, 3.0);
    CHECK(std::abs(mean(b)) < 1e-15);
    const RVec rr = random_r(g, 3, 0.2, 10);
    CHECK(norm_inf(rr) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(std::abs(mean(rr)) < 1e-16);
    CHECK_THROWS_AS(gaussian_r(g, 1.0, 0.0), DomainError);
    // deterministic
    CHECK(max_diff(random_r(g, 3, 0.2, 10), rr) == 0.0);
    const CVec q = gaussian_q(g, 0.3, 2.0, 0);
    CHECK(norm_inf(q) == doctest::Approx(0.3).epsilon(1e-3));
}
