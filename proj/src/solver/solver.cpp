#include "bos/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bos/gauge.hpp"
#include "bos/hamiltonian.hpp"

namespace bos {

namespace {

constexpr cplx I{0.0, 1.0};

// Spectral helpers on FFT-ordered spectra. Odd multipliers drop the Nyquist slot.
CVec times_ik(const Grid& g, const CVec& fh) {
    CVec out(fh.size());
    const auto& k = g.k();
    for (std::size_t i = 0; i < fh.size(); ++i) out[i] = I * k[i] * fh[i];
    out[g.nyquist()] = 0.0;
    return out;
}

CVec times_absk(const Grid& g, const CVec& fh) {
    CVec out(fh.size());
    const auto& a = g.abs_k();
    for (std::size_t i = 0; i < fh.size(); ++i) out[i] = a[i] * fh[i];
    return out;
}

void mask_inplace(const Grid& g, CVec& fh) {
    const auto& m = g.dealias_mask();
    for (std::size_t i = 0; i < fh.size(); ++i) fh[i] *= m[i];
}

// Spectrum of a*b under the chosen dealiasing; inputs are assumed already
// band-limited for the 2/3 rule (the caller masks them).
CVec prod_hat(const Grid& g, const RVec& a, const RVec& b, Dealias mode) {
    if (mode == Dealias::strict) return g.fft(product(g, a, b, mode));
    RVec p(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) p[i] = a[i] * b[i];
    CVec h = g.fft(p);
    if (mode == Dealias::two_thirds) mask_inplace(g, h);
    return h;
}

CVec prod_hat(const Grid& g, const RVec& a, const CVec& b, Dealias mode) {
    if (mode == Dealias::strict) return g.fft(product(g, a, b, mode));
    CVec p(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) p[i] = a[i] * b[i];
    CVec h = g.fft(p);
    if (mode == Dealias::two_thirds) mask_inplace(g, h);
    return h;
}

CVec prod_hat(const Grid& g, const CVec& a, const CVec& b, Dealias mode) {
    if (mode == Dealias::strict) return g.fft(product(g, a, b, mode));
    CVec p(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) p[i] = a[i] * b[i];
    CVec h = g.fft(p);
    if (mode == Dealias::two_thirds) mask_inplace(g, h);
    return h;
}

// Coefficients of the nonlinear terms; the reduced system is the special
// case k3 = k4 = 0, qq = beta.
struct NlCoeffs {
    double c = 0.0;      // r r_x
    double d = 0.0;      // -d (d/dx(r|D|r) + |D|(r r_x))
    double qq = 0.0;     // d/dx |q|^2 in the r-equation
    double beta = 0.0;   // i beta r q in the q-equation
    double k3r = 0.0;    // -k3r d/dx (2 Im(conj(q) q_x))
    double k4r = 0.0;    // -k4r d/dx |D| |q|^2
    double k3q = 0.0;    // -k3q (d/dx(r q) + r q_x)
    double k4q = 0.0;    // -i k4q q |D| r
};

NlCoeffs nl_reduced(const ReducedCoeffs& c) {
    NlCoeffs n;
    n.c = c.c;
    n.d = c.d;
    n.qq = c.beta;
    n.beta = c.beta;
    return n;
}

NlCoeffs nl_full(const ModelCoefficients& m) {
    NlCoeffs n = nl_reduced(m.reduced);
    const double eps = m.epsilon;
    const double e2d = std::pow(eps, 2.0 * m.delta);
    n.qq = -eps * e2d * m.kt[1];
    n.k3r = eps * eps * e2d * m.kt[3];
    n.k4r = eps * eps * e2d * m.kt[4];
    n.k3q = eps * m.kt[3];
    n.k4q = eps * m.kt[4];
    return n;
}

// Nonlinear part of both equations, spectra in and out.
void nonlinear(const Grid& g, const NlCoeffs& nc, Dealias mode, CVec rh, CVec qh, CVec& nr, CVec& nq) {
    if (mode == Dealias::two_thirds) {
        mask_inplace(g, rh);
        mask_inplace(g, qh);
    }
    const std::size_t n = g.n();
    const RVec r = g.ifft_real(rh);
    const RVec rx = g.ifft_real(times_ik(g, rh));
    const RVec Dr = g.ifft_real(times_absk(g, rh));
    const CVec q = g.ifft(qh);

    CVec inner(n, 0.0);  // spectrum of the flux whose derivative enters r_t
    CVec nr_extra(n, 0.0);

    if (nc.c != 0.0 || nc.d != 0.0) {
        const CVec rr = prod_hat(g, r, r, mode);
        const CVec rDr = prod_hat(g, r, Dr, mode);
        for (std::size_t i = 0; i < n; ++i) inner[i] += 0.5 * nc.c * rr[i] - nc.d * rDr[i];
        if (nc.d != 0.0) {
            const CVec rrx = prod_hat(g, r, rx, mode);
            const CVec t = times_absk(g, rrx);
            for (std::size_t i = 0; i < n; ++i) nr_extra[i] -= nc.d * t[i];
        }
    }

    const bool have_q = nc.qq != 0.0 || nc.beta != 0.0 || nc.k3r != 0.0 || nc.k4r != 0.0 ||
                        nc.k3q != 0.0 || nc.k4q != 0.0;
    CVec qx;
    if (have_q && (nc.k3r != 0.0 || nc.k3q != 0.0)) qx = g.ifft(times_ik(g, qh));

    if (nc.qq != 0.0 || nc.k4r != 0.0) {
        CVec qbar(n);
        for (std::size_t i = 0; i < n; ++i) qbar[i] = std::conj(q[i]);
        CVec m2 = prod_hat(g, qbar, q, mode);
        // |q|^2 is real: enforce Hermitian symmetry of its spectrum
        {
            const RVec re = g.ifft_real(m2);
            m2 = g.fft(re);
        }
        for (std::size_t i = 0; i < n; ++i) inner[i] += nc.qq * m2[i];
        if (nc.k4r != 0.0) {
            const CVec t = times_absk(g, m2);
            for (std::size_t i = 0; i < n; ++i) inner[i] -= nc.k4r * t[i];
        }
    }
    if (nc.k3r != 0.0) {
        CVec qbar(n);
        for (std::size_t i = 0; i < n; ++i) qbar[i] = std::conj(q[i]);
        const CVec pq = g.ifft(prod_hat(g, qbar, qx, mode));
        RVec im(n);
        for (std::size_t i = 0; i < n; ++i) im[i] = 2.0 * pq[i].imag();
        const CVec t = g.fft(im);
        for (std::size_t i = 0; i < n; ++i) inner[i] -= nc.k3r * t[i];
    }

    nr = times_ik(g, inner);
    for (std::size_t i = 0; i < n; ++i) nr[i] += nr_extra[i];
    nr[0] = 0.0;  // perfect derivative

    nq.assign(n, 0.0);
    if (nc.beta != 0.0 || nc.k3q != 0.0) {
        const CVec rq = prod_hat(g, r, q, mode);
        for (std::size_t i = 0; i < n; ++i) nq[i] += I * nc.beta * rq[i];
        if (nc.k3q != 0.0) {
            const CVec d_rq = times_ik(g, rq);
            const CVec rqx = prod_hat(g, r, qx, mode);
            for (std::size_t i = 0; i < n; ++i) nq[i] -= nc.k3q * (d_rq[i] + rqx[i]);
        }
    }
    if (nc.k4q != 0.0) {
        const CVec qDr = prod_hat(g, Dr, q, mode);
        for (std::size_t i = 0; i < n; ++i) nq[i] -= I * nc.k4q * qDr[i];
    }
}

Derivative assemble(const Grid& g, const SystemState& s, const ReducedCoeffs& lin, const NlCoeffs& nc,
                    Dealias mode) {
    if (s.r.size() != g.n() || s.q.size() != g.n()) throw DomainError("state size does not match grid");
    const CVec rh = g.fft(s.r);
    const CVec qh = g.fft(s.q);
    CVec nr, nq;
    nonlinear(g, nc, mode, rh, qh, nr, nq);
    const CVec Lr = flow_generator(g, Flow::V, lin);
    const CVec Lq = flow_generator(g, Flow::U, lin);
    for (std::size_t i = 0; i < g.n(); ++i) {
        nr[i] += Lr[i] * rh[i];
        nq[i] += Lq[i] * qh[i];
    }
    return {g.ifft_real(nr), g.ifft(nq)};
}

double max_abs_finite(const RVec& r) {
    double m = 0.0;
    for (double v : r) {
        if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
        m = std::max(m, std::abs(v));
    }
    return m;
}

}  // namespace

Derivative rhs_reduced(const Grid& g, const SystemState& s, const ReducedCoeffs& c, Dealias mode) {
    return assemble(g, s, c, nl_reduced(c), mode);
}

Derivative rhs_full(const Grid& g, const SystemState& s, const ModelCoefficients& m, Dealias mode) {
    return assemble(g, s, m.reduced, nl_full(m), mode);
}

ConservedTriple conserved(const Grid& g, const SystemState& s, const ReducedCoeffs& c) {
    const std::size_t n = g.n();
    const RVec& r = s.r;
    const RVec rx = deriv(g, r);
    const RVec Dr = abs_d(g, r);
    const CVec qx = deriv(g, s.q);
    RVec e1(n), e2(n), e3(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double q2 = std::norm(s.q[i]);
        e1[i] = -0.5 * c.b * r[i] * Dr[i] - 0.5 * c.a * rx[i] * rx[i] - c.alpha * std::norm(qx[i]) -
                c.c / 6.0 * r[i] * r[i] * r[i] - c.beta * r[i] * q2 + 0.5 * c.d * r[i] * r[i] * Dr[i];
        e2[i] = q2;
        e3[i] = 0.5 * r[i] * r[i] + (std::conj(s.q[i]) * qx[i]).imag();
    }
    return {integrate(g, e1), integrate(g, e2), integrate(g, e3)};
}

// ---------------------------------------------------------------- stepper

namespace {

// Kassam-Trefethen contour evaluation of the ETDRK4 weights for one block.
template <class Etd>
void etd_weights(const CVec& L, double h, Etd& e) {
    constexpr int M = 32;
    const std::size_t n = L.size();
    e.E.resize(n);
    e.E2.resize(n);
    e.Q.resize(n);
    e.f1.resize(n);
    e.f2.resize(n);
    e.f3.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const cplx Lh = L[i] * h;
        e.E[i] = std::exp(Lh);
        e.E2[i] = std::exp(0.5 * Lh);
        cplx q = 0.0, a = 0.0, b = 0.0, c = 0.0;
        for (int j = 0; j < M; ++j) {
            const double th = 2.0 * std::numbers::pi * (j + 0.5) / M;
            const cplx z = Lh + std::polar(1.0, th);
            const cplx ez = std::exp(z), ez2 = std::exp(0.5 * z);
            const cplx z3 = z * z * z;
            q += (ez2 - 1.0) / z;
            a += (-4.0 - z + ez * (4.0 - 3.0 * z + z * z)) / z3;
            b += (2.0 + z + ez * (z - 2.0)) / z3;
            c += (-4.0 - 3.0 * z - z * z + ez * (4.0 - z)) / z3;
        }
        e.Q[i] = h * q / double(M);
        e.f1[i] = h * a / double(M);
        e.f2[i] = h * b / double(M);
        e.f3[i] = h * c / double(M);
    }
}

}  // namespace

Stepper::Stepper(const Grid& g, const StepperConfig& cfg, const ReducedCoeffs& c, const ModelCoefficients* full)
    : g_(g), cfg_(cfg), c_(c), full_(full) {
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw DomainError("dt must be positive");
    if (!(cfg.blowup_guard > 0.0)) throw DomainError("blow-up guard must be positive");
    if (cfg.model == Model::full) {
        if (!full) throw DomainError("full model requires ModelCoefficients");
        c_ = full->reduced;
    }
    Lr_ = flow_generator(g_, Flow::V, c_);
    Lq_ = flow_generator(g_, Flow::U, c_);
    half_r_.resize(g_.n());
    half_q_.resize(g_.n());
    for (std::size_t i = 0; i < g_.n(); ++i) {
        half_r_[i] = std::exp(0.5 * cfg_.dt * Lr_[i]);
        half_q_[i] = std::exp(0.5 * cfg_.dt * Lq_[i]);
    }
    if (cfg_.scheme == Scheme::etdrk4) {
        etd_weights(Lr_, cfg_.dt, er_);
        etd_weights(Lq_, cfg_.dt, eq_);
    }
}

void Stepper::nonlinear_hat(const CVec& rh, const CVec& qh, CVec& nr, CVec& nq) const {
    const NlCoeffs nc = cfg_.model == Model::full ? nl_full(*full_) : nl_reduced(c_);
    nonlinear(g_, nc, cfg_.dealias, rh, qh, nr, nq);
}

void Stepper::step(SystemState& s) const {
    if (s.r.size() != g_.n() || s.q.size() != g_.n()) throw DomainError("state size does not match grid");
    if (cfg_.scheme == Scheme::strang)
        step_strang(s);
    else
        step_etdrk4(s);
    s.t += cfg_.dt;
    const double m = max_abs_finite(s.r);
    if (!(m <= cfg_.blowup_guard)) throw BlowUp(s.t, m);
}

void Stepper::step_strang(SystemState& s) const {
    const std::size_t n = g_.n();
    CVec rh = g_.fft(s.r), qh = g_.fft(s.q);
    for (std::size_t i = 0; i < n; ++i) {
        rh[i] *= half_r_[i];
        qh[i] *= half_q_[i];
    }
    // classical RK4 on the nonlinear part
    const double h = cfg_.dt;
    CVec k1r, k1q, k2r, k2q, k3r, k3q, k4r, k4q;
    CVec tr(n), tq(n);
    nonlinear_hat(rh, qh, k1r, k1q);
    for (std::size_t i = 0; i < n; ++i) {
        tr[i] = rh[i] + 0.5 * h * k1r[i];
        tq[i] = qh[i] + 0.5 * h * k1q[i];
    }
    nonlinear_hat(tr, tq, k2r, k2q);
    for (std::size_t i = 0; i < n; ++i) {
        tr[i] = rh[i] + 0.5 * h * k2r[i];
        tq[i] = qh[i] + 0.5 * h * k2q[i];
    }
    nonlinear_hat(tr, tq, k3r, k3q);
    for (std::size_t i = 0; i < n; ++i) {
        tr[i] = rh[i] + h * k3r[i];
        tq[i] = qh[i] + h * k3q[i];
    }
    nonlinear_hat(tr, tq, k4r, k4q);
    for (std::size_t i = 0; i < n; ++i) {
        rh[i] += h / 6.0 * (k1r[i] + 2.0 * k2r[i] + 2.0 * k3r[i] + k4r[i]);
        qh[i] += h / 6.0 * (k1q[i] + 2.0 * k2q[i] + 2.0 * k3q[i] + k4q[i]);
        rh[i] *= half_r_[i];
        qh[i] *= half_q_[i];
    }
    s.r = g_.ifft_real(rh);
    s.q = g_.ifft(qh);
}

void Stepper::step_etdrk4(SystemState& s) const {
    const std::size_t n = g_.n();
    const CVec vr = g_.fft(s.r), vq = g_.fft(s.q);
    CVec Nvr, Nvq, Nar, Naq, Nbr, Nbq, Ncr, Ncq;
    CVec ar(n), aq(n), br(n), bq(n), cr(n), cq(n);

    nonlinear_hat(vr, vq, Nvr, Nvq);
    for (std::size_t i = 0; i < n; ++i) {
        ar[i] = er_.E2[i] * vr[i] + er_.Q[i] * Nvr[i];
        aq[i] = eq_.E2[i] * vq[i] + eq_.Q[i] * Nvq[i];
    }
    nonlinear_hat(ar, aq, Nar, Naq);
    for (std::size_t i = 0; i < n; ++i) {
        br[i] = er_.E2[i] * vr[i] + er_.Q[i] * Nar[i];
        bq[i] = eq_.E2[i] * vq[i] + eq_.Q[i] * Naq[i];
    }
    nonlinear_hat(br, bq, Nbr, Nbq);
    for (std::size_t i = 0; i < n; ++i) {
        cr[i] = er_.E2[i] * ar[i] + er_.Q[i] * (2.0 * Nbr[i] - Nvr[i]);
        cq[i] = eq_.E2[i] * aq[i] + eq_.Q[i] * (2.0 * Nbq[i] - Nvq[i]);
    }
    nonlinear_hat(cr, cq, Ncr, Ncq);
    CVec rh(n), qh(n);
    for (std::size_t i = 0; i < n; ++i) {
        rh[i] = er_.E[i] * vr[i] + er_.f1[i] * Nvr[i] + 2.0 * er_.f2[i] * (Nar[i] + Nbr[i]) + er_.f3[i] * Ncr[i];
        qh[i] = eq_.E[i] * vq[i] + eq_.f1[i] * Nvq[i] + 2.0 * eq_.f2[i] * (Naq[i] + Nbq[i]) + eq_.f3[i] * Ncq[i];
    }
    s.r = g_.ifft_real(rh);
    s.q = g_.ifft(qh);
}

// ---------------------------------------------------------------- driver

RunResult run(const Grid& g, const SystemState& initial, const StepperConfig& cfg, const ReducedCoeffs& c,
              const RunOptions& opt, const ModelCoefficients* full,
              const std::function<void(const SystemState&)>& on_snapshot) {
    if (!(opt.t_end >= 0.0)) throw DomainError("t_end must be non-negative");
    Stepper st(g, cfg, c, full);
    const ReducedCoeffs& lin = cfg.model == Model::full ? full->reduced : c;

    SystemState s = initial;
    if (cfg.dealias != Dealias::off) {
        s.r = truncate(g, s.r);
        s.q = truncate(g, s.q);
    }
    RunResult res;
    const auto nsteps = static_cast<std::size_t>(std::llround(opt.t_end / cfg.dt));

    auto diag = [&](const SystemState& x) {
        const ConservedTriple e = conserved(g, x, lin);
        double gres = std::numeric_limits<double>::quiet_NaN();
        if (opt.gauge_diagnostics && lin.a != 0.0) {
            const GaugeDiagnostics gd = gauge_diagnostics(g, x.r, lin);
            gres = gd.ode_residual;
        }
        res.log.push_back({x.t, e.E1, e.E2, e.E3, mean(x.r), norm_inf(x.r), gres});
    };
    auto snap = [&](const SystemState& x) {
        res.snapshots.push_back(x);
        if (on_snapshot) on_snapshot(x);
    };

    diag(s);
    if (opt.snapshot_every > 0) snap(s);
    SystemState last_good = s;
    for (std::size_t i = 1; i <= nsteps; ++i) {
        try {
            st.step(s);
        } catch (const BlowUp&) {
            res.final_state = last_good;
            if (on_snapshot) on_snapshot(last_good);
            throw;
        }
        s.t = initial.t + static_cast<double>(i) * cfg.dt;  // no accumulated rounding
        last_good = s;
        res.steps = i;
        const bool last = i == nsteps;
        if (last || (opt.diagnostics_every > 0 && i % static_cast<std::size_t>(opt.diagnostics_every) == 0))
            diag(s);
        if (opt.snapshot_every > 0 && (last || i % static_cast<std::size_t>(opt.snapshot_every) == 0)) snap(s);
    }
    res.final_state = s;
    return res;
}

// ---------------------------------------------------------------- initial data

namespace {

void demean_and_scale(RVec& f, double amplitude) {
    const double m = mean(f);
    for (double& v : f) v -= m;
    if (amplitude > 0.0) {
        const double s = amplitude / norm_inf(f);
        for (double& v : f) v *= s;
    }
}

}  // namespace

RVec gaussian_r(const Grid& g, double amplitude, double sigma, double x0) {
    if (!(sigma > 0.0)) throw DomainError("gaussian width must be positive");
    RVec f(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double z = (g.x()[i] - x0) / sigma;
        f[i] = std::exp(-0.5 * z * z);
    }
    demean_and_scale(f, amplitude);
    return f;
}

RVec bo_soliton_r(const Grid& g, double nu, double x0, double amplitude) {
    if (!(nu > 0.0)) throw DomainError("soliton parameter must be positive");
    RVec f(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double z = nu * (g.x()[i] - x0);
        f[i] = 4.0 * nu / (1.0 + z * z);
    }
    demean_and_scale(f, amplitude);
    return f;
}

RVec random_r(const Grid& g, std::uint64_t seed, double amplitude, long max_mode) {
    return random_band_limited(g, seed, amplitude, true, max_mode);
}

CVec gaussian_q(const Grid& g, double amplitude, double sigma, long mode, double x0) {
    if (!(sigma > 0.0)) throw DomainError("gaussian width must be positive");
    const double k = 2.0 * std::numbers::pi * static_cast<double>(mode) / g.length();
    CVec f(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double z = (g.x()[i] - x0) / sigma;
        f[i] = amplitude * std::exp(-0.5 * z * z) * std::polar(1.0, k * g.x()[i]);
    }
    return f;
}

CVec monochromatic_q(const Grid& g, double amplitude, long mode) {
    const double k = 2.0 * std::numbers::pi * static_cast<double>(mode) / g.length();
    CVec f(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) f[i] = amplitude * std::polar(1.0, k * g.x()[i]);
    return f;
}

}  // namespace bos
