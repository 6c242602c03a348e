#include "bos/gauge.hpp"

#include <cmath>

namespace bos {

GaugedState gauge(const Grid& g, const RVec& r, const ReducedCoeffs& c) {
    if (r.size() != g.n()) throw DomainError("field size does not match grid");
    if (c.a == 0.0) throw DomainError("gauge requires a nonzero third-order coefficient a");
    const double m = mean(r);
    if (std::abs(m) > 1e-10 * std::max(1.0, norm_inf(r)))
        throw NonZeroMean("gauge needs a mean-zero field (mean = " + std::to_string(m) + ")");

    const RVec R = antiderivative(g, r);
    const double s = -2.0 * c.d / (3.0 * c.a);
    GaugedState gs;
    gs.psi_plus.resize(g.n());
    gs.psi_minus.resize(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) {
        gs.psi_plus[i] = std::polar(1.0, s * R[i]);
        gs.psi_minus[i] = std::conj(gs.psi_plus[i]);
    }
    const CVec dp = deriv(g, project(g, r, 1));
    const CVec dm = deriv(g, project(g, r, -1));
    gs.w_plus.resize(g.n());
    gs.w_minus.resize(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) {
        gs.w_plus[i] = gs.psi_plus[i] * dp[i];
        gs.w_minus[i] = gs.psi_minus[i] * dm[i];
    }
    return gs;
}

CVec reconstruct_dr(const GaugedState& gs) {
    CVec out(gs.w_plus.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = gs.psi_minus[i] * gs.w_plus[i] + gs.psi_plus[i] * gs.w_minus[i];
    return out;
}

double gauge_ode_residual(const Grid& g, const GaugedState& gs, const RVec& r, const ReducedCoeffs& c) {
    const CVec dpsi = deriv(g, gs.psi_plus);
    double m = 0.0;
    for (std::size_t i = 0; i < g.n(); ++i)
        m = std::max(m, std::abs(3.0 * c.a * dpsi[i] + cplx(0.0, 2.0 * c.d) * gs.psi_plus[i] * r[i]));
    return m;
}

GaugeDiagnostics gauge_diagnostics(const Grid& g, const RVec& r, const ReducedCoeffs& c) {
    const GaugedState gs = gauge(g, r, c);
    GaugeDiagnostics d;
    d.r_inf = norm_inf(r);
    for (std::size_t i = 0; i < g.n(); ++i) {
        d.unimodularity = std::max(d.unimodularity, std::abs(std::abs(gs.psi_plus[i]) - 1.0));
        d.conjugation = std::max(d.conjugation, std::abs(gs.w_minus[i] - std::conj(gs.w_plus[i])));
    }
    d.ode_residual = gauge_ode_residual(g, gs, r, c);
    const CVec rec = reconstruct_dr(gs);
    const RVec rx = deriv(g, r);
    double err = 0.0;
    for (std::size_t i = 0; i < g.n(); ++i) {
        err = std::max(err, std::abs(rec[i] - rx[i]));
        d.imag_residue = std::max(d.imag_residue, std::abs(rec[i].imag()));
    }
    const double scale = norm_inf(rx);
    d.reconstruction = scale > 0.0 ? err / scale : err;
    return d;
}

}  // namespace bos
