#include "bos/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "bos/kernels.hpp"

namespace bos {
namespace {

// FFTW's planner is not re-entrant; execution on distinct arrays is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }
fftw_complex* as_fftw(const cplx* p) { return reinterpret_cast<fftw_complex*>(const_cast<cplx*>(p)); }

bool is_pow2(std::size_t n) { return n && !(n & (n - 1)); }

}  // namespace

struct Grid::Plans {
    fftw_plan fwd = nullptr, inv = nullptr, fwd2 = nullptr, inv2 = nullptr;
    std::size_t n = 0;

    explicit Plans(std::size_t n_) : n(n_) {
        std::lock_guard lock(planner_mutex());
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        CVec a(2 * n), b(2 * n);
        const int ni = static_cast<int>(n);
        fwd = fftw_plan_dft_1d(ni, as_fftw(a.data()), as_fftw(b.data()), FFTW_FORWARD, flags);
        inv = fftw_plan_dft_1d(ni, as_fftw(a.data()), as_fftw(b.data()), FFTW_BACKWARD, flags);
        fwd2 = fftw_plan_dft_1d(2 * ni, as_fftw(a.data()), as_fftw(b.data()), FFTW_FORWARD, flags);
        inv2 = fftw_plan_dft_1d(2 * ni, as_fftw(a.data()), as_fftw(b.data()), FFTW_BACKWARD, flags);
        if (!fwd || !inv || !fwd2 || !inv2) throw Error("FFTW planning failed");
    }
    ~Plans() {
        std::lock_guard lock(planner_mutex());
        for (auto p : {fwd, inv, fwd2, inv2})
            if (p) fftw_destroy_plan(p);
    }
    Plans(const Plans&) = delete;
    Plans& operator=(const Plans&) = delete;
};

Grid::Grid(std::size_t n, double length) : n_(n), length_(length) {
    if (n < 8 || !is_pow2(n)) throw DomainError("grid size must be a power of two and at least 8");
    if (!(length > 0.0) || !std::isfinite(length)) throw DomainError("grid length must be positive");
    k_.resize(n);
    x_.resize(n);
    absk_.resize(n);
    sgn_.resize(n);
    mask_.resize(n);
    const double dk = 2.0 * std::numbers::pi / length;
    const long K = dealias_cutoff();
    for (std::size_t i = 0; i < n; ++i) {
        const long j = mode(i);
        k_[i] = dk * static_cast<double>(j);
        absk_[i] = std::abs(k_[i]);
        sgn_[i] = (i == n / 2) ? 0.0 : static_cast<double>((j > 0) - (j < 0));
        mask_[i] = std::labs(j) <= K ? 1.0 : 0.0;
        x_[i] = -0.5 * length + dx() * static_cast<double>(i);
    }
    plans_ = std::make_shared<const Plans>(n);
}

CVec Grid::fft(const CVec& f) const {
    CVec out(n_);
    fftw_execute_dft(plans_->fwd, as_fftw(f.data()), as_fftw(out.data()));
    return out;
}

CVec Grid::fft(const RVec& f) const {
    CVec in(f.begin(), f.end());
    return fft(in);
}

CVec Grid::ifft(const CVec& F) const {
    CVec out(n_);
    fftw_execute_dft(plans_->inv, as_fftw(F.data()), as_fftw(out.data()));
    const double s = 1.0 / static_cast<double>(n_);
    for (auto& v : out) v *= s;
    return out;
}

RVec Grid::ifft_real(const CVec& F) const {
    const CVec c = ifft(F);
    RVec out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = c[i].real();
    return out;
}

CVec Grid::fft2(const CVec& f) const {
    CVec out(2 * n_);
    fftw_execute_dft(plans_->fwd2, as_fftw(f.data()), as_fftw(out.data()));
    return out;
}

CVec Grid::ifft2(const CVec& F) const {
    CVec out(2 * n_);
    fftw_execute_dft(plans_->inv2, as_fftw(F.data()), as_fftw(out.data()));
    const double s = 1.0 / static_cast<double>(2 * n_);
    for (auto& v : out) v *= s;
    return out;
}

// ---------------------------------------------------------------- quadrature

double integrate(const Grid& g, const RVec& f) { return g.dx() * kernels::active().sum(f.data(), f.size()); }

double inner(const Grid& g, const RVec& a, const RVec& b) {
    return g.dx() * kernels::active().dot(a.data(), b.data(), a.size());
}

double norm_l2(const Grid& g, const RVec& f) { return std::sqrt(inner(g, f, f)); }

double norm_l2(const Grid& g, const CVec& f) {
    RVec m(f.size());
    kernels::active().abs2(m.data(), f.data(), f.size());
    return std::sqrt(integrate(g, m));
}

double norm_inf(const RVec& f) {
    double m = 0.0;
    for (double v : f) m = std::max(m, std::abs(v));
    return m;
}

double norm_inf(const CVec& f) {
    double m = 0.0;
    for (const auto& v : f) m = std::max(m, std::abs(v));
    return m;
}

double mean(const RVec& f) { return kernels::active().sum(f.data(), f.size()) / static_cast<double>(f.size()); }

// ---------------------------------------------------------------- multipliers

CVec apply_symbol(const Grid& g, const CVec& f, const RVec& m) {
    CVec F = g.fft(f);
    kernels::active().mul_complex_real(F.data(), F.data(), m.data(), F.size());
    return g.ifft(F);
}

RVec apply_symbol(const Grid& g, const RVec& f, const RVec& m) {
    CVec F = g.fft(f);
    kernels::active().mul_complex_real(F.data(), F.data(), m.data(), F.size());
    return g.ifft_real(F);
}

CVec apply_odd_symbol(const Grid& g, const CVec& f, const RVec& m) {
    CVec F = g.fft(f);
    for (std::size_t i = 0; i < F.size(); ++i) F[i] = cplx(-F[i].imag() * m[i], F[i].real() * m[i]);
    return g.ifft(F);
}

RVec apply_odd_symbol(const Grid& g, const RVec& f, const RVec& m) {
    CVec F = g.fft(f);
    for (std::size_t i = 0; i < F.size(); ++i) F[i] = cplx(-F[i].imag() * m[i], F[i].real() * m[i]);
    return g.ifft_real(F);
}

namespace {

// Real symbol s with deriv^order = i^order * s; odd orders drop the Nyquist slot.
RVec deriv_symbol(const Grid& g, int order, bool& odd) {
    RVec s(g.n());
    odd = order % 2 != 0;
    const double sign = (order / 2) % 2 == 0 ? 1.0 : -1.0;  // i^(2m) = (-1)^m
    for (std::size_t i = 0; i < g.n(); ++i) {
        s[i] = sign * std::pow(g.k()[i], order);
        if (odd && i == g.nyquist()) s[i] = 0.0;
    }
    return s;
}

template <class V>
V deriv_impl(const Grid& g, const V& f, int order) {
    if (order < 0) throw DomainError("derivative order must be non-negative");
    if (order == 0) return f;
    bool odd = false;
    const RVec s = deriv_symbol(g, order, odd);
    return odd ? apply_odd_symbol(g, f, s) : apply_symbol(g, f, s);
}

RVec neg(RVec v) {
    for (auto& x : v) x = -x;
    return v;
}

}  // namespace

RVec deriv(const Grid& g, const RVec& f, int order) { return deriv_impl(g, f, order); }
CVec deriv(const Grid& g, const CVec& f, int order) { return deriv_impl(g, f, order); }

// H = -i sgn(k)
RVec hilbert(const Grid& g, const RVec& f) { return apply_odd_symbol(g, f, neg(g.sgn_k())); }
CVec hilbert(const Grid& g, const CVec& f) { return apply_odd_symbol(g, f, neg(g.sgn_k())); }
RVec abs_d(const Grid& g, const RVec& f) { return apply_symbol(g, f, g.abs_k()); }
CVec abs_d(const Grid& g, const CVec& f) { return apply_symbol(g, f, g.abs_k()); }

RVec antiderivative(const Grid& g, const RVec& f) {
    // 1/(ik) = i * (-1/k)
    RVec s(g.n(), 0.0);
    for (std::size_t i = 1; i < g.n(); ++i)
        if (i != g.nyquist()) s[i] = -1.0 / g.k()[i];
    return apply_odd_symbol(g, f, s);
}

RVec truncate(const Grid& g, const RVec& f) { return apply_symbol(g, f, g.dealias_mask()); }
CVec truncate(const Grid& g, const CVec& f) { return apply_symbol(g, f, g.dealias_mask()); }

namespace {
RVec projection_symbol(const Grid& g, int sign) {
    if (sign != 1 && sign != -1) throw DomainError("projection sign must be +1 or -1");
    RVec s(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double sg = g.sgn_k()[i];
        s[i] = sg == 0.0 ? 0.5 : (sg * sign > 0 ? 1.0 : 0.0);
    }
    return s;
}
}  // namespace

CVec project(const Grid& g, const CVec& f, int sign) { return apply_symbol(g, f, projection_symbol(g, sign)); }
CVec project(const Grid& g, const RVec& f, int sign) { return project(g, CVec(f.begin(), f.end()), sign); }

CVec commutator_apply(const Grid& g, const RVec& h, const CVec& f, int sign, int l, int m) {
    const CVec dmf = deriv(g, f, m);
    CVec hf(g.n()), hpf(g.n());
    const CVec pf = project(g, dmf, sign);
    for (std::size_t i = 0; i < g.n(); ++i) {
        hf[i] = h[i] * dmf[i];
        hpf[i] = h[i] * pf[i];
    }
    const CVec phf = project(g, hf, sign);
    CVec c(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) c[i] = phf[i] - hpf[i];
    return deriv(g, c, l);
}

// ---------------------------------------------------------------- products

namespace {

// Embed an n-spectrum into a 2n-spectrum, splitting the Nyquist coefficient
// between +n/2 and -n/2 so real fields stay real.
CVec pad_spectrum(const Grid& g, const CVec& F) {
    const std::size_t n = g.n(), h = n / 2;
    CVec P(2 * n, cplx(0.0));
    for (std::size_t i = 0; i < h; ++i) P[i] = F[i];
    for (std::size_t i = h + 1; i < n; ++i) P[n + i] = F[i];
    P[h] = 0.5 * F[h];
    P[2 * n - h] = 0.5 * F[h];
    return P;
}

CVec unpad_spectrum(const Grid& g, const CVec& P) {
    const std::size_t n = g.n(), h = n / 2;
    CVec F(n);
    for (std::size_t i = 0; i < h; ++i) F[i] = P[i];
    for (std::size_t i = h + 1; i < n; ++i) F[i] = P[n + i];
    F[h] = P[h] + P[2 * n - h];
    return F;
}

// Samples of the trigonometric interpolant on the 2n grid.
CVec padded_values(const Grid& g, const CVec& f) {
    CVec v = g.ifft2(pad_spectrum(g, g.fft(f)));
    for (auto& x : v) x *= 2.0;
    return v;
}

CVec strict_product(const Grid& g, const CVec& a, const CVec& b) {
    const CVec A = padded_values(g, a), B = padded_values(g, b);
    CVec AB(A.size());
    kernels::active().mul_complex(AB.data(), A.data(), B.data(), A.size());
    CVec P = g.fft2(AB);
    // fft2 of padded values carries a factor 2n; the n-grid convention wants n.
    for (auto& v : P) v *= 0.5;
    return g.ifft(unpad_spectrum(g, P));
}

CVec to_c(const RVec& v) { return CVec(v.begin(), v.end()); }

RVec real_part(const CVec& v) {
    RVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].real();
    return r;
}

}  // namespace

CVec product(const Grid& g, const CVec& a, const CVec& b, Dealias mode) {
    if (mode == Dealias::strict) return strict_product(g, a, b);
    CVec out(g.n());
    if (mode == Dealias::off) {
        kernels::active().mul_complex(out.data(), a.data(), b.data(), g.n());
        return out;
    }
    const CVec at = truncate(g, a), bt = truncate(g, b);
    kernels::active().mul_complex(out.data(), at.data(), bt.data(), g.n());
    return truncate(g, out);
}

CVec product(const Grid& g, const RVec& a, const CVec& b, Dealias mode) { return product(g, to_c(a), b, mode); }

RVec product(const Grid& g, const RVec& a, const RVec& b, Dealias mode) {
    if (mode == Dealias::strict) return real_part(strict_product(g, to_c(a), to_c(b)));
    RVec out(g.n());
    if (mode == Dealias::off) {
        kernels::active().mul_real(out.data(), a.data(), b.data(), g.n());
        return out;
    }
    const RVec at = truncate(g, a), bt = truncate(g, b);
    kernels::active().mul_real(out.data(), at.data(), bt.data(), g.n());
    return truncate(g, out);
}

RVec abs2(const Grid& g, const CVec& a, Dealias mode) {
    if (mode == Dealias::strict) {
        CVec c(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) c[i] = std::conj(a[i]);
        return real_part(strict_product(g, a, c));
    }
    RVec out(g.n());
    if (mode == Dealias::off) {
        kernels::active().abs2(out.data(), a.data(), g.n());
        return out;
    }
    const CVec at = truncate(g, a);
    kernels::active().abs2(out.data(), at.data(), g.n());
    return truncate(g, out);
}

// ---------------------------------------------------------------- flows

CVec flow_generator(const Grid& g, Flow kind, const ReducedCoeffs& c) {
    CVec L(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double k = g.k()[i];
        const bool nyq = i == g.nyquist();
        double w = 0.0;
        switch (kind) {
            case Flow::V:  // a(ik)^3 - b(-i sgn k)(ik)^2 = -i(a k^3 + b k|k|)
                w = nyq ? 0.0 : c.a * k * k * k + c.b * k * std::abs(k);
                break;
            case Flow::Wplus:  // a(ik)^3 + i b (ik)^2 = -i(a k^3 + b k^2)
                w = (nyq ? 0.0 : c.a * k * k * k) + c.b * k * k;
                break;
            case Flow::Wminus:
                w = (nyq ? 0.0 : c.a * k * k * k) - c.b * k * k;
                break;
            case Flow::U:  // i alpha (ik)^2 = -i alpha k^2
                w = c.alpha * k * k;
                break;
        }
        L[i] = cplx(0.0, w);
    }
    return L;
}

CVec flow_symbol(const Grid& g, Flow kind, const ReducedCoeffs& c, double t) {
    CVec L = flow_generator(g, kind, c);
    for (auto& v : L) v = std::polar(1.0, t * v.imag());
    return L;
}

CVec propagate(const Grid& g, Flow kind, const ReducedCoeffs& c, double t, const CVec& f) {
    CVec F = g.fft(f);
    const CVec S = flow_symbol(g, kind, c, t);
    kernels::active().mul_complex(F.data(), F.data(), S.data(), F.size());
    return g.ifft(F);
}

RVec propagate(const Grid& g, Flow kind, const ReducedCoeffs& c, double t, const RVec& f) {
    return real_part(propagate(g, kind, c, t, to_c(f)));
}

// ---------------------------------------------------------------- commutativity

namespace {

// A = a d^3 - b H d^2, symbol -i(a k^3 + b k|k|), odd.
RVec apply_A(const Grid& g, const ReducedCoeffs& c, const RVec& f) {
    RVec s(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double k = g.k()[i];
        s[i] = i == g.nyquist() ? 0.0 : -(c.a * k * k * k + c.b * k * std::abs(k));
    }
    return apply_odd_symbol(g, f, s);
}

// 3a d^2 - 2b H d, symbol -3a k^2 - 2b|k|, even.
RVec apply_dA(const Grid& g, const ReducedCoeffs& c, const RVec& f) {
    RVec s(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double k = g.k()[i];
        s[i] = -3.0 * c.a * k * k - 2.0 * c.b * std::abs(k);
    }
    return apply_symbol(g, f, s);
}

}  // namespace

CommutativityResult commutativity_check(const Grid& g, const ReducedCoeffs& c, const RVec& h, int padding) {
    if (h.size() != g.n()) throw DomainError("field size does not match grid");
    if (padding < 1) throw DomainError("padding factor must be at least 1");
    const double hmax = norm_inf(h);
    CommutativityResult res;
    if (hmax == 0.0) {
        res.n_eval = g.n() * static_cast<std::size_t>(padding);
        return res;
    }
    const double quarter = 0.25 * g.length();
    for (std::size_t i = 0; i < g.n(); ++i)
        if (std::abs(g.x()[i]) >= quarter && std::abs(h[i]) > 1e-10 * hmax)
            throw SupportViolation("field is not supported in the central half of the window");

    const std::size_t P = static_cast<std::size_t>(padding);
    const Grid G(g.n() * P, g.length() * static_cast<double>(P));
    RVec H(G.n(), 0.0);
    const std::size_t off = (G.n() - g.n()) / 2;
    std::copy(h.begin(), h.end(), H.begin() + static_cast<long>(off));

    RVec xh(G.n());
    for (std::size_t i = 0; i < G.n(); ++i) xh[i] = G.x()[i] * H[i];
    const RVec lhs = apply_A(G, c, xh);
    const RVec t1 = apply_dA(G, c, H);
    const RVec Ah = apply_A(G, c, H);
    double r = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < G.n(); ++i) {
        const double rhs = t1[i] + G.x()[i] * Ah[i];
        r = std::max(r, std::abs(lhs[i] - rhs));
        scale = std::max(scale, std::abs(lhs[i]));
    }
    res.abs_residual = r;
    res.rel_residual = scale > 0.0 ? r / scale : 0.0;
    res.n_eval = G.n();
    return res;
}

double boundary_mass_fraction(const Grid& g, const RVec& f) {
    double edge = 0.0, total = 0.0;
    const double lim = 0.375 * g.length();
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double m = f[i] * f[i];
        total += m;
        if (std::abs(g.x()[i]) >= lim) edge += m;
    }
    return total > 0.0 ? edge / total : 0.0;
}

double boundary_mass_fraction(const Grid& g, const CVec& f) {
    double edge = 0.0, total = 0.0;
    const double lim = 0.375 * g.length();
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double m = std::norm(f[i]);
        total += m;
        if (std::abs(g.x()[i]) >= lim) edge += m;
    }
    return total > 0.0 ? edge / total : 0.0;
}

}  // namespace bos
