#include <cmath>
#include <complex>
#include <limits>

#include "bos/coeffs.hpp"

namespace bos {
namespace {

using std::abs;

inline double abs_k(double k) { return std::abs(k); }
inline cplx abs_k(cplx k) { return k; }  // complex step: Re k > 0
inline double sgn_k(double k) { return static_cast<double>((k > 0) - (k < 0)); }
inline cplx sgn_k(cplx) { return 1.0; }
inline double re(double x) { return x; }
inline double re(cplx x) { return x.real(); }

// |k| coth(h1 |k|), limit 1/h1 at k = 0.
template <class T>
T kcoth(double h1, T a) {
    const T x = h1 * a;
    if (abs(x) < 1e-2) {
        const T x2 = x * x;
        return (1.0 + x2 * (1.0 / 3.0 + x2 * (-1.0 / 45.0 + x2 * (2.0 / 945.0 - x2 / 4725.0)))) / h1;
    }
    return a / std::tanh(x);
}

// |k| csch(h1 |k|), limit 1/h1 at k = 0; decays to zero without overflow.
template <class T>
T kcsch(double h1, T a) {
    const T x = h1 * a;
    if (abs(x) < 1e-2) {
        const T x2 = x * x;
        return (1.0 + x2 * (-1.0 / 6.0 + x2 * (7.0 / 360.0 + x2 * (-31.0 / 15120.0 + x2 * 127.0 / 604800.0)))) / h1;
    }
    if (re(x) < 20.0) return a / std::sinh(x);
    const T e = std::exp(-x);
    return 2.0 * a * e / (1.0 - e * e);
}

}  // namespace

void PhysicalParams::validate() const {
    if (!(g > 0.0) || !std::isfinite(g)) throw DomainError("gravity g must be positive and finite");
    if (!(h1 > 0.0) || !std::isfinite(h1)) throw DomainError("upper-layer depth h1 must be positive and finite");
    if (!(rho1 > 0.0) || !std::isfinite(rho1)) throw DomainError("upper density rho1 must be positive");
    if (!(rho > rho1) || !std::isfinite(rho))
        throw DomainError("stable configuration requires rho > rho1 (lower layer denser)");
}

PhysicalParams PhysicalParams::andaman() { return {9.81, 500.0, 1000.0, 997.0}; }
PhysicalParams PhysicalParams::oregon() { return {9.81, 500.0, 1000.0, 998.0}; }

template <class T>
SymbolsAt<T> symbols_at(const PhysicalParams& p, T k) {
    const double rho = p.rho, rho1 = p.rho1, g = p.g;
    const double drho = rho - rho1;
    const double cA = std::sqrt(g * drho);
    const double cB = std::sqrt(g * rho1);

    SymbolsAt<T> s{};
    const T a = abs_k(k);
    const T sg = sgn_k(k);
    s.k = k;
    s.G0 = a;
    s.G11 = kcoth(p.h1, a);
    const T S = kcsch(p.h1, a);
    s.G12 = -S;
    s.B0 = rho * s.G11 + rho1 * s.G0;

    s.Qa = g * drho * s.G0 * s.G11 / s.B0;
    s.Qb = g * std::sqrt(rho1 * drho) * s.G0 * S / s.B0;
    s.Qc = g * s.G0 * (rho1 * s.G11 + rho * s.G0) / s.B0;

    // theta = (Qc - Qa)/Qb with the common factor G0/B0 cancelled, so k = 0 is regular.
    const T P = (2.0 * rho1 - rho) * s.G11 + rho * s.G0;
    const T St = std::sqrt(rho1 * drho) * S;
    if (abs(St) > 0.0) {
        s.theta = P / St;
    } else {
        s.theta = re(P) >= 0.0 ? std::numeric_limits<double>::max() : -std::numeric_limits<double>::max();
    }

    // a+ = (1 + t^2)^(-1/2), b+ = t a+, with t = (theta + sqrt(4 + theta^2))/2 > 0.
    const T R = std::sqrt(P * P + 4.0 * St * St);
    if (re(P) >= 0.0) {
        const T u = 2.0 * St / (P + R);  // 1/t
        const T n = std::sqrt(1.0 + u * u);
        s.a_plus = u / n;
        s.b_plus = 1.0 / n;
    } else {
        const T t = 2.0 * St / (R - P);
        const T n = std::sqrt(1.0 + t * t);
        s.a_plus = 1.0 / n;
        s.b_plus = t / n;
    }
    s.a_minus = s.b_plus;
    s.b_minus = -s.a_plus;

    s.omega2 = g * drho * s.G0 * s.G0 / s.B0;
    s.omega1_2 = g * s.G0;

    const T ap = s.a_plus, am = s.a_minus, bp = s.b_plus, bm = s.b_minus;
    s.A[0] = (bp * s.Qa - ap * s.Qb) / cA;
    s.B[0] = (bm * s.Qa - am * s.Qb) / cA;
    s.A[1] = (ap * s.Qc - bp * s.Qb) / cB;
    s.B[1] = (am * s.Qc - bm * s.Qb) / cB;
    s.A[2] = sg * s.A[0];
    s.B[2] = sg * s.B[0];
    const T kG0B0 = k * s.G0 / s.B0;
    s.A[3] = bp * cA * kG0B0 + rho * sg * ap * s.Qb / (rho1 * cA);
    s.B[3] = bm * cA * kG0B0 + rho * sg * am * s.Qb / (rho1 * cA);
    s.A[4] = -cB * k * ap;
    s.B[4] = -cB * k * am;
    return s;
}

template SymbolsAt<double> symbols_at(const PhysicalParams&, double);
template SymbolsAt<cplx> symbols_at(const PhysicalParams&, cplx);

SymbolTable symbol_table(const PhysicalParams& p, std::span<const double> ks) {
    p.validate();
    SymbolTable t;
    const std::size_t n = ks.size();
    for (RVec* c : {&t.k, &t.G0, &t.G11, &t.G12, &t.B0, &t.Qa, &t.Qb, &t.Qc, &t.theta, &t.a_plus,
                    &t.a_minus, &t.b_plus, &t.b_minus, &t.omega2, &t.omega1_2})
        c->resize(n);
    for (int j = 0; j < 5; ++j) {
        t.A[j].resize(n);
        t.B[j].resize(n);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(ks[i])) throw DomainError("wavenumber must be finite");
        const auto s = symbols_at(p, ks[i]);
        t.k[i] = s.k;
        t.G0[i] = s.G0;
        t.G11[i] = s.G11;
        t.G12[i] = s.G12;
        t.B0[i] = s.B0;
        t.Qa[i] = s.Qa;
        t.Qb[i] = s.Qb;
        t.Qc[i] = s.Qc;
        t.theta[i] = s.theta;
        t.a_plus[i] = s.a_plus;
        t.a_minus[i] = s.a_minus;
        t.b_plus[i] = s.b_plus;
        t.b_minus[i] = s.b_minus;
        t.omega2[i] = s.omega2;
        t.omega1_2[i] = s.omega1_2;
        for (int j = 0; j < 5; ++j) {
            t.A[j][i] = s.A[j];
            t.B[j][i] = s.B[j];
        }
        bool ok = std::isfinite(s.theta) && std::isfinite(s.a_plus) && std::isfinite(s.b_plus) &&
                  std::isfinite(s.omega2) && std::isfinite(s.Qa) && std::isfinite(s.Qb) &&
                  std::isfinite(s.Qc);
        for (int j = 0; j < 5; ++j) ok = ok && std::isfinite(s.A[j]) && std::isfinite(s.B[j]);
        if (!ok) throw LimitUndefined("non-finite symbol at k=" + std::to_string(ks[i]));
    }
    return t;
}

double dispersion_internal(const PhysicalParams& p, double k) {
    const double a = std::abs(k);
    return p.g * (p.rho - p.rho1) * a * a / (p.rho * kcoth(p.h1, a) + p.rho1 * a);
}

double dispersion_surface(const PhysicalParams& p, double k) { return p.g * std::abs(k); }

double dispersion_internal_finite_depth(const PhysicalParams& p, double h, double k) {
    const double a = std::abs(k);
    if (a == 0.0) return 0.0;
    const double T = std::tanh(h * a);
    const double t1 = std::tanh(p.h1 * a);
    const double rho = p.rho, rho1 = p.rho1;
    // Smaller root of the two-layer quadratic in omega^2, written with coth(h1 k) = 1/t1
    // and rationalised to avoid cancellation at small k.
    const double X = rho * (t1 + T);
    const double Y = rho * rho * (t1 - T) * (t1 - T) + 4.0 * rho * rho1 * T * t1 * (1.0 - T * t1) +
                     4.0 * rho1 * rho1 * T * T * t1 * t1;
    return 2.0 * p.g * a * T * t1 * (rho - rho1) / (X + std::sqrt(Y));
}

}  // namespace bos
