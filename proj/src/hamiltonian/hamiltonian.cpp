#include "bos/hamiltonian.hpp"

#include <cmath>
#include <random>

namespace bos {
namespace {

CVec to_c(const RVec& v) { return CVec(v.begin(), v.end()); }

RVec real_part(const CVec& v) {
    RVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].real();
    return r;
}

CVec operator+(CVec a, const CVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

CVec operator-(CVec a, const CVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

CVec operator*(double s, CVec a) {
    for (auto& v : a) v *= s;
    return a;
}

RVec zip(const RVec& a, const RVec& b, double (*op)(double, double)) {
    RVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = op(a[i], b[i]);
    return r;
}

double times(double a, double b) { return a * b; }
double over(double a, double b) { return a / b; }

RVec scaled(RVec a, double s) {
    for (auto& v : a) v *= s;
    return a;
}

// Odd symbols lose the Nyquist slot so real inputs stay (imaginary-)consistent.
RVec odd(const Grid& g, RVec m) {
    m[g.nyquist()] = 0.0;
    return m;
}

}  // namespace

// ---------------------------------------------------------------- DNO

DnoFirstOrder::DnoFirstOrder(const Grid& g, const PhysicalParams& p, RVec eta, RVec eta1, Dealias mode)
    : g_(g), p_(p), eta_(std::move(eta)), eta1_(std::move(eta1)), mode_(mode) {
    const auto t = symbol_table(p, g.k());
    D_ = odd(g, g.k());
    absD_ = t.G0;
    C_ = t.G11;
    S_ = scaled(t.G12, -1.0);
}

CVec DnoFirstOrder::sandwich(const RVec& m1, const RVec& e, const RVec& m2, const CVec& f) const {
    const CVec inner = apply_symbol(g_, f, m2);
    return apply_symbol(g_, product(g_, e, inner, mode_), m1);
}

CVec DnoFirstOrder::G1(const CVec& f) const { return sandwich(D_, eta_, D_, f) - sandwich(absD_, eta_, absD_, f); }
CVec DnoFirstOrder::G11_10(const CVec& f) const { return sandwich(C_, eta_, C_, f) - sandwich(D_, eta_, D_, f); }
CVec DnoFirstOrder::G11_01(const CVec& f) const { return -1.0 * sandwich(S_, eta1_, S_, f); }
CVec DnoFirstOrder::G12_10(const CVec& f) const { return -1.0 * sandwich(C_, eta_, S_, f); }
CVec DnoFirstOrder::G12_01(const CVec& f) const { return sandwich(S_, eta1_, C_, f); }
CVec DnoFirstOrder::G21_10(const CVec& f) const { return -1.0 * sandwich(S_, eta_, C_, f); }
CVec DnoFirstOrder::G21_01(const CVec& f) const { return sandwich(C_, eta1_, S_, f); }
CVec DnoFirstOrder::G22_10(const CVec& f) const { return sandwich(S_, eta_, S_, f); }
CVec DnoFirstOrder::G22_01(const CVec& f) const { return sandwich(D_, eta1_, D_, f) - sandwich(C_, eta1_, C_, f); }

CVec DnoFirstOrder::G11_1(const CVec& f) const { return G11_10(f) + G11_01(f); }
CVec DnoFirstOrder::G12_1(const CVec& f) const { return G12_10(f) + G12_01(f); }
CVec DnoFirstOrder::G21_1(const CVec& f) const { return G21_10(f) + G21_01(f); }
CVec DnoFirstOrder::G22_1(const CVec& f) const { return G22_10(f) + G22_01(f); }
CVec DnoFirstOrder::B1(const CVec& f) const { return p_.rho * G11_1(f) + p_.rho1 * G1(f); }

// ---------------------------------------------------------------- Hamiltonian

Hamiltonian::Hamiltonian(const Grid& g, const PhysicalParams& p, Dealias mode)
    : g_(g), p_(p), mode_(mode), sym_(symbol_table(p, g.k())) {
    D_ = odd(g, g.k());
    for (int j = 2; j < 5; ++j) {
        sym_.A[j] = odd(g, sym_.A[j]);
        sym_.B[j] = odd(g, sym_.B[j]);
    }
}

void Hamiltonian::check(const FourField& f, Coords want) const {
    if (f.coords != want) throw CoordinateMismatch("field is in the wrong coordinate system");
    for (const auto& c : f.f)
        if (c.size() != g_.n()) throw CoordinateMismatch("field size does not match grid");
}

double Hamiltonian::quad(const CVec& a, const CVec& b) const {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] * b[i]).real();
    return s * g_.dx();
}

double Hamiltonian::cubic(const CVec& a, const CVec& b, const CVec& c) const {
    return quad(a, product(g_, b, c, mode_));
}

FourField Hamiltonian::normal_transform(const FourField& f) const {
    check(f, Coords::original);
    const double cA = std::sqrt(p_.g * (p_.rho - p_.rho1)), cB = std::sqrt(p_.g * p_.rho1);
    const auto& [eta, xi, eta1, xi1] = f.f;
    const auto& s = sym_;
    FourField out;
    out.coords = Coords::normal;
    out.f[0] = real_part(mul(scaled(s.a_minus, cA), eta) + mul(scaled(s.b_minus, cB), eta1));
    out.f[1] = real_part(mul(scaled(s.a_minus, 1.0 / cA), xi) + mul(scaled(s.b_minus, 1.0 / cB), xi1));
    out.f[2] = real_part(mul(scaled(s.a_plus, cA), eta) + mul(scaled(s.b_plus, cB), eta1));
    out.f[3] = real_part(mul(scaled(s.a_plus, 1.0 / cA), xi) + mul(scaled(s.b_plus, 1.0 / cB), xi1));
    return out;
}

// The scaled 2x2 blocks [[a-, b-], [a+, b+]] have unit determinant, so the
// inverse is [[b+, -b-], [-a+, a-]].
FourField Hamiltonian::inverse_transform(const FourField& f) const {
    check(f, Coords::normal);
    const double cA = std::sqrt(p_.g * (p_.rho - p_.rho1)), cB = std::sqrt(p_.g * p_.rho1);
    const auto& [mu, ze, mu1, ze1] = f.f;
    const auto& s = sym_;
    FourField out;
    out.coords = Coords::original;
    out.f[0] = real_part(mul(scaled(s.b_plus, 1.0 / cA), mu) - mul(scaled(s.b_minus, 1.0 / cA), mu1));
    out.f[1] = real_part(mul(scaled(s.b_plus, cA), ze) - mul(scaled(s.b_minus, cA), ze1));
    out.f[2] = real_part(mul(scaled(s.a_minus, 1.0 / cB), mu1) - mul(scaled(s.a_plus, 1.0 / cB), mu));
    out.f[3] = real_part(mul(scaled(s.a_minus, cB), ze1) - mul(scaled(s.a_plus, cB), ze));
    return out;
}

double Hamiltonian::eval_H2(const FourField& f) const {
    const auto& s = sym_;
    if (f.coords == Coords::normal) {
        check(f, Coords::normal);
        const auto& [mu, ze, mu1, ze1] = f.f;
        const CVec z = to_c(ze), z1 = to_c(ze1);
        return 0.5 * (quad(z, mul(s.omega2, ze)) + inner(g_, mu, mu) + quad(z1, mul(s.omega1_2, ze1)) +
                      inner(g_, mu1, mu1));
    }
    check(f, Coords::original);
    const auto& [eta, xi, eta1, xi1] = f.f;
    const RVec GB = zip(s.G0, s.B0, over);
    const RVec K11 = zip(GB, s.G11, times);
    const RVec K12 = scaled(zip(GB, s.G12, times), -1.0);
    RVec K22(g_.n());
    for (std::size_t i = 0; i < g_.n(); ++i)
        K22[i] = s.G0[i] * (p_.rho * s.G0[i] + p_.rho1 * s.G11[i]) / (p_.rho1 * s.B0[i]);
    const CVec x = to_c(xi), x1 = to_c(xi1);
    return 0.5 * (quad(x, mul(K11, xi)) + 2.0 * quad(x, mul(K12, xi1)) + quad(x1, mul(K22, xi1)) +
                  p_.g * (p_.rho - p_.rho1) * inner(g_, eta, eta) + p_.g * p_.rho1 * inner(g_, eta1, eta1));
}

H3Breakdown Hamiltonian::eval_H3(const FourField& f) const {
    const auto& s = sym_;
    const double rho = p_.rho, rho1 = p_.rho1, dr = rho - rho1;
    H3Breakdown out;
    if (f.coords == Coords::normal) {
        check(f, Coords::normal);
        const double cA = std::sqrt(p_.g * dr), cB = std::sqrt(p_.g * rho1);
        const auto& [mu, ze, mu1, ze1] = f.f;
        const CVec eb = mul(s.b_plus, mu) - mul(s.b_minus, mu1);
        const CVec ea = mul(s.a_plus, mu) - mul(s.a_minus, mu1);
        auto Z = [&](int j) { return mul(s.A[j], ze) - mul(s.B[j], ze1); };
        const CVec Z1 = Z(0), Z2 = Z(1), Z3 = Z(2), Z4 = Z(3), Z5 = Z(4);
        out.terms[0] = -dr / (2.0 * cA) * cubic(eb, Z1, Z1);
        out.terms[1] = rho1 / (2.0 * cB) * cubic(ea, Z2, Z2);
        out.terms[2] = -rho / (2.0 * cA) * cubic(eb, Z3, Z3);
        out.terms[3] = rho1 / (2.0 * cA) * cubic(eb, Z4, Z4);
        out.terms[4] = 1.0 / (2.0 * rho1 * cB) * cubic(ea, Z5, Z5);
    } else {
        check(f, Coords::original);
        const auto& [eta, xi, eta1, xi1] = f.f;
        const RVec GB = zip(s.G0, s.B0, over), DB = zip(D_, s.B0, over);
        RVec Y2(g_.n());
        for (std::size_t i = 0; i < g_.n(); ++i) Y2[i] = GB[i] * (rho1 * s.G11[i] + rho * s.G0[i]) / rho1;
        const CVec X1 = mul(zip(GB, s.G11, times), xi) - mul(zip(GB, s.G12, times), xi1);
        const CVec X2 = mul(zip(GB, s.G12, times), xi) - mul(Y2, xi1);
        const CVec X3 = mul(zip(DB, s.G11, times), xi) - mul(zip(DB, s.G12, times), xi1);
        const CVec X4 = mul(zip(DB, s.G0, times), xi) + mul(scaled(zip(DB, s.G12, times), rho / rho1), xi1);
        const CVec X5 = mul(D_, xi1);
        const CVec e = to_c(eta), e1 = to_c(eta1);
        out.terms[0] = -0.5 * dr * cubic(e, X1, X1);
        out.terms[1] = -0.5 * rho1 * cubic(e1, X2, X2);
        out.terms[2] = -0.5 * rho * cubic(e, X3, X3);
        out.terms[3] = 0.5 * rho1 * cubic(e, X4, X4);
        out.terms[4] = -0.5 / rho1 * cubic(e1, X5, X5);
    }
    for (double t : out.terms) out.total += t;
    return out;
}

KineticCubic Hamiltonian::kinetic_cubic_parts(const FourField& f) const {
    check(f, Coords::original);
    const auto& s = sym_;
    const double rho = p_.rho, rho1 = p_.rho1, dr = rho - rho1;
    const auto& [eta, xi, eta1, xi1] = f.f;
    const RVec GB = zip(s.G0, s.B0, over), DB = zip(D_, s.B0, over);
    RVec Ym(g_.n());
    for (std::size_t i = 0; i < g_.n(); ++i) Ym[i] = GB[i] * (rho1 * s.G11[i] + rho * s.G0[i]);
    const CVec U = mul(zip(DB, s.G11, times), xi);
    const CVec P = mul(zip(GB, s.G11, times), xi);
    const CVec W = mul(zip(DB, s.G0, times), xi);
    const CVec X = mul(zip(GB, s.G12, times), xi);
    const CVec Q = mul(zip(GB, s.G12, times), xi1);
    const CVec V = mul(zip(DB, s.G12, times), xi1);
    const CVec Y = mul(Ym, xi1);
    const CVec X5 = mul(D_, xi1);
    const CVec e = to_c(eta), e1 = to_c(eta1);
    KineticCubic k;
    k.I3 = 0.5 * (-rho * cubic(e, U, U) - dr * cubic(e, P, P) + rho1 * cubic(e, W, W) - rho1 * cubic(e1, X, X));
    k.II3 = -rho * cubic(e, U, V) - dr * cubic(e, P, Q) - rho * cubic(e, W, V) - cubic(e1, X, Y);
    k.III3 = 0.5 * (-dr * cubic(e, Q, Q) + rho / rho1 * dr * cubic(e, V, V) - cubic(e1, Y, Y) / rho1 -
                    cubic(e1, X5, X5) / rho1);
    return k;
}

KineticCubic Hamiltonian::kinetic_cubic_operator_route(const FourField& f) const {
    check(f, Coords::original);
    const auto& s = sym_;
    const double rho = p_.rho, rho1 = p_.rho1;
    const auto& [eta, xi, eta1, xi1] = f.f;
    const DnoFirstOrder G = dno_first_order(eta, eta1);
    const RVec invB = zip(RVec(g_.n(), 1.0), s.B0, over);
    auto Bi = [&](const CVec& v) { return mul(invB, v); };
    const CVec x = to_c(xi), x1 = to_c(xi1);

    const CVec G0x = Bi(mul(s.G0, x));
    const CVec G12x1 = Bi(mul(s.G12, x1));
    KineticCubic k;
    const CVec t1 = G.G11_1(G0x) + mul(s.G11, Bi(G.G1(x))) - mul(s.G11, Bi(G.B1(G0x)));
    k.I3 = 0.5 * quad(x, t1);
    const CVec t2 = G.G1(G12x1) + mul(s.G0, Bi(G.G12_1(x1))) - mul(s.G0, Bi(G.B1(G12x1)));
    k.II3 = quad(x, t2);
    const CVec t3 = G.G21_1(G12x1) + mul(s.G12, Bi(G.G12_1(x1))) - mul(s.G12, Bi(G.B1(G12x1)));
    k.III3 = 0.5 * (quad(x1, G.G22_1(x1)) / rho1 - rho / rho1 * quad(x1, t3));
    return k;
}

DnoFirstOrder Hamiltonian::dno_first_order(const RVec& eta, const RVec& eta1) const {
    return DnoFirstOrder(g_, p_, eta, eta1, mode_);
}

// ---------------------------------------------------------------- random data

RVec random_band_limited(const Grid& g, std::uint64_t seed, double amplitude, bool zero_mean, long max_mode) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    const std::size_t n = g.n();
    const long K = max_mode < 0 ? g.dealias_cutoff() : std::min(max_mode, g.dealias_cutoff());
    CVec F(n, cplx(0.0));
    if (!zero_mean) F[0] = nd(rng);
    for (long j = 1; j <= K; ++j) {
        const cplx c(nd(rng), nd(rng));
        F[static_cast<std::size_t>(j)] = c;
        F[n - static_cast<std::size_t>(j)] = std::conj(c);
    }
    RVec f = g.ifft_real(F);
    const double m = norm_inf(f);
    if (m > 0.0)
        for (auto& v : f) v *= amplitude / m;
    return f;
}

FourField random_four_field(const Grid& g, const PhysicalParams& p, std::uint64_t seed) {
    const double amp = 0.05 * p.h1;
    const double pot = amp * std::sqrt(p.g * p.h1);
    FourField f;
    f.coords = Coords::original;
    f.f[0] = random_band_limited(g, seed * 4 + 0, amp);
    f.f[1] = random_band_limited(g, seed * 4 + 1, pot);
    f.f[2] = random_band_limited(g, seed * 4 + 2, amp);
    f.f[3] = random_band_limited(g, seed * 4 + 3, pot);
    return f;
}

}  // namespace bos
