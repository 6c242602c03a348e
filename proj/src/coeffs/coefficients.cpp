#include <cmath>

#include "bos/coeffs.hpp"

namespace bos {
namespace {

// Weights of (B_j^2 / omega1)(k0) in kappa1, and whether each multiplies b+ or a+.
struct LadderWeights {
    std::array<double, 5> w;
    std::array<bool, 5> uses_b;
};

LadderWeights ladder_weights(const PhysicalParams& p) {
    const double g = p.g, rho = p.rho, rho1 = p.rho1, drho = rho - rho1;
    const double cA = std::sqrt(g * drho), cB = std::sqrt(g * rho1);
    return {{-0.5 * std::sqrt(drho / g), 0.5 * std::sqrt(rho1 / g), rho / (2.0 * cA),
             -rho1 / (2.0 * cA), -1.0 / (2.0 * rho1 * cB)},
            {true, false, true, true, false}};
}

}  // namespace

ExpansionConstants expansion_constants(const PhysicalParams& p) {
    const double g = p.g, h1 = p.h1, rho = p.rho, rho1 = p.rho1, drho = rho - rho1;
    const double r = rho1 / rho;
    const double sg = std::sqrt(1.0 - r);
    ExpansionConstants e{};
    e.a_plus0 = sg;
    e.a_plus1 = -r * sg * h1;
    e.b_plus0 = std::sqrt(r);
    e.b_plus1 = (drho / rho) * std::sqrt(r) * h1;
    e.A3_0 = (h1 / rho) * std::sqrt(g * rho1 * drho / rho);
    e.A4_0 = std::sqrt(g * drho / (rho1 * rho));
    e.A4_1 = -e.A4_0 * r * h1;
    e.A5_0 = -std::sqrt(g * rho1 * drho / rho);
    e.A5_1 = -e.A5_0 * r * h1;
    return e;
}

double kappa_B_sq_over_omega1(const PhysicalParams& p, int j, double k) {
    const auto s = symbols_at(p, k);
    return s.B[j] * s.B[j] / std::sqrt(s.omega1_2);
}

double kappa_bminus_B4(const PhysicalParams& p, double k) {
    const auto s = symbols_at(p, k);
    return s.b_minus * s.B[3];
}

double kappa_aminus_B5(const PhysicalParams& p, double k) {
    const auto s = symbols_at(p, k);
    return s.a_minus * s.B[4];
}

ReducedCoeffs reduced_from_ladder(const ModelCoefficients& m) {
    const double e = m.epsilon;
    ReducedCoeffs r;
    r.a = -e * e * m.Omega2 / (2.0 * m.c0);
    r.b = -e * m.Omega1 / (2.0 * m.c0);
    r.c = 6.0 * e * m.kt[0];
    r.d = -e * e * m.kt[2];
    r.alpha = -e * m.omega1_pp / 2.0;
    r.beta = -m.kt[1];
    return r;
}

namespace {

void fill_scales(ModelCoefficients& m, const PhysicalParams& p, double epsilon, double delta) {
    p.validate();
    if (!(delta > 0.0 && delta < 0.5)) throw DomainError("delta must lie in (0, 1/2)");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
    const double g = p.g, h1 = p.h1, rho = p.rho, rho1 = p.rho1, drho = rho - rho1;
    m.params = p;
    m.epsilon = epsilon;
    m.delta = delta;
    m.gamma = p.gamma();
    m.Omega0 = g * h1 * drho / rho;
    m.Omega1 = -g * drho * rho1 * h1 * h1 / (rho * rho);
    m.Omega2 = g * drho * h1 * h1 * h1 / rho * (rho1 * rho1 / (rho * rho) - 1.0 / 3.0);
    m.c0 = std::sqrt(m.Omega0);
    m.k0 = rho / (4.0 * h1 * drho);
    m.omega1_pp = -0.25 * std::sqrt(g) * std::pow(m.k0, -1.5);
    m.expansion = expansion_constants(p);
    m.q_scale = std::pow(epsilon, 0.5 + delta);
    m.time_scale = 1.0 / epsilon;
}

}  // namespace

ModelCoefficients derive_coefficients(const PhysicalParams& p, double epsilon, double delta) {
    ModelCoefficients m;
    fill_scales(m, p, epsilon, delta);
    const double g = p.g, rho = p.rho, rho1 = p.rho1, drho = rho - rho1;
    const double cA = std::sqrt(g * drho), cB = std::sqrt(g * rho1);
    const auto& e = m.expansion;
    const double k0 = m.k0;
    const double h = 1e-5 * k0;

    const auto lw = ladder_weights(p);
    double k1 = 0.0, k4 = 0.0, k6 = 0.0;
    for (int j = 0; j < 5; ++j) {
        const double c0w = lw.uses_b[j] ? e.b_plus0 : e.a_plus0;
        const double c1w = lw.uses_b[j] ? e.b_plus1 : e.a_plus1;
        const double val = kappa_B_sq_over_omega1(p, j, k0);
        const double der = richardson_derivative(
            [&](double k) { return kappa_B_sq_over_omega1(p, j, k); }, k0, h);
        k1 += lw.w[j] * c0w * val;
        k4 += 0.5 * lw.w[j] * c0w * der;
        k6 += lw.w[j] * c1w * val;
    }

    const auto s0 = symbols_at(p, k0);
    const double bB3 = s0.b_minus * s0.B[2];
    const double bB4 = s0.b_minus * s0.B[3];
    const double aB5 = s0.a_minus * s0.B[4];
    const double dbB4 = richardson_derivative([&](double k) { return kappa_bminus_B4(p, k); }, k0, h);
    const double daB5 = richardson_derivative([&](double k) { return kappa_aminus_B5(p, k); }, k0, h);

    auto& K = m.kappa;
    K[0] = rho1 / (2.0 * cA) * e.b_plus0 * e.A4_0 * e.A4_0 +
           1.0 / (2.0 * rho1 * cB) * e.a_plus0 * e.A5_0 * e.A5_0;
    K[1] = k1;
    K[2] = -rho1 / cA * e.A4_0 * bB4 - 1.0 / (rho1 * cB) * e.A5_0 * aB5;
    K[3] = rho1 / cA * e.b_plus0 * e.A4_0 * e.A4_1 + 1.0 / (rho1 * cB) * e.a_plus0 * e.A5_0 * e.A5_1;
    K[4] = k4;
    K[5] = -rho1 / (2.0 * cA) * e.A4_0 * dbB4 - 1.0 / (2.0 * rho1 * cB) * e.A5_0 * daB5;
    K[6] = k6;
    K[7] = rho / cA * e.A3_0 * bB3 - rho1 / cA * e.A4_1 * bB4 - 1.0 / (rho1 * cB) * e.A5_1 * aB5;
    K[8] = rho1 / (2.0 * cA) * e.b_plus1 * e.A4_0 * e.A4_0 +
           1.0 / (2.0 * rho1 * cB) * e.a_plus1 * e.A5_0 * e.A5_0;

    const double c0 = m.c0;
    const double s2c = std::sqrt(2.0 * c0), sh = std::sqrt(c0 / 2.0);
    m.kt[0] = K[0] / (2.0 * s2c);
    m.kt[1] = K[1] * sh + K[2] / s2c;
    m.kt[2] = (K[3] + K[8]) / (2.0 * s2c);
    m.kt[3] = K[4] * sh + K[5] / s2c;
    m.kt[4] = K[6] * sh + K[7] / s2c;
    m.reduced = reduced_from_ladder(m);
    return m;
}

ModelCoefficients asymptotic_coefficients(const PhysicalParams& p, double epsilon, double delta,
                                          bool* warn) {
    ModelCoefficients m;
    fill_scales(m, p, epsilon, delta);
    m.asymptotic = true;
    const double g = p.g, h1 = p.h1, rho1 = p.rho1, gm = m.gamma;
    if (warn) *warn = gm >= 0.1;
    const double g4 = std::pow(g, 0.25), r2 = std::sqrt(2.0 * rho1);
    m.kt[0] = g4 * std::pow(gm, 0.25) / (4.0 * std::pow(h1, 0.25) * r2);
    m.kt[1] = -g4 / (4.0 * std::pow(h1, 1.25) * std::pow(gm, 0.75) * r2);
    m.kt[2] = -g4 * std::pow(gm, 0.25) * std::pow(h1, 0.75) * (1.0 - gm) / (2.0 * r2);
    m.kt[3] = -g4 * std::pow(gm, 0.25) / (2.0 * std::pow(h1, 0.25) * r2);
    m.kt[4] = (1.0 - gm) * g4 / (4.0 * std::pow(h1, 0.25) * std::pow(gm, 0.75) * r2);

    // Leading-order kappa values; the exponentially small ones vanish.
    const double s = std::sqrt(g * gm / rho1);
    auto& K = m.kappa;
    K.fill(0.0);
    K[0] = 0.5 * s;
    K[2] = -std::sqrt(g / (rho1 * gm)) / (4.0 * h1);
    K[3] = -h1 * (1.0 - gm) * s;
    K[5] = -0.5 * s;
    K[7] = 0.25 * (1.0 - gm) * std::sqrt(g / (rho1 * gm));
    m.reduced = reduced_from_ladder(m);
    return m;
}

std::vector<CoefficientEntry> coefficient_entries(const ModelCoefficients& m) {
    const auto& e = m.expansion;
    std::vector<CoefficientEntry> v = {
        {"g", m.params.g, "input"},
        {"h1", m.params.h1, "input"},
        {"rho", m.params.rho, "input"},
        {"rho1", m.params.rho1, "input"},
        {"epsilon", m.epsilon, "input"},
        {"delta", m.delta, "input"},
        {"gamma", m.gamma, "1 - rho1/rho"},
        {"c0", m.c0, "sqrt(Omega0)"},
        {"k0", m.k0, "rho/(4 h1 (rho - rho1))"},
        {"Omega0", m.Omega0, "g h1 (rho - rho1)/rho"},
        {"Omega1", m.Omega1, "-g (rho - rho1) rho1 h1^2/rho^2"},
        {"Omega2", m.Omega2, "g (rho - rho1) h1^3/rho (rho1^2/rho^2 - 1/3)"},
        {"omega1_pp", m.omega1_pp, "-(1/4) sqrt(g) k0^(-3/2)"},
        {"a_plus0", e.a_plus0, "sqrt(1 - rho1/rho)"},
        {"a_plus1", e.a_plus1, "-(rho1/rho) sqrt(1 - rho1/rho) h1"},
        {"b_plus0", e.b_plus0, "sqrt(rho1/rho)"},
        {"b_plus1", e.b_plus1, "((rho - rho1)/rho) sqrt(rho1/rho) h1"},
        {"A3_0", e.A3_0, "(h1/rho) sqrt(g rho1 (rho - rho1)/rho)"},
        {"A4_0", e.A4_0, "sqrt(g (rho - rho1)/(rho1 rho))"},
        {"A4_1", e.A4_1, "-A4_0 (rho1/rho) h1"},
        {"A5_0", e.A5_0, "-sqrt(g rho1 (rho - rho1)/rho)"},
        {"A5_1", e.A5_1, "-A5_0 (rho1/rho) h1"},
    };
    static const char* ktags[9] = {
        "R4,R5 leading terms: b+ A4^2, a+ A5^2",
        "sum_j w_j (B_j^2/omega1)(k0)",
        "A4_0 (b-B4)(k0), A5_0 (a-B5)(k0)",
        "b+0 A4_0 A4_1, a+0 A5_0 A5_1",
        "(1/2) sum_j w_j (B_j^2/omega1)'(k0)",
        "A4_0 (b-B4)'(k0), A5_0 (a-B5)'(k0)",
        "sum_j w_j^(1) (B_j^2/omega1)(k0)",
        "A3_0 (b-B3), A4_1 (b-B4), A5_1 (a-B5) at k0",
        "b+1 A4_0^2, a+1 A5_0^2 (identically zero)",
    };
    for (int j = 0; j < 9; ++j)
        v.push_back({j == 0 ? "kappa" : "kappa" + std::to_string(j), m.kappa[j], ktags[j]});
    static const char* ttags[5] = {
        "kappa/(2 sqrt(2 c0))",
        "kappa1 sqrt(c0/2) + kappa2/sqrt(2 c0)",
        "(kappa3 + kappa8)/(2 sqrt(2 c0))",
        "kappa4 sqrt(c0/2) + kappa5/sqrt(2 c0)",
        "kappa6 sqrt(c0/2) + kappa7/sqrt(2 c0)",
    };
    for (int j = 0; j < 5; ++j)
        v.push_back({j == 0 ? "kt" : "kt" + std::to_string(j), m.kt[j], ttags[j]});
    const auto& r = m.reduced;
    v.push_back({"reduced.a", r.a, "-epsilon^2 Omega2/(2 c0)"});
    v.push_back({"reduced.b", r.b, "-epsilon Omega1/(2 c0)"});
    v.push_back({"reduced.c", r.c, "6 epsilon kt"});
    v.push_back({"reduced.d", r.d, "-epsilon^2 kt2"});
    v.push_back({"reduced.alpha", r.alpha, "-epsilon omega1_pp/2"});
    v.push_back({"reduced.beta", r.beta, "-kt1 (envelope rescaled by q_scale)"});
    v.push_back({"q_scale", m.q_scale, "epsilon^(1/2 + delta)"});
    v.push_back({"time_scale", m.time_scale, "t = tau/epsilon"});
    return v;
}

}  // namespace bos
