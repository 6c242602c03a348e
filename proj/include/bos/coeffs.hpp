#pragma once

#include <array>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "bos/common.hpp"

namespace bos {

struct PhysicalParams {
    double g = 9.81;
    double h1 = 500.0;
    double rho = 1000.0;
    double rho1 = 997.0;

    double gamma() const { return 1.0 - rho1 / rho; }
    // Throws DomainError unless g > 0, h1 > 0 and rho > rho1 > 0.
    void validate() const;

    static PhysicalParams andaman();
    static PhysicalParams oregon();
};

// Every symbol at one wavenumber. T is double for real k; std::complex<double>
// is accepted for Re(k) > 0 so the same code serves complex-step derivatives.
template <class T>
struct SymbolsAt {
    T k, G0, G11, G12, B0;
    T Qa, Qb, Qc, theta;
    T a_plus, a_minus, b_plus, b_minus;
    std::array<T, 5> A, B;
    T omega2, omega1_2;
};

template <class T>
SymbolsAt<T> symbols_at(const PhysicalParams& p, T k);

extern template SymbolsAt<double> symbols_at(const PhysicalParams&, double);
extern template SymbolsAt<std::complex<double>> symbols_at(const PhysicalParams&,
                                                           std::complex<double>);

// Column storage so each symbol can be used directly as a Fourier multiplier.
struct SymbolTable {
    RVec k, G0, G11, G12, B0;
    RVec Qa, Qb, Qc, theta;
    RVec a_plus, a_minus, b_plus, b_minus;
    std::array<RVec, 5> A, B;
    RVec omega2, omega1_2;

    std::size_t size() const { return k.size(); }
};

SymbolTable symbol_table(const PhysicalParams& p, std::span<const double> ks);

double dispersion_internal(const PhysicalParams& p, double k);
double dispersion_surface(const PhysicalParams& p, double k);
// Interface frequency squared with a lower layer of finite depth h.
double dispersion_internal_finite_depth(const PhysicalParams& p, double h, double k);

// Coefficients of the reduced Benjamin-Ono / Schrodinger system.
struct ReducedCoeffs {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
};

// Small-wavenumber expansion constants of a+, b+, A3, A4, A5.
struct ExpansionConstants {
    double a_plus0, a_plus1;
    double b_plus0, b_plus1;
    double A3_0;
    double A4_0, A4_1;
    double A5_0, A5_1;
};

struct ModelCoefficients {
    PhysicalParams params;
    double epsilon = 0.1;
    double delta = 0.25;

    double gamma = 0.0;
    double c0 = 0.0;
    double k0 = 0.0;
    double Omega0 = 0.0, Omega1 = 0.0, Omega2 = 0.0;
    double omega1_pp = 0.0;

    ExpansionConstants expansion{};
    std::array<double, 9> kappa{};  // kappa[0] = kappa, kappa[j] = kappa_j
    std::array<double, 5> kt{};     // kt[0] = tilde kappa, kt[j] = tilde kappa_j

    ReducedCoeffs reduced;
    // q_reduced = q_scale * q_full; both r-equation and q-equation then share beta.
    double q_scale = 1.0;
    // Physical time t = tau / epsilon for the full system.
    double time_scale = 1.0;
    bool asymptotic = false;
};

ExpansionConstants expansion_constants(const PhysicalParams& p);

// Throws DomainError when delta is outside (0, 1/2) or epsilon outside (0, 1).
ModelCoefficients derive_coefficients(const PhysicalParams& p, double epsilon = 0.1,
                                      double delta = 0.25);

// Closed-form small-gamma ladder; warn is set when gamma >= 0.1.
ModelCoefficients asymptotic_coefficients(const PhysicalParams& p, double epsilon = 0.1,
                                          double delta = 0.25, bool* warn = nullptr);

ReducedCoeffs reduced_from_ladder(const ModelCoefficients& m);

// Derivative at x by central differences, Richardson-extrapolated over (h, h/2).
template <class F>
double richardson_derivative(F&& f, double x, double h) {
    auto central = [&](double s) { return (f(x + s) - f(x - s)) / (2.0 * s); };
    return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

// Quantities of the kappa ladder evaluated at the carrier wavenumber.
double kappa_B_sq_over_omega1(const PhysicalParams& p, int j, double k);
double kappa_bminus_B4(const PhysicalParams& p, double k);
double kappa_aminus_B5(const PhysicalParams& p, double k);

struct CoefficientEntry {
    std::string name;
    double value;
    std::string tag;
};

// Flat listing used by reports; tags name the defining relation.
std::vector<CoefficientEntry> coefficient_entries(const ModelCoefficients& m);

}  // namespace bos
