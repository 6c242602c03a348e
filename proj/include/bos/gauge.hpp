#pragma once

#include "bos/coeffs.hpp"
#include "bos/spectral.hpp"

namespace bos {

// Psi+ = exp(-(2 i d / 3a) * antiderivative(r)), Psi- = conj(Psi+),
// w+- = Psi+- d/dx P+- r.
struct GaugedState {
    CVec psi_plus, psi_minus;
    CVec w_plus, w_minus;
};

// Throws NonZeroMean if |mean(r)| > 1e-10 max(1, |r|_inf), DomainError if a = 0.
GaugedState gauge(const Grid& g, const RVec& r, const ReducedCoeffs& c);

// Psi- w+ + Psi+ w-, which should equal d/dx r; returned complex so the
// imaginary residue can be inspected.
CVec reconstruct_dr(const GaugedState& gs);

// max |3a d/dx Psi+ + 2 i d Psi+ r|
double gauge_ode_residual(const Grid& g, const GaugedState& gs, const RVec& r, const ReducedCoeffs& c);

struct GaugeDiagnostics {
    double unimodularity = 0.0;     // max ||Psi+| - 1|
    double conjugation = 0.0;       // max |w- - conj(w+)|
    double ode_residual = 0.0;      // absolute
    double reconstruction = 0.0;    // max |reconstruct - r_x| / max |r_x|
    double imag_residue = 0.0;      // max |Im reconstruct|
    double r_inf = 0.0;
};

GaugeDiagnostics gauge_diagnostics(const Grid& g, const RVec& r, const ReducedCoeffs& c);

}  // namespace bos
