#pragma once

#include <cstddef>
#include <memory>

#include "bos/coeffs.hpp"
#include "bos/common.hpp"

namespace bos {

// Uniform periodic grid on [-L/2, L/2) with FFT-ordered wavenumbers
// k_j = 2*pi*j/L, j = 0..n/2-1, -n/2..-1. Copies share the FFTW plans.
class Grid {
public:
    Grid(std::size_t n, double length);

    std::size_t n() const { return n_; }
    double length() const { return length_; }
    double dx() const { return length_ / static_cast<double>(n_); }
    std::size_t nyquist() const { return n_ / 2; }
    // Signed mode index of FFT slot i.
    long mode(std::size_t i) const {
        return i < n_ / 2 ? static_cast<long>(i) : static_cast<long>(i) - static_cast<long>(n_);
    }
    // Largest |j| kept by the 2/3 rule: floor((n - 1)/3).
    long dealias_cutoff() const { return static_cast<long>((n_ - 1) / 3); }

    const RVec& k() const { return k_; }
    const RVec& x() const { return x_; }
    const RVec& abs_k() const { return absk_; }
    // sgn(k) with sgn(0) = 0 and the Nyquist slot zeroed.
    const RVec& sgn_k() const { return sgn_; }
    const RVec& dealias_mask() const { return mask_; }

    // Unnormalised forward transform; inverse divides by n.
    CVec fft(const RVec& f) const;
    CVec fft(const CVec& f) const;
    CVec ifft(const CVec& F) const;
    // Real part of the inverse transform (input assumed Hermitian).
    RVec ifft_real(const CVec& F) const;

    // Transforms of length 2n used by padded products.
    CVec fft2(const CVec& f) const;
    CVec ifft2(const CVec& F) const;

private:
    struct Plans;
    std::size_t n_;
    double length_;
    RVec k_, x_, absk_, sgn_, mask_;
    std::shared_ptr<const Plans> plans_;
};

enum class Dealias { off, two_thirds, strict };

// --- quadrature and norms ---
double integrate(const Grid& g, const RVec& f);
double inner(const Grid& g, const RVec& a, const RVec& b);
double norm_l2(const Grid& g, const RVec& f);
double norm_l2(const Grid& g, const CVec& f);
double norm_inf(const RVec& f);
double norm_inf(const CVec& f);
double mean(const RVec& f);

// --- Fourier multipliers ---
// Multiply the spectrum by a real symbol m(k); m must be even for the real overload.
RVec apply_symbol(const Grid& g, const RVec& f, const RVec& m);
CVec apply_symbol(const Grid& g, const CVec& f, const RVec& m);
// Multiply the spectrum by i*m(k); m must be odd for the real overload.
RVec apply_odd_symbol(const Grid& g, const RVec& f, const RVec& m);
CVec apply_odd_symbol(const Grid& g, const CVec& f, const RVec& m);

RVec deriv(const Grid& g, const RVec& f, int order = 1);
CVec deriv(const Grid& g, const CVec& f, int order = 1);
RVec hilbert(const Grid& g, const RVec& f);
CVec hilbert(const Grid& g, const CVec& f);
RVec abs_d(const Grid& g, const RVec& f);
CVec abs_d(const Grid& g, const CVec& f);
// Periodic antiderivative of a mean-zero field, normalised to zero mean.
RVec antiderivative(const Grid& g, const RVec& f);
// Keep only modes with |j| <= n/3.
RVec truncate(const Grid& g, const RVec& f);
CVec truncate(const Grid& g, const CVec& f);

// P+ keeps k > 0, P- keeps k < 0; the mean and Nyquist slots go half to each.
CVec project(const Grid& g, const CVec& f, int sign);
CVec project(const Grid& g, const RVec& f, int sign);

// d^l [P_sign, h] d^m f, evaluated from the definition.
CVec commutator_apply(const Grid& g, const RVec& h, const CVec& f, int sign, int l, int m);

// --- products ---
RVec product(const Grid& g, const RVec& a, const RVec& b, Dealias mode);
CVec product(const Grid& g, const RVec& a, const CVec& b, Dealias mode);
CVec product(const Grid& g, const CVec& a, const CVec& b, Dealias mode);
RVec abs2(const Grid& g, const CVec& a, Dealias mode);

// --- linear flows ---
// V = exp(-t(a d^3 - b H d^2)), W+- = exp(-t(a d^3 +- i b d^2)), U = exp(-i t alpha d^2).
enum class Flow { V, Wplus, Wminus, U };
CVec flow_symbol(const Grid& g, Flow kind, const ReducedCoeffs& c, double t);
// The generator's symbol L(k), so that the flow is exp(t L).
CVec flow_generator(const Grid& g, Flow kind, const ReducedCoeffs& c);
CVec propagate(const Grid& g, Flow kind, const ReducedCoeffs& c, double t, const CVec& f);
RVec propagate(const Grid& g, Flow kind, const ReducedCoeffs& c, double t, const RVec& f);

// Residual of (a d^3 - b H d^2)(x h) = (3a d^2 - 2b H d) h + x (a d^3 - b H d^2) h.
struct CommutativityResult {
    double abs_residual = 0.0;
    double rel_residual = 0.0;  // relative to max |x L h|
    std::size_t n_eval = 0;     // grid size actually used
};
// h must vanish (to 1e-10 of its max) outside the central half of the window;
// padding > 1 embeds h in a window padding times longer at the same spacing.
CommutativityResult commutativity_check(const Grid& g, const ReducedCoeffs& c, const RVec& h,
                                        int padding = 1);

// Fraction of L2 mass within the outer eighth of the window on each side.
double boundary_mass_fraction(const Grid& g, const RVec& f);
double boundary_mass_fraction(const Grid& g, const CVec& f);

}  // namespace bos
