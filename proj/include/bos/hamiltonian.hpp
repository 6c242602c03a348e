#pragma once

#include <array>
#include <cstdint>

#include "bos/coeffs.hpp"
#include "bos/spectral.hpp"

namespace bos {

enum class Coords { original, normal };

// (eta, xi, eta1, xi1) in original coordinates, (mu, zeta, mu1, zeta1) in normal modes.
struct FourField {
    Coords coords = Coords::original;
    std::array<RVec, 4> f;
};

// First-order Dirichlet-Neumann operators for elevations (eta, eta1).
// D = -i d/dx is applied literally, so outputs are complex.
class DnoFirstOrder {
public:
    DnoFirstOrder(const Grid& g, const PhysicalParams& p, RVec eta, RVec eta1, Dealias mode);

    // D eta D - |D| eta |D|
    CVec G1(const CVec& f) const;
    CVec G11_10(const CVec& f) const;
    CVec G11_01(const CVec& f) const;
    CVec G12_10(const CVec& f) const;
    CVec G12_01(const CVec& f) const;
    CVec G21_10(const CVec& f) const;
    CVec G21_01(const CVec& f) const;
    CVec G22_10(const CVec& f) const;
    CVec G22_01(const CVec& f) const;

    CVec G11_1(const CVec& f) const;
    CVec G12_1(const CVec& f) const;
    CVec G21_1(const CVec& f) const;
    CVec G22_1(const CVec& f) const;
    // rho G11^(1) + rho1 G^(1)
    CVec B1(const CVec& f) const;

private:
    // m1 (e * (m2 f))
    CVec sandwich(const RVec& m1, const RVec& e, const RVec& m2, const CVec& f) const;

    Grid g_;
    PhysicalParams p_;
    RVec eta_, eta1_;
    Dealias mode_;
    RVec D_, absD_, C_, S_;  // k, |k|, |k| coth(h1|k|), |k| csch(h1|k|)
};

struct H3Breakdown {
    double total = 0.0;
    // Grouped elevation terms in original coordinates, R1..R5 in normal modes.
    std::array<double, 5> terms{};
};

struct KineticCubic {
    double I3 = 0.0, II3 = 0.0, III3 = 0.0;
    double signed_sum() const { return I3 - II3 + III3; }
};

class Hamiltonian {
public:
    Hamiltonian(const Grid& g, const PhysicalParams& p, Dealias mode = Dealias::two_thirds);

    const Grid& grid() const { return g_; }
    const SymbolTable& symbols() const { return sym_; }

    FourField normal_transform(const FourField& f) const;
    FourField inverse_transform(const FourField& f) const;

    double eval_H2(const FourField& f) const;
    H3Breakdown eval_H3(const FourField& f) const;

    // The three kinetic cubic parts in their printed closed forms.
    KineticCubic kinetic_cubic_parts(const FourField& f) const;
    // The same parts assembled from first-order DNO operators.
    KineticCubic kinetic_cubic_operator_route(const FourField& f) const;

    DnoFirstOrder dno_first_order(const RVec& eta, const RVec& eta1) const;

private:
    CVec mul(const RVec& m, const CVec& f) const { return apply_symbol(g_, f, m); }
    CVec mul(const RVec& m, const RVec& f) const { return apply_symbol(g_, CVec(f.begin(), f.end()), m); }
    // Re of the integral of a*b*c.
    double cubic(const CVec& a, const CVec& b, const CVec& c) const;
    double quad(const CVec& a, const CVec& b) const;
    void check(const FourField& f, Coords want) const;

    Grid g_;
    PhysicalParams p_;
    Dealias mode_;
    SymbolTable sym_;
    RVec D_;
};

// Band-limited random field scaled to max |f| = amplitude. Modes |j| <= max_mode,
// default (max_mode < 0) the 2/3-rule cutoff n/3.
RVec random_band_limited(const Grid& g, std::uint64_t seed, double amplitude, bool zero_mean = false,
                         long max_mode = -1);
// Elevations of size 0.05 h1, potentials of matching energy scale.
FourField random_four_field(const Grid& g, const PhysicalParams& p, std::uint64_t seed);

}  // namespace bos
