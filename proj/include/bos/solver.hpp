#pragma once

#include <functional>
#include <vector>

#include "bos/coeffs.hpp"
#include "bos/spectral.hpp"

namespace bos {

struct SystemState {
    RVec r;
    CVec q;
    double t = 0.0;
};

enum class Scheme { strang, etdrk4 };
enum class Model { reduced, full };

struct StepperConfig {
    double dt = 1e-3;
    Scheme scheme = Scheme::strang;
    Dealias dealias = Dealias::two_thirds;
    double blowup_guard = 1e3;  // abort when max |r| exceeds this
    Model model = Model::reduced;
};

struct Derivative {
    RVec dr;
    CVec dq;
};

// Complete right-hand sides (linear and nonlinear parts) of
//   r_t = -a r_xxx + b H r_xx + c r r_x - d d/dx(r H r_x + H(r r_x)) + beta d/dx |q|^2
//   q_t = -i alpha q_xx + i beta r q
Derivative rhs_reduced(const Grid& g, const SystemState& s, const ReducedCoeffs& c, Dealias mode);

// The slow-time system in the unscaled envelope, including the kt3 and kt4 couplings.
Derivative rhs_full(const Grid& g, const SystemState& s, const ModelCoefficients& m, Dealias mode);

struct ConservedTriple {
    double E1 = 0.0, E2 = 0.0, E3 = 0.0;
};

// E3 carries the momentum term as + Im int conj(q) q_x, the sign under which it is invariant.
ConservedTriple conserved(const Grid& g, const SystemState& s, const ReducedCoeffs& c);

class Stepper {
public:
    // For Model::full, `full` must point to the coefficient set; the linear
    // part then uses full->reduced.
    Stepper(const Grid& g, const StepperConfig& cfg, const ReducedCoeffs& c,
            const ModelCoefficients* full = nullptr);

    // Advance by cfg.dt; throws BlowUp when max |r| exceeds the guard or turns non-finite.
    void step(SystemState& s) const;
    const StepperConfig& config() const { return cfg_; }

private:
    // Nonlinear part in Fourier space.
    void nonlinear_hat(const CVec& rh, const CVec& qh, CVec& nr, CVec& nq) const;
    void step_strang(SystemState& s) const;
    void step_etdrk4(SystemState& s) const;

    Grid g_;
    StepperConfig cfg_;
    ReducedCoeffs c_;
    const ModelCoefficients* full_;
    CVec Lr_, Lq_;
    CVec half_r_, half_q_;  // exp(L dt/2), Strang
    // ETDRK4 scalars per mode (Kassam-Trefethen), r and q blocks
    struct Etd {
        CVec E, E2, Q, f1, f2, f3;
    };
    Etd er_, eq_;
};

struct DiagnosticsRow {
    double t, E1, E2, E3, mean_r, max_r, gauge_residual;
};

struct RunResult {
    SystemState final_state;
    std::vector<DiagnosticsRow> log;
    std::vector<SystemState> snapshots;
    std::size_t steps = 0;
};

struct RunOptions {
    double t_end = 1.0;
    int diagnostics_every = 100;  // steps between diagnostics rows; <= 0 logs only endpoints
    int snapshot_every = 0;       // steps between snapshots; 0 keeps only the final state
    bool gauge_diagnostics = true;
};

// Integrates from `initial`; with dealiasing on, the initial data are first
// projected onto the retained modes. Throws BlowUp with the failing time.
// `on_snapshot`, when set, receives each snapshot as it is taken (including
// the last good state before a blow-up).
RunResult run(const Grid& g, const SystemState& initial, const StepperConfig& cfg, const ReducedCoeffs& c,
              const RunOptions& opt, const ModelCoefficients* full = nullptr,
              const std::function<void(const SystemState&)>& on_snapshot = {});

// ---------------------------------------------------------------- initial data

// Gaussian exp(-x^2/(2 sigma^2)) about x0, mean removed, rescaled to max |r| = amplitude.
RVec gaussian_r(const Grid& g, double amplitude, double sigma, double x0 = 0.0);
// 4 nu / (1 + nu^2 (x - x0)^2), mean removed, rescaled to max |r| = amplitude when amplitude > 0.
RVec bo_soliton_r(const Grid& g, double nu, double x0 = 0.0, double amplitude = 0.0);
// Band-limited random mean-zero field, max |r| = amplitude, modes |j| <= max_mode.
RVec random_r(const Grid& g, std::uint64_t seed, double amplitude, long max_mode);
// A exp(-(x - x0)^2/(2 sigma^2)) exp(i k x), k the grid wavenumber of index `mode`.
CVec gaussian_q(const Grid& g, double amplitude, double sigma, long mode = 0, double x0 = 0.0);
CVec monochromatic_q(const Grid& g, double amplitude, long mode);

}  // namespace bos
