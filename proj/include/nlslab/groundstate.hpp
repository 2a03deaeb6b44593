#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

#include "nlslab/field.hpp"
#include "nlslab/params.hpp"

namespace nls {

/// Errors thrown by the stationary solvers.
struct SolverError : std::runtime_error {
    enum class Kind { NoBracket, NoConvergence, InsufficientData, StepFailure };
    Kind kind;
    SolverError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
};

/// Outcome of one outward shooting integration.
enum class ShotClass {
    CrossesZero, ///< u reached 0 while decreasing: amplitude too large
    Diverges,    ///< u grows (or survives to r_max above the tail threshold): too small
    Decays       ///< u reached the tail threshold with a decaying envelope
};

struct ShootOptions {
    double r0_fraction = 1e-4;       ///< series start radius as a fraction of r_max
    double rtol = 1e-12;             ///< relative tolerance of the adaptive integrator
    double atol_rel = 1e-14;         ///< absolute tolerance relative to alpha
    double tail_threshold_rel = 1e-8;///< |u| < this * alpha counts as decayed
    double diverge_factor = 2.0;     ///< u > factor * alpha with u' > 0 counts as divergent
};

/// Classify the outward shot with starting amplitude alpha.
///
/// Integrates u'' + ((N-1)/r) u' = omega^2 u - r^{-b} |u|^{2 sigma} u
/// with the small-r series start
///   u(r0) = alpha + omega^2 alpha r0^2 / (2N)
///           - alpha^{2 sigma + 1} r0^{2-b} / ((2-b)(N-b)),
/// which is the exact leading behavior at the weakly singular origin.
ShotClass shoot(const ModelParams& p, double alpha, double r_max, const ShootOptions& opts = {});

/// A converged positive radial solution of the stationary equation,
/// with the diagnostics used everywhere downstream.
struct GroundState {
    RealField profile;
    double omega = 1.0;
    double alpha = 0.0;      ///< converged shooting amplitude u(0+)
    double mass_sq = 0.0;
    double grad_norm_sq = 0.0;
    double potential = 0.0;  ///< I(u)
    double weinstein = 0.0;  ///< J(u)
    double energy = 0.0;
    double residual = 0.0;   ///< relative discrete stationary residual
    double tail_mass_fraction = 0.0; ///< mass in the outer 10% of the grid
    bool multiple_basins = false;    ///< shot classification was not monotone in alpha
};

/// Relative discrete residual  |L u - omega^2 u + r^{-b}|u|^{2s} u|_2 / |u|_2,
/// with the same conservative stencil the evolution uses.  Zero field gives 0.
double stationary_residual(const RealField& u, const ModelParams& p);

/// Shooting + bisection solver for the ground state.
///
/// Bisects the amplitude between divergent and zero-crossing shots,
/// auto-expanding the bracket when both ends classify alike.  The
/// converged shot is sampled on the grid, continued past the matching
/// radius by the decay envelope (r_m/r)^{(N-1)/2} e^{-omega (r - r_m)},
/// and polished by Newton iteration on the discrete stationary system,
/// so the returned profile solves the discrete equation to roundoff.
GroundState find_ground_state(const ModelParams& p, GridPtr grid,
                              std::pair<double, double> bracket = {0.1, 10.0},
                              double tol = 1e-12, int max_bisect = 60);

/// Wrap an existing profile (loaded from file, sampled from a closed
/// form) in a GroundState with freshly computed diagnostics.  When alpha
/// is NaN the origin value is extrapolated from the first two nodes.
GroundState ground_state_from_profile(RealField profile, const ModelParams& p,
                                      double alpha = std::numeric_limits<double>::quiet_NaN());

/// Solution branch map  u_omega(r) = omega^{(2-b)/(2 sigma)} u_1(omega r),
/// resampled on `target` (defaults to the grid of `base`).  At the
/// mass-invariant power the exponent equals N/2, so mass is preserved
/// along the branch.
GroundState branch(const GroundState& base, const ModelParams& p, double omega,
                   GridPtr target = nullptr);

/// Minimization summary at sigma = (2-b)/N.
struct MinimizationReport {
    double m = 0.0;             ///< infimum of the Weinstein quotient
    double critical_mass = 0.0; ///< |psi|_2 of the omega = 1 ground state
    double best_constant = 0.0; ///< 1/m, sharp constant of the interpolation inequality
    double j_at_psi = 0.0;      ///< |psi|_2^{2 sigma} / (sigma + 1)
};

MinimizationReport minimization_report(const GroundState& psi, const ModelParams& p);
MinimizationReport minimization_report(const ModelParams& p, GridPtr grid);

/// Solver-independent identities of stationary solutions at the
/// mass-invariant power: energy vanishes and |grad u|^2 = omega^2 |u|^2 / sigma.
/// Returns (|E(u)| / |grad u|^2, ||grad u|^2 - omega^2 |u|^2 / sigma| / |grad u|^2).
struct PohozaevDefects {
    double energy_defect = 0.0;
    double ratio_defect = 0.0;
};
PohozaevDefects pohozaev_check(const GroundState& g, const ModelParams& p);

/// Random smooth decaying trial field: a sum of positive Gaussian bumps
/// with random centers, widths and amplitudes.
RealField random_trial_field(GridPtr grid, std::mt19937_64& rng);

/// Sample `trials` random fields and count violations of
///   I(u) <= C |grad u|^2 |u|^{2 sigma} (1 + 1e-9).
/// Expected count is zero.
int verify_interpolation(const MinimizationReport& report, const ModelParams& p,
                         GridPtr grid, int trials, std::uint64_t seed);

} // namespace nls
