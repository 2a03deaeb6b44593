#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlslab/field.hpp"
#include "nlslab/groundstate.hpp"
#include "nlslab/laplacian.hpp"
#include "nlslab/params.hpp"

namespace nls {

/// Time stepping controls.
struct EvolveControls {
    double dt0 = 1e-3;           ///< initial / maximal step
    double dt_min = 1e-10;       ///< abort threshold
    double c_dt = 0.1;           ///< phase-rotation budget per step (radians)
    double t_max = 1.0;
    double blowup_factor = 1e3;  ///< gradient-growth detection factor
    int output_stride = 10;      ///< record observables every this many steps
    double tail_mass_limit = 1e-6; ///< abort when this mass fraction reaches the outer 10%
    std::vector<double> snapshot_times; ///< sorted times at which to store full fields
};

void validate(const EvolveControls& c);

enum class Verdict { GlobalToTmax, BlowupDetected, StepCollapse };

std::string to_string(Verdict v);

struct TrajectorySample {
    double t, mass_sq, energy, grad_norm, sup_norm, dt;
};

/// Time series of observables plus sparse snapshots and the final verdict.
struct Trajectory {
    std::vector<TrajectorySample> samples;
    std::vector<std::pair<double, ComplexField>> snapshots;
    Verdict verdict = Verdict::GlobalToTmax;
    double T_estimate = 0.0;   ///< fitted blow-up time (NaN unless detected)
    double fit_quality = 0.0;  ///< coefficient of determination of the fit
    double max_grad_norm = 0.0;
    std::string stop_reason;   ///< extra detail for early stops
};

/// Raised when the state turns non-finite inside a step.
struct StepFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One Strang-split step: exact nonlinear half phase, Crank-Nicolson
/// linear step, second nonlinear half phase.  Both substeps preserve the
/// discrete mass, the linear one up to the direct-solve roundoff.
ComplexField strang_step(const ComplexField& phi, double dt, const ModelParams& p);

/// In-place variant used by the propagation loop.
void strang_step_inplace(std::vector<cplx>& values, double dt, const ModelParams& p,
                         const RadialLaplacian& lap, const std::vector<double>& r_pow_mb,
                         RadialLaplacian::Workspace& work);

/// Adaptive propagation:  dt = min(dt0, c_dt / max_j r_j^{-b} |phi_j|^{2 sigma}),
/// recording observables every output_stride steps.  Ends at t_max, on
/// blow-up detection, or on step collapse.
Trajectory propagate(const ComplexField& phi0, const ModelParams& p, const EvolveControls& c);

/// A-priori bound E(phi0) / beta for |grad phi(t)|^2 with
/// beta = 1 - C |phi0|_2^{2 sigma} / (sigma + 1); nullopt when beta <= 0
/// (initial mass at or above the critical mass).
std::optional<double> gradient_bound(const ComplexField& phi0, const ModelParams& p,
                                     const MinimizationReport& report);

/// Check the trajectory recorded so far against the detection rules.
std::optional<Verdict> detect_blowup(const Trajectory& in_progress, const EvolveControls& c);

struct BlowupFit {
    double T_estimate;
    double fit_quality;
};

/// Least-squares fit of 1/|grad phi| against t over the last decade of
/// trusted growth; the reciprocal is asymptotically linear, and its zero
/// crossing estimates the blow-up time.  Samples after the conserved
/// energy drifts are excluded (they are numerically under-resolved).
/// Throws SolverError(InsufficientData) with fewer than 10 usable samples.
BlowupFit estimate_blowup_time(const Trajectory& traj);

} // namespace nls
