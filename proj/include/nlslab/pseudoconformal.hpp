#pragma once

#include <functional>

#include "nlslab/evolution.hpp"
#include "nlslab/field.hpp"
#include "nlslab/params.hpp"

namespace nls {

/// Lifespan of the transformed solution: infinite when a S <= -1, else
/// S / (1 + a S).  A standing wave has S = infinity, giving T = 1/a for
/// a > 0.
double lifespan(double a, double S);

/// A time-indexed solution: returns the field at the requested time.
using TimeSampler = std::function<ComplexField(double)>;

/// The lens transform of a solution,
///   phi_a(t, r) = (1 - a t)^{-N/2} e^{-i a r^2 / (4 (1 - a t))}
///                 phi(t / (1 - a t), r / (1 - a t)),
/// sampled on `grid`.  Conserves the L^2 norm.  The chirp factor is
/// evaluated analytically at the nodes.  Throws std::domain_error when
/// t is outside [0, lifespan(a, S)).
ComplexField pseudoconformal_transform(const TimeSampler& phi, double a, double S, double t,
                                       GridPtr grid);

/// Explicit finite-time blow-up solution built from a stationary profile u:
///   phi(t, r) = (1-at)^{-N/2} e^{-i a r^2/(4(1-at))} e^{i t/(1-at)} u(r/(1-at)).
/// Valid for 0 <= t < 1/a, a > 0.  The profile must satisfy the
/// stationary equation at omega = 1 (relative residual <= 1e-4).
ComplexField self_similar(const RealField& u, const ModelParams& p, double a, double t,
                          GridPtr grid);

/// Size of the chirped perturbation at t = 0 in L^2 and H^1:
///   l2_part   = sum w_j 4 sin^2(a r_j^2 / 8) u_j^2
///   grad_part = sum 4 sin^2(a rho^2 / 8) |grad u|^2 + (a^2/4) sum w_j r_j^2 u_j^2
/// Shrinks to zero quadratically as a -> 0: standing waves have
/// arbitrarily close finite-time blow-up neighbours.
struct DistanceBreakdown {
    double l2_part = 0.0;
    double grad_part = 0.0;
    double h1_total = 0.0;
};
DistanceBreakdown initial_distance(const RealField& u, double a);

/// Fit of the blow-up rate exponents over t in [0.5/a, 0.8/a]:
///   |phi(t)|_{H^1} ~ (1 - a t)^{-p}     and   |phi(t)|_inf ~ (1 - a t)^{-q}.
struct RateReport {
    double a = 0.0;
    double p_fit = 0.0;
    double q_fit = 0.0;
    double p_quality = 0.0;
    double q_quality = 0.0;
    bool not_blowup = false; ///< set when the window shows no real growth
};
RateReport rate_check(const Trajectory& traj, double a);

} // namespace nls
