#pragma once

#include "nlslab/field.hpp"
#include "nlslab/params.hpp"

namespace nls {

/// Squared L^2 norm: sum_j w_j |f_j|^2.
double mass_sq(const RealField& f);
double mass_sq(const ComplexField& f);

/// Squared L^2 norm of the radial gradient, accumulated over interior
/// cell interfaces with centered differences:
///   sum_{j=1}^{M-1} s rho_j^{N-1} dr |(f_j - f_{j-1}) / dr|^2.
double grad_norm_sq(const RealField& f);
double grad_norm_sq(const ComplexField& f);

/// Weighted potential integral  sum_j w_j r_j^{-b} |f_j|^{2 sigma + 2}.
double potential_integral(const RealField& f, const ModelParams& p);
double potential_integral(const ComplexField& f, const ModelParams& p);

/// Conserved energy  |grad f|_2^2 - I(f) / (sigma + 1).
double energy(const RealField& f, const ModelParams& p);
double energy(const ComplexField& f, const ModelParams& p);

/// Quotient  |grad f|_2^2 |f|_2^{2 sigma} / I(f).
/// Scale- and amplitude-invariant at sigma = (2-b)/N; its infimum over
/// nonzero fields is attained by the ground state.
/// Throws std::domain_error on a zero field or vanishing denominator.
double weinstein_quotient(const RealField& f, const ModelParams& p);

/// Mass-preserving rescaling  f(r) -> lambda^{N/2} f(lambda r),
/// resampled on the same grid by monotone cubic interpolation and zero
/// where lambda r falls beyond the source data.
RealField l2_scale(const RealField& f, double lambda);
ComplexField l2_scale(const ComplexField& f, double lambda);

/// |f - g|_2^2 + |grad(f - g)|_2^2 on a shared grid.
double h1_distance_sq(const RealField& f, const RealField& g);
double h1_distance_sq(const ComplexField& f, const ComplexField& g);

double sup_norm(const ComplexField& f);
double sup_norm(const RealField& f);

/// Fraction of the mass sitting in the outer `outer_fraction` of the grid.
double boundary_mass_fraction(const ComplexField& f, double outer_fraction = 0.1);
double boundary_mass_fraction(const RealField& f, double outer_fraction = 0.1);

} // namespace nls
