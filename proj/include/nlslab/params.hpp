#pragma once

#include <cmath>

namespace nls {

/// Model parameters for the radial focusing NLS problem
///   i phi_t + Lap(phi) + r^{-b} |phi|^{2 sigma} phi = 0
/// and its standing-wave equation
///   Lap(u) - omega^2 u + r^{-b} |u|^{2 sigma} u = 0.
///
/// Admissible range: dim >= 1, 0 <= b < min(2, dim).  b = 0 is the
/// classical homogeneous equation and is kept as a validation mode,
/// since closed-form solutions are available there.
struct ModelParams {
    int dim = 1;        ///< spatial dimension N
    double b = 0.0;     ///< inhomogeneity exponent of the r^{-b} factor
    double sigma = 2.0; ///< nonlinearity power
    double omega = 1.0; ///< standing-wave frequency

    /// The mass-invariant power (2 - b) / N.
    double critical_sigma() const { return (2.0 - b) / static_cast<double>(dim); }

    bool is_critical() const {
        const double sc = critical_sigma();
        return std::abs(sigma - sc) <= 1e-12 * sc;
    }
};

/// Throws std::invalid_argument when a constraint is violated.
void validate(const ModelParams& p);

/// Parameters at the mass-invariant power sigma = (2 - b) / N.
ModelParams critical_params(int dim, double b, double omega = 1.0);

/// General parameters with an explicit sigma.
ModelParams make_params(int dim, double b, double sigma, double omega);

} // namespace nls
