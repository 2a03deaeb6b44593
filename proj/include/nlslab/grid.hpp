#pragma once

#include <memory>
#include <vector>

namespace nls {

/// Surface measure of the unit sphere in R^N: 2 pi^{N/2} / Gamma(N/2).
/// N = 1 gives 2 (two half-lines), N = 2 gives 2 pi, N = 3 gives 4 pi.
double sphere_measure(int dim);

/// Staggered radial grid on (0, r_max].
///
/// Nodes sit at half-integer positions r_j = (j + 1/2) dr, so r^{-b} is
/// never evaluated at r = 0.  Quadrature is the midpoint rule in r with
/// the full N-dimensional measure folded into the weights:
///   w_j = s_{N-1} r_j^{N-1} dr.
/// Cell interfaces sit at integer positions rho_j = j dr; gradients and
/// fluxes live there.
struct RadialGrid {
    int dim;
    double r_max;
    int cells;
    double dr;
    double sphere;                ///< s_{N-1}
    std::vector<double> nodes;    ///< r_j, size cells
    std::vector<double> weights;  ///< w_j, size cells

    RadialGrid(int dim_, double r_max_, int cells_);

    double interface_radius(int j) const { return j * dr; }
    /// Quadrature weight s_{N-1} rho_j^{N-1} dr attached to interface j.
    double interface_weight(int j) const;

    bool same(const RadialGrid& other) const {
        return dim == other.dim && cells == other.cells && r_max == other.r_max;
    }
};

using GridPtr = std::shared_ptr<const RadialGrid>;

GridPtr make_grid(int dim, double r_max, int cells);

} // namespace nls
