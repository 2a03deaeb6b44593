#pragma once

#include <complex>
#include <span>
#include <vector>

#include "nlslab/field.hpp"
#include "nlslab/grid.hpp"

namespace nls {

/// Conservative radial Laplacian in flux form,
///   (L u)_j = [rho_{j+1}^{N-1} (u_{j+1} - u_j) - rho_j^{N-1} (u_j - u_{j-1})]
///             / (r_j^{N-1} dr^2),
/// with interface radii rho_j = j dr.  The flux through rho_0 = 0
/// vanishes (geometrically for N >= 2, by even symmetry for N = 1) and
/// the ghost value beyond the last node is zero (homogeneous Dirichlet
/// at the outer boundary).
///
/// The operator is symmetric with respect to the quadrature weights, so
/// the Crank-Nicolson propagator built from it is unitary in the
/// discrete L^2 inner product.  The same stencil serves the stationary
/// residual and the time evolution.
class RadialLaplacian {
public:
    explicit RadialLaplacian(GridPtr grid);

    const GridPtr& grid() const { return grid_; }

    void apply(std::span<const double> u, std::span<double> out) const;
    void apply(std::span<const cplx> u, std::span<cplx> out) const;

    /// One Crank-Nicolson substep: solve (1 - i dt/2 L) u' = (1 + i dt/2 L) u
    /// in place.  `work` provides scratch storage (4 vectors of size M).
    struct Workspace {
        std::vector<cplx> rhs, c, d, lu;
    };
    void crank_nicolson(std::vector<cplx>& u, double dt, Workspace& work) const;

    std::span<const double> sub() const { return sub_; }
    std::span<const double> diag() const { return diag_; }
    std::span<const double> sup() const { return sup_; }

private:
    GridPtr grid_;
    std::vector<double> sub_, diag_, sup_;
};

/// Tridiagonal solve with partial pivoting (one extra superdiagonal of
/// fill-in).  Safe for the indefinite Jacobians of the stationary
/// Newton polish.  Overwrites rhs with the solution.
void solve_tridiagonal_pivoted(std::vector<double> sub, std::vector<double> diag,
                               std::vector<double> sup, std::vector<double>& rhs);

} // namespace nls
