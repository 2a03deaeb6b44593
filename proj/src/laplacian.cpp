#include "nlslab/laplacian.hpp"

#include <cmath>
#include <stdexcept>

namespace nls {

RadialLaplacian::RadialLaplacian(GridPtr grid) : grid_(std::move(grid)) {
    const auto& g = *grid_;
    const int n = g.cells;
    sub_.assign(n, 0.0);
    diag_.assign(n, 0.0);
    sup_.assign(n, 0.0);
    const double inv_dr2 = 1.0 / (g.dr * g.dr);
    for (int j = 0; j < n; ++j) {
        const double rw = std::pow(g.nodes[j], g.dim - 1);
        // rho_0^{N-1} carries no flux: zero for N >= 2, and the even
        // mirror image cancels the difference for N = 1.
        const double lo = (j == 0) ? 0.0 : std::pow(g.interface_radius(j), g.dim - 1);
        const double hi = std::pow(g.interface_radius(j + 1), g.dim - 1);
        sub_[j] = lo / rw * inv_dr2;
        sup_[j] = hi / rw * inv_dr2;
        diag_[j] = -(lo + hi) / rw * inv_dr2;
    }
}

void RadialLaplacian::apply(std::span<const double> u, std::span<double> out) const {
    const int n = grid_->cells;
    for (int j = 0; j < n; ++j) {
        double acc = diag_[j] * u[j];
        if (j > 0) acc += sub_[j] * u[j - 1];
        if (j + 1 < n) acc += sup_[j] * u[j + 1]; // ghost beyond r_max is zero
        out[j] = acc;
    }
}

void RadialLaplacian::apply(std::span<const cplx> u, std::span<cplx> out) const {
    const int n = grid_->cells;
    for (int j = 0; j < n; ++j) {
        cplx acc = diag_[j] * u[j];
        if (j > 0) acc += sub_[j] * u[j - 1];
        if (j + 1 < n) acc += sup_[j] * u[j + 1];
        out[j] = acc;
    }
}

void RadialLaplacian::crank_nicolson(std::vector<cplx>& u, double dt, Workspace& work) const {
    const int n = grid_->cells;
    const cplx iz{0.0, 0.5 * dt};
    work.rhs.resize(n);
    work.c.resize(n);
    work.d.resize(n);
    work.lu.resize(n);

    apply(std::span<const cplx>(u), std::span<cplx>(work.lu));
    for (int j = 0; j < n; ++j) work.rhs[j] = u[j] + iz * work.lu[j];

    // Thomas on (1 - iz L): strictly diagonally dominant, no pivoting needed.
    cplx denom = 1.0 - iz * diag_[0];
    work.c[0] = (-iz * sup_[0]) / denom;
    work.d[0] = work.rhs[0] / denom;
    for (int j = 1; j < n; ++j) {
        const cplx a = -iz * sub_[j];
        denom = (1.0 - iz * diag_[j]) - a * work.c[j - 1];
        work.c[j] = (-iz * sup_[j]) / denom;
        work.d[j] = (work.rhs[j] - a * work.d[j - 1]) / denom;
    }
    u[n - 1] = work.d[n - 1];
    for (int j = n - 2; j >= 0; --j) u[j] = work.d[j] - work.c[j] * u[j + 1];
}

void solve_tridiagonal_pivoted(std::vector<double> sub, std::vector<double> diag,
                               std::vector<double> sup, std::vector<double>& rhs) {
    const int n = static_cast<int>(rhs.size());
    std::vector<double> sup2(n, 0.0); // fill-in from row swaps
    for (int k = 0; k + 1 < n; ++k) {
        if (std::abs(sub[k + 1]) > std::abs(diag[k])) {
            std::swap(diag[k], sub[k + 1]);
            std::swap(sup[k], diag[k + 1]);
            if (k + 2 < n) std::swap(sup2[k], sup[k + 1]);
            std::swap(rhs[k], rhs[k + 1]);
        }
        if (diag[k] == 0.0)
            throw std::runtime_error("singular tridiagonal system");
        const double m = sub[k + 1] / diag[k];
        diag[k + 1] -= m * sup[k];
        if (k + 2 < n) sup[k + 1] -= m * sup2[k];
        rhs[k + 1] -= m * rhs[k];
    }
    if (diag[n - 1] == 0.0)
        throw std::runtime_error("singular tridiagonal system");
    rhs[n - 1] /= diag[n - 1];
    if (n >= 2) rhs[n - 2] = (rhs[n - 2] - sup[n - 2] * rhs[n - 1]) / diag[n - 2];
    for (int k = n - 3; k >= 0; --k)
        rhs[k] = (rhs[k] - sup[k] * rhs[k + 1] - sup2[k] * rhs[k + 2]) / diag[k];
}

} // namespace nls
