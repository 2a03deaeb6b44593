#include "nlslab/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nls {

double sphere_measure(int dim) {
    if (dim < 1)
        throw std::invalid_argument("sphere_measure requires N >= 1");
    return 2.0 * std::pow(M_PI, dim / 2.0) / std::tgamma(dim / 2.0);
}

RadialGrid::RadialGrid(int dim_, double r_max_, int cells_)
    : dim(dim_), r_max(r_max_), cells(cells_) {
    if (dim < 1)
        throw std::invalid_argument("grid dimension must be >= 1");
    if (!(r_max > 0.0))
        throw std::invalid_argument("truncation radius must be positive");
    if (cells < 2)
        throw std::invalid_argument("grid needs at least 2 cells, got " + std::to_string(cells));
    dr = r_max / cells;
    sphere = sphere_measure(dim);
    nodes.resize(cells);
    weights.resize(cells);
    for (int j = 0; j < cells; ++j) {
        nodes[j] = (j + 0.5) * dr;
        weights[j] = sphere * std::pow(nodes[j], dim - 1) * dr;
    }
}

double RadialGrid::interface_weight(int j) const {
    const double rho = interface_radius(j);
    return sphere * std::pow(rho, dim - 1) * dr;
}

GridPtr make_grid(int dim, double r_max, int cells) {
    return std::make_shared<const RadialGrid>(dim, r_max, cells);
}

} // namespace nls
