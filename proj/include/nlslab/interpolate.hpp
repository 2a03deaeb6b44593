#pragma once

#include <span>
#include <vector>

#include "nlslab/grid.hpp"

namespace nls {

/// Monotone cubic Hermite interpolant (Fritsch-Carlson slopes).
///
/// Shape-preserving: never overshoots monotone data, so rescaled
/// ground-state profiles stay positive.  Queries beyond the last knot
/// return 0 (fields are treated as zero outside their grid), queries
/// below the first knot evaluate the first cubic segment.
class MonotoneCubic {
public:
    MonotoneCubic(std::vector<double> x, std::vector<double> y);

    double operator()(double q) const;

private:
    std::vector<double> x_, y_, m_; // knots, values, node slopes
};

/// Interpolant for radial node data extended to the origin.
///
/// Radial profiles are even in r, so the extension to r = 0 fits a
/// parabola with zero slope through the first two nodes.  Beyond the
/// last node the interpolant is zero.
MonotoneCubic radial_interpolant(const RadialGrid& grid, std::span<const double> values);

} // namespace nls
