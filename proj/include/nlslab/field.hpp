#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "nlslab/grid.hpp"

namespace nls {

using cplx = std::complex<double>;

/// Real-valued radial profile sampled at the grid nodes.
/// Fields are immutable by convention once filled in; all operations on
/// them are pure functions returning new fields.
struct RealField {
    GridPtr grid;
    std::vector<double> values;

    RealField() = default;
    RealField(GridPtr g, std::vector<double> v);
};

/// Complex-valued radial profile (evolving solutions).
struct ComplexField {
    GridPtr grid;
    std::vector<cplx> values;

    ComplexField() = default;
    ComplexField(GridPtr g, std::vector<cplx> v);
};

RealField zero_field(GridPtr g);
ComplexField zero_complex_field(GridPtr g);

RealField sample_field(GridPtr g, const std::function<double(double)>& f);
ComplexField sample_complex_field(GridPtr g, const std::function<cplx(double)>& f);

ComplexField to_complex(const RealField& f);

/// True when every sample is finite.
bool all_finite(const RealField& f);
bool all_finite(const ComplexField& f);

inline void require_same_grid(const RealField& f, const RealField& g) {
    if (!f.grid || !g.grid || !f.grid->same(*g.grid))
        throw std::invalid_argument("fields live on different grids");
}

inline void require_same_grid(const ComplexField& f, const ComplexField& g) {
    if (!f.grid || !g.grid || !f.grid->same(*g.grid))
        throw std::invalid_argument("fields live on different grids");
}

} // namespace nls
