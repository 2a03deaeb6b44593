#include "nlslab/field.hpp"

#include <cmath>

namespace nls {

RealField::RealField(GridPtr g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
    if (!grid)
        throw std::invalid_argument("field needs a grid");
    if (static_cast<int>(values.size()) != grid->cells)
        throw std::invalid_argument("field and grid lengths disagree");
}

ComplexField::ComplexField(GridPtr g, std::vector<cplx> v) : grid(std::move(g)), values(std::move(v)) {
    if (!grid)
        throw std::invalid_argument("field needs a grid");
    if (static_cast<int>(values.size()) != grid->cells)
        throw std::invalid_argument("field and grid lengths disagree");
}

RealField zero_field(GridPtr g) {
    std::vector<double> v(g->cells, 0.0);
    return {std::move(g), std::move(v)};
}

ComplexField zero_complex_field(GridPtr g) {
    std::vector<cplx> v(g->cells, cplx{0.0, 0.0});
    return {std::move(g), std::move(v)};
}

RealField sample_field(GridPtr g, const std::function<double(double)>& f) {
    std::vector<double> v(g->cells);
    for (int j = 0; j < g->cells; ++j) v[j] = f(g->nodes[j]);
    return {std::move(g), std::move(v)};
}

ComplexField sample_complex_field(GridPtr g, const std::function<cplx(double)>& f) {
    std::vector<cplx> v(g->cells);
    for (int j = 0; j < g->cells; ++j) v[j] = f(g->nodes[j]);
    return {std::move(g), std::move(v)};
}

ComplexField to_complex(const RealField& f) {
    std::vector<cplx> v(f.values.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = cplx{f.values[j], 0.0};
    return {f.grid, std::move(v)};
}

bool all_finite(const RealField& f) {
    for (double x : f.values)
        if (!std::isfinite(x)) return false;
    return true;
}

bool all_finite(const ComplexField& f) {
    for (const cplx& z : f.values)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

} // namespace nls
