#include "nlslab/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nlslab/interpolate.hpp"

namespace nls {

namespace {

template <class Field>
double mass_sq_impl(const Field& f) {
    const auto& g = *f.grid;
    double acc = 0.0;
    for (int j = 0; j < g.cells; ++j) acc += g.weights[j] * std::norm(cplx(f.values[j]));
    return acc;
}

template <class Field>
double grad_norm_sq_impl(const Field& f) {
    const auto& g = *f.grid;
    double acc = 0.0;
    const double inv_dr2 = 1.0 / (g.dr * g.dr);
    for (int j = 1; j < g.cells; ++j) {
        const auto diff = f.values[j] - f.values[j - 1];
        acc += g.interface_weight(j) * std::norm(cplx(diff)) * inv_dr2;
    }
    return acc;
}

template <class Field>
double potential_impl(const Field& f, const ModelParams& p) {
    const auto& g = *f.grid;
    double acc = 0.0;
    for (int j = 0; j < g.cells; ++j) {
        const double amp2 = std::norm(cplx(f.values[j]));
        if (amp2 == 0.0) continue;
        acc += g.weights[j] * std::pow(g.nodes[j], -p.b) * std::pow(amp2, p.sigma + 1.0);
    }
    return acc;
}

} // namespace

double mass_sq(const RealField& f) { return mass_sq_impl(f); }
double mass_sq(const ComplexField& f) { return mass_sq_impl(f); }

double grad_norm_sq(const RealField& f) { return grad_norm_sq_impl(f); }
double grad_norm_sq(const ComplexField& f) { return grad_norm_sq_impl(f); }

double potential_integral(const RealField& f, const ModelParams& p) { return potential_impl(f, p); }
double potential_integral(const ComplexField& f, const ModelParams& p) { return potential_impl(f, p); }

double energy(const RealField& f, const ModelParams& p) {
    return grad_norm_sq(f) - potential_integral(f, p) / (p.sigma + 1.0);
}

double energy(const ComplexField& f, const ModelParams& p) {
    return grad_norm_sq(f) - potential_integral(f, p) / (p.sigma + 1.0);
}

double weinstein_quotient(const RealField& f, const ModelParams& p) {
    const double m2 = mass_sq(f);
    if (m2 == 0.0)
        throw std::domain_error("Weinstein quotient is undefined on the zero field");
    const double pot = potential_integral(f, p);
    if (pot <= 0.0)
        throw std::domain_error("Weinstein quotient needs a positive potential integral");
    return grad_norm_sq(f) * std::pow(m2, p.sigma) / pot;
}

namespace {

template <class Field, class Scalar>
Field l2_scale_impl(const Field& f, double lambda) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("l2_scale needs lambda > 0");
    const auto& g = *f.grid;
    const int n = g.cells;
    const double amp = std::pow(lambda, g.dim / 2.0);

    std::vector<double> re(n), im;
    const bool is_complex = std::is_same_v<Scalar, cplx>;
    for (int j = 0; j < n; ++j) re[j] = std::real(cplx(f.values[j]));
    MonotoneCubic ire = radial_interpolant(g, re);
    std::unique_ptr<MonotoneCubic> iim;
    if (is_complex) {
        im.resize(n);
        for (int j = 0; j < n; ++j) im[j] = std::imag(cplx(f.values[j]));
        iim = std::make_unique<MonotoneCubic>(radial_interpolant(g, im));
    }

    Field out = f;
    for (int j = 0; j < n; ++j) {
        const double q = lambda * g.nodes[j];
        if constexpr (std::is_same_v<Scalar, cplx>)
            out.values[j] = amp * cplx(ire(q), (*iim)(q));
        else
            out.values[j] = amp * ire(q);
    }
    return out;
}

} // namespace

RealField l2_scale(const RealField& f, double lambda) { return l2_scale_impl<RealField, double>(f, lambda); }
ComplexField l2_scale(const ComplexField& f, double lambda) { return l2_scale_impl<ComplexField, cplx>(f, lambda); }

namespace {

template <class Field>
double h1_dist_impl(const Field& f, const Field& g) {
    require_same_grid(f, g);
    Field diff = f;
    for (std::size_t j = 0; j < diff.values.size(); ++j) diff.values[j] -= g.values[j];
    return mass_sq(diff) + grad_norm_sq(diff);
}

} // namespace

double h1_distance_sq(const RealField& f, const RealField& g) { return h1_dist_impl(f, g); }
double h1_distance_sq(const ComplexField& f, const ComplexField& g) { return h1_dist_impl(f, g); }

double sup_norm(const ComplexField& f) {
    double m = 0.0;
    for (const cplx& z : f.values) m = std::max(m, std::abs(z));
    return m;
}

double sup_norm(const RealField& f) {
    double m = 0.0;
    for (double x : f.values) m = std::max(m, std::abs(x));
    return m;
}

namespace {

template <class Field>
double boundary_fraction_impl(const Field& f, double outer_fraction) {
    const auto& g = *f.grid;
    const double r_cut = (1.0 - outer_fraction) * g.r_max;
    double tail = 0.0, total = 0.0;
    for (int j = 0; j < g.cells; ++j) {
        const double contrib = g.weights[j] * std::norm(cplx(f.values[j]));
        total += contrib;
        if (g.nodes[j] >= r_cut) tail += contrib;
    }
    return total > 0.0 ? tail / total : 0.0;
}

} // namespace

double boundary_mass_fraction(const ComplexField& f, double outer_fraction) {
    return boundary_fraction_impl(f, outer_fraction);
}
double boundary_mass_fraction(const RealField& f, double outer_fraction) {
    return boundary_fraction_impl(f, outer_fraction);
}

} // namespace nls
