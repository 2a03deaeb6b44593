#include "nlslab/pseudoconformal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nlslab/functionals.hpp"
#include "nlslab/groundstate.hpp"
#include "nlslab/interpolate.hpp"

namespace nls {

double lifespan(double a, double S) {
    const double inf = std::numeric_limits<double>::infinity();
    if (std::isinf(S)) {
        if (a > 0.0) return 1.0 / a;
        return inf;
    }
    if (a * S <= -1.0) return inf;
    return S / (1.0 + a * S);
}

ComplexField pseudoconformal_transform(const TimeSampler& phi, double a, double S, double t,
                                       GridPtr grid) {
    const double T = lifespan(a, S);
    if (!(t >= 0.0) || !(t < T))
        throw std::domain_error("transform time must lie in [0, lifespan)");
    const double mu = 1.0 - a * t;
    const double s = t / mu;

    const ComplexField source = phi(s);
    const auto& sg = *source.grid;
    const int n = sg.cells;
    std::vector<double> re(n), im(n);
    for (int j = 0; j < n; ++j) {
        re[j] = source.values[j].real();
        im[j] = source.values[j].imag();
    }
    MonotoneCubic ire = radial_interpolant(sg, re);
    MonotoneCubic iim = radial_interpolant(sg, im);

    const double pref = std::pow(mu, -0.5 * grid->dim);
    std::vector<cplx> out(grid->cells);
    for (int j = 0; j < grid->cells; ++j) {
        const double r = grid->nodes[j];
        const double phase = -a * r * r / (4.0 * mu);
        const double q = r / mu;
        out[j] = pref * std::polar(1.0, phase) * cplx{ire(q), iim(q)};
    }
    return {std::move(grid), std::move(out)};
}

ComplexField self_similar(const RealField& u, const ModelParams& p, double a, double t,
                          GridPtr grid) {
    if (!(a > 0.0))
        throw std::domain_error("self-similar solutions need a > 0");
    if (!(t >= 0.0) || !(t < 1.0 / a))
        throw std::domain_error("self-similar time must lie in [0, 1/a)");
    ModelParams q1 = p;
    q1.omega = 1.0;
    if (stationary_residual(u, q1) > 1e-4)
        throw std::invalid_argument("profile does not satisfy the stationary equation at omega = 1");

    const double mu = 1.0 - a * t;
    MonotoneCubic iu = radial_interpolant(*u.grid, u.values);
    const double pref = std::pow(mu, -0.5 * grid->dim);
    std::vector<cplx> out(grid->cells);
    for (int j = 0; j < grid->cells; ++j) {
        const double r = grid->nodes[j];
        const double phase = -a * r * r / (4.0 * mu) + t / mu;
        out[j] = pref * std::polar(1.0, phase) * iu(r / mu);
    }
    return {std::move(grid), std::move(out)};
}

DistanceBreakdown initial_distance(const RealField& u, double a) {
    const auto& g = *u.grid;
    DistanceBreakdown d;
    for (int j = 0; j < g.cells; ++j) {
        const double r = g.nodes[j];
        const double s = std::sin(a * r * r / 8.0);
        const double chirp2 = 4.0 * s * s; // |e^{-i a r^2 / 4} - 1|^2
        d.l2_part += g.weights[j] * chirp2 * u.values[j] * u.values[j];
        d.grad_part += g.weights[j] * (a * a / 4.0) * r * r * u.values[j] * u.values[j];
    }
    const double inv_dr = 1.0 / g.dr;
    for (int j = 1; j < g.cells; ++j) {
        const double rho = g.interface_radius(j);
        const double s = std::sin(a * rho * rho / 8.0);
        const double du = (u.values[j] - u.values[j - 1]) * inv_dr;
        d.grad_part += g.interface_weight(j) * 4.0 * s * s * du * du;
    }
    d.h1_total = d.l2_part + d.grad_part;
    return d;
}

namespace {

struct LineFit {
    double slope, intercept, r2;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i]; sy += y[i]; sxx += x[i] * x[i]; sxy += x[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    LineFit f;
    f.slope = (n * sxy - sx * sy) / det;
    f.intercept = (sy - f.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / n;
    for (std::size_t i = 0; i < n; ++i) {
        const double fit = f.intercept + f.slope * x[i];
        ss_res += (y[i] - fit) * (y[i] - fit);
        ss_tot += (y[i] - ybar) * (y[i] - ybar);
    }
    f.r2 = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 0.0;
    return f;
}

} // namespace

RateReport rate_check(const Trajectory& traj, double a) {
    if (!(a > 0.0))
        throw std::invalid_argument("rate_check needs a > 0");
    const double t_lo = 0.5 / a, t_hi = 0.8 / a;

    // The H^1 norm diverges through its gradient part; the constant mass
    // term only pollutes the pre-asymptotic fit, so the exponent is read
    // off the gradient norm (the same reduction the blow-up timer uses).
    std::vector<double> x, yh, yq;
    double h1_first = 0.0, h1_last = 0.0;
    for (const auto& s : traj.samples) {
        if (s.t < t_lo || s.t > t_hi) continue;
        if (!(s.grad_norm > 0.0) || !(s.sup_norm > 0.0)) continue;
        if (x.empty()) h1_first = s.grad_norm;
        h1_last = s.grad_norm;
        x.push_back(std::log(1.0 - a * s.t));
        yh.push_back(std::log(s.grad_norm));
        yq.push_back(std::log(s.sup_norm));
    }
    if (x.size() < 10)
        throw SolverError(SolverError::Kind::InsufficientData,
                          "need >= 10 samples in the fit window");

    const LineFit fh = least_squares(x, yh);
    const LineFit fq = least_squares(x, yq);
    RateReport rep;
    rep.a = a;
    rep.p_fit = -fh.slope;
    rep.q_fit = -fq.slope;
    rep.p_quality = fh.r2;
    rep.q_quality = fq.r2;
    rep.not_blowup = (h1_last < 2.0 * h1_first) || fh.r2 < 0.9 || rep.p_fit <= 0.0;
    return rep;
}

} // namespace nls
