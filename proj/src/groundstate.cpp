#include "nlslab/groundstate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "nlslab/functionals.hpp"
#include "nlslab/interpolate.hpp"
#include "nlslab/laplacian.hpp"

namespace nls {

namespace {

struct State {
    double u, v; // value and radial derivative
};

struct ShotRhs {
    double omega2, b, two_sigma, dim_m1;
    State operator()(double r, const State& y) const {
        const double amp = std::pow(y.u * y.u, 0.5 * two_sigma); // |u|^{2 sigma}
        double f = omega2 * y.u - std::pow(r, -b) * amp * y.u;
        if (dim_m1 > 0.0) f -= dim_m1 / r * y.v;
        return {y.v, f};
    }
};

// Series start at r0: exact leading behavior of the weakly singular origin.
State series_start(const ModelParams& p, double alpha, double r0) {
    const double w2 = p.omega * p.omega;
    const double apow = std::pow(alpha, 2.0 * p.sigma + 1.0);
    const double N = p.dim;
    const double u = alpha + w2 * alpha * r0 * r0 / (2.0 * N) -
                     apow * std::pow(r0, 2.0 - p.b) / ((2.0 - p.b) * (N - p.b));
    const double v = w2 * alpha * r0 / N - apow * std::pow(r0, 1.0 - p.b) / (N - p.b);
    return {u, v};
}

// Dormand-Prince 5(4) tableau.
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
constexpr double E1 = B1 - 5179.0 / 57600, E3 = B3 - 7571.0 / 16695, E4 = B4 - 393.0 / 640,
                 E5 = B5 + 92097.0 / 339200, E6 = B6 - 187.0 / 2100, E7 = -1.0 / 40;

// One adaptive RK step; h is updated in place, returns false until a step
// is accepted.
bool dopri_step(const ShotRhs& f, double& r, State& y, double& h, double sc_u, double sc_v) {
    const State k1 = f(r, y);
    const State k2 = f(r + h / 5, {y.u + h * A21 * k1.u, y.v + h * A21 * k1.v});
    const State k3 = f(r + 3 * h / 10, {y.u + h * (A31 * k1.u + A32 * k2.u),
                                        y.v + h * (A31 * k1.v + A32 * k2.v)});
    const State k4 = f(r + 4 * h / 5, {y.u + h * (A41 * k1.u + A42 * k2.u + A43 * k3.u),
                                       y.v + h * (A41 * k1.v + A42 * k2.v + A43 * k3.v)});
    const State k5 =
        f(r + 8 * h / 9, {y.u + h * (A51 * k1.u + A52 * k2.u + A53 * k3.u + A54 * k4.u),
                          y.v + h * (A51 * k1.v + A52 * k2.v + A53 * k3.v + A54 * k4.v)});
    const State k6 =
        f(r + h, {y.u + h * (A61 * k1.u + A62 * k2.u + A63 * k3.u + A64 * k4.u + A65 * k5.u),
                  y.v + h * (A61 * k1.v + A62 * k2.v + A63 * k3.v + A64 * k4.v + A65 * k5.v)});

    const State y5 = {y.u + h * (B1 * k1.u + B3 * k3.u + B4 * k4.u + B5 * k5.u + B6 * k6.u),
                      y.v + h * (B1 * k1.v + B3 * k3.v + B4 * k4.v + B5 * k5.v + B6 * k6.v)};
    const State k7 = f(r + h, y5);

    const double eu = h * (E1 * k1.u + E3 * k3.u + E4 * k4.u + E5 * k5.u + E6 * k6.u + E7 * k7.u);
    const double ev = h * (E1 * k1.v + E3 * k3.v + E4 * k4.v + E5 * k5.v + E6 * k6.v + E7 * k7.v);
    const double err = std::sqrt(0.5 * ((eu / sc_u) * (eu / sc_u) + (ev / sc_v) * (ev / sc_v)));

    const double grow = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
    if (err <= 1.0 || !(std::isfinite(err))) {
        r += h;
        y = y5;
        if (!std::isfinite(err)) return true; // let the caller see the NaN state
        h *= std::clamp(grow, 0.2, 5.0);
        return true;
    }
    h *= std::clamp(grow, 0.2, 1.0);
    return false;
}

struct ShotTrace {
    ShotClass cls = ShotClass::Diverges;
    int last_node = -1; // last grid node filled when sampling
};

// Integrate from the series start to r_max.  When `samples` is non-null
// the integrator lands exactly on every grid node and records u there.
ShotTrace integrate_shot(const ModelParams& p, double alpha, double r_max,
                         const ShootOptions& opts, const RadialGrid* grid,
                         std::vector<double>* samples) {
    const ShotRhs f{p.omega * p.omega, p.b, 2.0 * p.sigma, static_cast<double>(p.dim - 1)};
    const double r0 = opts.r0_fraction * r_max;
    const double theta = opts.tail_threshold_rel * alpha;
    const double sc_u = opts.atol_rel * alpha + opts.rtol * alpha;
    ShotTrace out;

    double r = r0;
    State y = series_start(p, alpha, r0);

    int next = 0;
    if (samples) {
        // Nodes inside the series region are filled directly.
        while (next < grid->cells && grid->nodes[next] <= r0) {
            (*samples)[next] = series_start(p, alpha, grid->nodes[next]).u;
            out.last_node = next;
            ++next;
        }
    }

    double h = r0;
    const double h_max = 0.25 / p.omega;
    long iter_guard = 0;
    while (r < r_max) {
        h = std::min({h, h_max, r_max - r});
        if (samples && next < grid->cells) h = std::min(h, grid->nodes[next] - r);
        if (h < 1e-15 * r_max) h = 1e-15 * r_max;

        const double sc_v = opts.atol_rel * alpha + opts.rtol * std::max(std::abs(y.v), alpha);
        if (!dopri_step(f, r, y, h, sc_u, sc_v)) {
            if (++iter_guard > 2000000) { out.cls = ShotClass::Diverges; return out; }
            continue;
        }
        if (++iter_guard > 2000000) { out.cls = ShotClass::Diverges; return out; }

        if (samples && next < grid->cells && r >= grid->nodes[next] - 1e-12 * r_max) {
            (*samples)[next] = y.u;
            out.last_node = next;
            ++next;
        }

        if (!std::isfinite(y.u) || !std::isfinite(y.v)) {
            out.cls = ShotClass::Diverges;
            return out;
        }
        if (y.u <= 0.0) {
            out.cls = ShotClass::CrossesZero;
            return out;
        }
        if (y.u > opts.diverge_factor * alpha && y.v > 0.0) {
            out.cls = ShotClass::Diverges;
            return out;
        }
        if (std::abs(y.u) <= theta && std::abs(y.v) <= 3.0 * p.omega * theta) {
            out.cls = ShotClass::Decays;
            return out;
        }
    }
    out.cls = (std::abs(y.u) < theta) ? ShotClass::Decays : ShotClass::Diverges;
    return out;
}

// Continue a sampled shot past the matching radius with the decay
// envelope (r_m/r)^{(N-1)/2} e^{-omega (r - r_m)}.  The matching radius
// is the last node where the profile is still above the tail threshold
// and still decreasing; past it the bisection residue of the unstable
// mode would contaminate the tail.
void glue_tail(const ModelParams& p, const RadialGrid& grid, double alpha, int last_node,
               std::vector<double>& u) {
    const double theta = 1e-8 * alpha;
    int m = 0;
    const int hi = std::max(last_node, 0);
    for (int j = 1; j <= hi; ++j) {
        if (u[j] <= theta) break;
        if (u[j] > u[j - 1] && u[j] < 1e-2 * alpha) break;
        if (u[j] <= 0.0) break;
        m = j;
    }
    const double rm = grid.nodes[m], um = u[m];
    const double half_nm1 = 0.5 * (p.dim - 1);
    for (int j = m + 1; j < grid.cells; ++j) {
        const double r = grid.nodes[j];
        u[j] = um * std::pow(rm / r, half_nm1) * std::exp(-p.omega * (r - rm));
    }
}

double weighted_norm(const RadialGrid& g, const std::vector<double>& v) {
    double acc = 0.0;
    for (int j = 0; j < g.cells; ++j) acc += g.weights[j] * v[j] * v[j];
    return std::sqrt(acc);
}

void stationary_rhs(const RadialLaplacian& lap, const ModelParams& p,
                    const std::vector<double>& u, std::vector<double>& F) {
    const auto& g = *lap.grid();
    lap.apply(std::span<const double>(u), std::span<double>(F));
    const double w2 = p.omega * p.omega;
    for (int j = 0; j < g.cells; ++j)
        F[j] += -w2 * u[j] + std::pow(g.nodes[j], -p.b) * std::pow(u[j] * u[j], p.sigma) * u[j];
}

// Newton polish of the discrete stationary system.  Returns the final
// relative residual.
double newton_polish(const RadialLaplacian& lap, const ModelParams& p, std::vector<double>& u) {
    const auto& g = *lap.grid();
    const int n = g.cells;
    std::vector<double> F(n), trial(n);
    const double w2 = p.omega * p.omega;

    stationary_rhs(lap, p, u, F);
    double res = weighted_norm(g, F) / std::max(weighted_norm(g, u), 1e-300);
    for (int it = 0; it < 30 && res > 1e-12; ++it) {
        std::vector<double> sub(lap.sub().begin(), lap.sub().end());
        std::vector<double> dia(lap.diag().begin(), lap.diag().end());
        std::vector<double> sup(lap.sup().begin(), lap.sup().end());
        for (int j = 0; j < n; ++j)
            dia[j] += -w2 + (2.0 * p.sigma + 1.0) * std::pow(g.nodes[j], -p.b) *
                                std::pow(u[j] * u[j], p.sigma);
        std::vector<double> delta = F;
        for (auto& x : delta) x = -x;
        solve_tridiagonal_pivoted(std::move(sub), std::move(dia), std::move(sup), delta);

        double step = 1.0;
        double res_new = res;
        for (int back = 0; back < 10; ++back) {
            for (int j = 0; j < n; ++j) trial[j] = u[j] + step * delta[j];
            stationary_rhs(lap, p, trial, F);
            res_new = weighted_norm(g, F) / std::max(weighted_norm(g, trial), 1e-300);
            if (res_new < res || res_new < 1e-12) break;
            step *= 0.5;
        }
        if (res_new >= res) break; // stalled at the roundoff floor
        u = trial;
        res = res_new;
    }
    stationary_rhs(lap, p, u, F);
    return weighted_norm(g, F) / std::max(weighted_norm(g, u), 1e-300);
}

GroundState assemble(RealField profile, const ModelParams& p, double alpha, double omega) {
    GroundState gs;
    gs.mass_sq = mass_sq(profile);
    gs.grad_norm_sq = grad_norm_sq(profile);
    ModelParams q = p;
    q.omega = omega;
    gs.potential = potential_integral(profile, q);
    gs.energy = gs.grad_norm_sq - gs.potential / (p.sigma + 1.0);
    gs.weinstein = (gs.potential > 0.0)
                       ? gs.grad_norm_sq * std::pow(gs.mass_sq, p.sigma) / gs.potential
                       : std::numeric_limits<double>::quiet_NaN();
    gs.residual = stationary_residual(profile, q);
    gs.tail_mass_fraction = boundary_mass_fraction(profile);
    gs.alpha = alpha;
    gs.omega = omega;
    gs.profile = std::move(profile);
    return gs;
}

} // namespace

ShotClass shoot(const ModelParams& p, double alpha, double r_max, const ShootOptions& opts) {
    validate(p);
    if (!(alpha > 0.0))
        throw std::invalid_argument("shooting amplitude must be positive");
    return integrate_shot(p, alpha, r_max, opts, nullptr, nullptr).cls;
}

double stationary_residual(const RealField& u, const ModelParams& p) {
    const double m = std::sqrt(mass_sq(u));
    if (m == 0.0) return 0.0;
    RadialLaplacian lap(u.grid);
    std::vector<double> F(u.grid->cells);
    stationary_rhs(lap, p, u.values, F);
    return weighted_norm(*u.grid, F) / m;
}

GroundState find_ground_state(const ModelParams& p, GridPtr grid,
                              std::pair<double, double> bracket, double tol, int max_bisect) {
    validate(p);
    if (grid->dim != p.dim)
        throw std::invalid_argument("grid dimension does not match the model");
    ShootOptions opts;
    const double r_max = grid->r_max;

    double lo = bracket.first, hi = bracket.second;
    if (!(lo > 0.0 && hi > lo))
        throw std::invalid_argument("bracket must satisfy 0 < lo < hi");

    auto classify = [&](double a) { return integrate_shot(p, a, r_max, opts, nullptr, nullptr).cls; };

    // Expand until the ends classify differently.  Small amplitudes ride
    // the linear e^{omega r} growth (Diverges), large ones cross zero.
    ShotClass cl_lo = classify(lo), cl_hi = classify(hi);
    int expand = 0;
    while (cl_lo == ShotClass::CrossesZero && expand++ < 60) { lo *= 0.5; cl_lo = classify(lo); }
    while (cl_hi == ShotClass::Diverges && expand++ < 60) { hi *= 2.0; cl_hi = classify(hi); }
    if (cl_lo == ShotClass::Decays) return find_ground_state(p, grid, {lo * 0.999, lo * 1.001}, tol, max_bisect);
    if (cl_hi == ShotClass::Decays) return find_ground_state(p, grid, {hi * 0.999, hi * 1.001}, tol, max_bisect);
    if (cl_lo != ShotClass::Diverges || cl_hi != ShotClass::CrossesZero)
        throw SolverError(SolverError::Kind::NoBracket,
                          "could not bracket the ground state amplitude");

    // Uniqueness surrogate: classification should switch exactly once.
    bool multiple_basins = false;
    {
        bool seen_cross = false;
        for (int i = 0; i < 8; ++i) {
            const double a = lo * std::pow(hi / lo, (i + 1) / 9.0);
            const ShotClass c = classify(a);
            if (c == ShotClass::CrossesZero) seen_cross = true;
            else if (c == ShotClass::Diverges && seen_cross) { multiple_basins = true; break; }
        }
    }

    double alpha = 0.5 * (lo + hi);
    bool direct_hit = false;
    int it = 0;
    for (; it < max_bisect; ++it) {
        alpha = 0.5 * (lo + hi);
        if (hi - lo <= tol * alpha) break;
        const ShotClass c = classify(alpha);
        if (c == ShotClass::Decays) { direct_hit = true; break; }
        if (c == ShotClass::CrossesZero) hi = alpha; else lo = alpha;
    }
    if (hi - lo > tol * alpha && !direct_hit)
        throw SolverError(SolverError::Kind::NoConvergence,
                          "bisection did not reach the requested amplitude tolerance");
    // The divergent side stays positive all the way out, which is what
    // the tail continuation needs.
    if (!direct_hit) alpha = lo;

    std::vector<double> samples(grid->cells, 0.0);
    ShotTrace trace = integrate_shot(p, alpha, r_max, opts, grid.get(), &samples);
    if (trace.last_node < 2)
        throw SolverError(SolverError::Kind::NoConvergence, "shot left no usable profile");
    glue_tail(p, *grid, alpha, trace.last_node, samples);

    RadialLaplacian lap(grid);
    const double res = newton_polish(lap, p, samples);
    if (!(res <= 1e-6))
        throw SolverError(SolverError::Kind::NoConvergence,
                          "stationary residual did not converge below 1e-6");

    double prev = samples[0];
    for (int j = 0; j < grid->cells; ++j) {
        if (samples[j] <= 0.0)
            throw SolverError(SolverError::Kind::NoConvergence, "profile lost positivity");
        if (samples[j] > prev + 1e-10 * alpha)
            throw SolverError(SolverError::Kind::NoConvergence, "profile is not radially non-increasing");
        prev = samples[j];
    }

    GroundState gs = assemble(RealField{grid, std::move(samples)}, p, alpha, p.omega);
    gs.multiple_basins = multiple_basins;
    return gs;
}

GroundState branch(const GroundState& base, const ModelParams& p, double omega, GridPtr target) {
    if (!(omega > 0.0))
        throw std::invalid_argument("branch needs omega > 0");
    GridPtr grid = target ? target : base.profile.grid;
    const double expo = (2.0 - p.b) / (2.0 * p.sigma);
    const double amp = std::pow(omega / base.omega, expo);
    const double ratio = omega / base.omega;

    MonotoneCubic interp = radial_interpolant(*base.profile.grid, base.profile.values);
    std::vector<double> v(grid->cells);
    for (int j = 0; j < grid->cells; ++j) v[j] = amp * interp(ratio * grid->nodes[j]);

    GroundState out = assemble(RealField{grid, std::move(v)}, p, amp * base.alpha, omega);
    out.multiple_basins = base.multiple_basins;
    return out;
}

MinimizationReport minimization_report(const GroundState& psi, const ModelParams& p) {
    if (!p.is_critical())
        throw std::invalid_argument("the minimization summary needs sigma = (2-b)/N");
    MinimizationReport rep;
    rep.critical_mass = std::sqrt(psi.mass_sq);
    rep.j_at_psi = std::pow(psi.mass_sq, p.sigma) / (p.sigma + 1.0);
    rep.m = rep.j_at_psi;
    rep.best_constant = 1.0 / rep.m;
    return rep;
}

MinimizationReport minimization_report(const ModelParams& p, GridPtr grid) {
    ModelParams q = p;
    q.omega = 1.0;
    const GroundState psi = find_ground_state(q, std::move(grid));
    return minimization_report(psi, q);
}

PohozaevDefects pohozaev_check(const GroundState& g, const ModelParams& p) {
    if (!p.is_critical())
        throw std::invalid_argument("the stationary identities hold at sigma = (2-b)/N");
    PohozaevDefects d;
    const double gn = g.grad_norm_sq;
    d.energy_defect = std::abs(g.energy) / gn;
    d.ratio_defect = std::abs(gn - g.omega * g.omega * g.mass_sq / p.sigma) / gn;
    return d;
}

GroundState ground_state_from_profile(RealField profile, const ModelParams& p, double alpha) {
    if (std::isnan(alpha)) {
        // Even-parabola origin value from the first two nodes.
        const auto& g = *profile.grid;
        const double r0 = g.nodes[0], r1 = g.nodes[1];
        const double c = (profile.values[1] - profile.values[0]) / (r1 * r1 - r0 * r0);
        alpha = profile.values[0] - c * r0 * r0;
    }
    return assemble(std::move(profile), p, alpha, p.omega);
}

RealField random_trial_field(GridPtr grid, std::mt19937_64& rng) {
    auto uniform = [&rng](double a, double b) {
        return a + (b - a) * ((rng() >> 11) * 0x1.0p-53);
    };
    const int bumps = 1 + static_cast<int>(rng() % 3);
    std::vector<double> v(grid->cells, 0.0);
    for (int k = 0; k < bumps; ++k) {
        const double amp = uniform(0.1, 2.0);
        const double center = uniform(0.0, grid->r_max / 3.0);
        const double width = uniform(0.2, std::min(2.0, grid->r_max / 6.0));
        for (int j = 0; j < grid->cells; ++j) {
            const double z = (grid->nodes[j] - center) / width;
            v[j] += amp * std::exp(-0.5 * z * z);
        }
    }
    return {std::move(grid), std::move(v)};
}

int verify_interpolation(const MinimizationReport& report, const ModelParams& p, GridPtr grid,
                         int trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    int violations = 0;
    for (int t = 0; t < trials; ++t) {
        const RealField u = random_trial_field(grid, rng);
        const double lhs = potential_integral(u, p);
        const double rhs = report.best_constant * grad_norm_sq(u) *
                           std::pow(mass_sq(u), p.sigma) * (1.0 + 1e-9);
        if (lhs > rhs) ++violations;
    }
    return violations;
}

} // namespace nls
