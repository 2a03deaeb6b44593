#include "nlslab/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlslab/functionals.hpp"

namespace nls {

void validate(const EvolveControls& c) {
    if (!(c.dt0 > 0.0) || !(c.dt_min > 0.0) || !(c.dt_min < c.dt0))
        throw std::invalid_argument("controls need 0 < dt_min < dt0");
    if (!(c.t_max > 0.0))
        throw std::invalid_argument("controls need t_max > 0");
    if (!(c.blowup_factor > 1.0))
        throw std::invalid_argument("controls need blowup_factor > 1");
    if (c.output_stride < 1)
        throw std::invalid_argument("controls need output_stride >= 1");
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::GlobalToTmax: return "Global-to-t_max";
        case Verdict::BlowupDetected: return "BlowupDetected";
        case Verdict::StepCollapse: return "StepCollapse";
    }
    return "?";
}

namespace {

// sigma-specific power |phi|^{2 sigma} from |phi|^2, special-casing the
// exponents that appear at the mass-invariant power in low dimension.
double amp_pow(double norm2, double sigma) {
    if (sigma == 0.5) return std::sqrt(norm2);
    if (sigma == 1.0) return norm2;
    if (sigma == 1.5) return norm2 * std::sqrt(norm2);
    if (sigma == 2.0) return norm2 * norm2;
    return std::pow(norm2, sigma);
}

void half_phase(std::vector<cplx>& v, double dt, double sigma,
                const std::vector<double>& r_pow_mb) {
    const double half = 0.5 * dt;
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double rate = r_pow_mb[j] * amp_pow(std::norm(v[j]), sigma);
        v[j] *= std::polar(1.0, half * rate);
    }
}

bool finite(const std::vector<cplx>& v) {
    for (const cplx& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

std::vector<double> radial_power(const RadialGrid& g, double b) {
    std::vector<double> out(g.cells);
    for (int j = 0; j < g.cells; ++j) out[j] = std::pow(g.nodes[j], -b);
    return out;
}

} // namespace

void strang_step_inplace(std::vector<cplx>& values, double dt, const ModelParams& p,
                         const RadialLaplacian& lap, const std::vector<double>& r_pow_mb,
                         RadialLaplacian::Workspace& work) {
    half_phase(values, dt, p.sigma, r_pow_mb);
    lap.crank_nicolson(values, dt, work);
    half_phase(values, dt, p.sigma, r_pow_mb);
    if (!finite(values))
        throw StepFailure("state turned non-finite during a step");
}

ComplexField strang_step(const ComplexField& phi, double dt, const ModelParams& p) {
    if (!(dt > 0.0))
        throw std::invalid_argument("step needs dt > 0");
    ComplexField out = phi;
    RadialLaplacian lap(phi.grid);
    RadialLaplacian::Workspace work;
    const auto rb = radial_power(*phi.grid, p.b);
    strang_step_inplace(out.values, dt, p, lap, rb, work);
    return out;
}

std::optional<Verdict> detect_blowup(const Trajectory& traj, const EvolveControls& c) {
    if (traj.samples.empty()) return std::nullopt;
    const auto& last = traj.samples.back();
    if (last.dt < c.dt_min) return Verdict::StepCollapse;
    const double g0 = traj.samples.front().grad_norm;
    if (g0 > 0.0 && last.grad_norm >= c.blowup_factor * g0) return Verdict::BlowupDetected;
    return std::nullopt;
}

BlowupFit estimate_blowup_time(const Trajectory& traj) {
    const auto& s = traj.samples;
    if (s.size() < 2)
        throw SolverError(SolverError::Kind::InsufficientData, "too few samples for a rate fit");

    // Trust horizon: the continuum flow conserves the energy, so a
    // drifting energy flags an under-resolved focusing spike.
    const double e0 = s.front().energy;
    const double g0 = s.front().grad_norm;
    const double scale = std::max({std::abs(e0), 0.1 * g0 * g0, 1e-12});
    std::size_t trusted = s.size();
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (std::abs(s[i].energy - e0) > 0.05 * scale) { trusted = i; break; }
    }
    if (trusted < 2)
        throw SolverError(SolverError::Kind::InsufficientData, "no trusted growth window");

    std::size_t peak = 0;
    for (std::size_t i = 0; i < trusted; ++i)
        if (s[i].grad_norm > s[peak].grad_norm) peak = i;
    const double g_peak = s[peak].grad_norm;
    if (!(g_peak > 0.0))
        throw SolverError(SolverError::Kind::InsufficientData, "gradient norm never grew");

    // Last decade of growth, restricted to where growth dominates the
    // initial plateau (the reciprocal is only asymptotically linear).
    const double lo_cut = std::max(0.1 * g_peak, 3.0 * g0);
    std::vector<double> ts, ys;
    for (std::size_t i = 0; i <= peak; ++i) {
        if (s[i].grad_norm >= lo_cut && s[i].grad_norm > 0.0) {
            ts.push_back(s[i].t);
            ys.push_back(1.0 / s[i].grad_norm);
        }
    }
    if (ts.size() < 10)
        throw SolverError(SolverError::Kind::InsufficientData,
                          "need >= 10 samples in the detection window");

    const std::size_t n = ts.size();
    double st = 0, sy = 0, stt = 0, sty = 0;
    for (std::size_t i = 0; i < n; ++i) {
        st += ts[i]; sy += ys[i]; stt += ts[i] * ts[i]; sty += ts[i] * ys[i];
    }
    const double det = n * stt - st * st;
    const double slope = (n * sty - st * sy) / det;
    const double intercept = (sy - slope * st) / n;

    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / n;
    for (std::size_t i = 0; i < n; ++i) {
        const double fit = intercept + slope * ts[i];
        ss_res += (ys[i] - fit) * (ys[i] - fit);
        ss_tot += (ys[i] - ybar) * (ys[i] - ybar);
    }
    BlowupFit out;
    out.fit_quality = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 0.0;
    out.T_estimate = (slope < 0.0) ? -intercept / slope
                                   : std::numeric_limits<double>::quiet_NaN();
    return out;
}

std::optional<double> gradient_bound(const ComplexField& phi0, const ModelParams& p,
                                     const MinimizationReport& report) {
    const double beta =
        1.0 - report.best_constant * std::pow(mass_sq(phi0), p.sigma) / (p.sigma + 1.0);
    if (beta <= 1e-12) return std::nullopt;
    return energy(phi0, p) / beta;
}

Trajectory propagate(const ComplexField& phi0, const ModelParams& p, const EvolveControls& c) {
    validate(p);
    validate(c);
    if (!p.is_critical())
        throw std::invalid_argument("propagation is defined at sigma = (2-b)/N");
    if (phi0.grid->dim != p.dim)
        throw std::invalid_argument("grid dimension does not match the model");

    Trajectory traj;
    traj.T_estimate = std::numeric_limits<double>::quiet_NaN();

    const auto& grid = *phi0.grid;
    RadialLaplacian lap(phi0.grid);
    RadialLaplacian::Workspace work;
    const auto rb = radial_power(grid, p.b);

    std::vector<cplx> v = phi0.values;
    auto field_of = [&](const std::vector<cplx>& w) { return ComplexField{phi0.grid, w}; };

    std::vector<double> snaps = c.snapshot_times;
    std::sort(snaps.begin(), snaps.end());
    std::size_t next_snap = 0;

    double t = 0.0;
    long step_count = 0;
    bool done = false;

    auto record = [&](double dt_used) -> bool { // returns false to stop
        ComplexField f = field_of(v);
        TrajectorySample smp;
        smp.t = t;
        smp.mass_sq = mass_sq(f);
        smp.energy = energy(f, p);
        smp.grad_norm = std::sqrt(grad_norm_sq(f));
        smp.sup_norm = sup_norm(f);
        smp.dt = dt_used;
        traj.samples.push_back(smp);
        traj.max_grad_norm = std::max(traj.max_grad_norm, smp.grad_norm);

        if (boundary_mass_fraction(f) > c.tail_mass_limit && smp.mass_sq > 0.0) {
            traj.verdict = Verdict::StepCollapse;
            traj.stop_reason = "mass reached the outer 10% of the grid (truncation suspect)";
            return false;
        }
        if (auto verdict = detect_blowup(traj, c)) {
            traj.verdict = *verdict;
            if (*verdict == Verdict::BlowupDetected) {
                traj.stop_reason = "gradient norm grew past the detection factor";
                try {
                    const BlowupFit fit = estimate_blowup_time(traj);
                    traj.T_estimate = fit.T_estimate;
                    traj.fit_quality = fit.fit_quality;
                } catch (const SolverError&) {
                    traj.fit_quality = 0.0;
                }
            } else {
                traj.stop_reason = "time step collapsed";
            }
            return false;
        }
        return true;
    };

    if (!record(c.dt0)) done = true;
    if (snaps.size() > next_snap && snaps[next_snap] <= 0.0) {
        traj.snapshots.emplace_back(0.0, field_of(v));
        ++next_snap;
    }

    while (!done && t < c.t_max * (1.0 - 1e-14)) {
        double rate = 0.0;
        for (std::size_t j = 0; j < v.size(); ++j)
            rate = std::max(rate, rb[j] * amp_pow(std::norm(v[j]), p.sigma));
        double dt = (rate > 1e-300) ? std::min(c.dt0, c.c_dt / rate) : c.dt0;
        if (dt < c.dt_min) {
            traj.verdict = Verdict::StepCollapse;
            traj.stop_reason = "adaptive step fell below dt_min";
            if (t > traj.samples.back().t) {
                TrajectorySample smp = traj.samples.back();
                smp.t = t;
                smp.dt = dt;
                traj.samples.push_back(smp);
            }
            break;
        }
        // Land exactly on the next snapshot time or t_max.
        double target = c.t_max;
        if (next_snap < snaps.size()) target = std::min(target, snaps[next_snap]);
        if (target - t <= 1e-12 * std::max(1.0, target)) {
            // Within float resolution of the landing point: snap.
            t = target;
            if (next_snap < snaps.size() && t >= snaps[next_snap] - 1e-12) {
                traj.snapshots.emplace_back(t, field_of(v));
                ++next_snap;
            }
            if (t >= c.t_max * (1.0 - 1e-14) && !record(dt)) done = true;
            continue;
        }
        if (t + dt >= target - 1e-14) dt = target - t;

        try {
            strang_step_inplace(v, dt, p, lap, rb, work);
        } catch (const StepFailure&) {
            traj.verdict = Verdict::StepCollapse;
            traj.stop_reason = "state turned non-finite";
            break;
        }
        t += dt;
        ++step_count;

        if (next_snap < snaps.size() && t >= snaps[next_snap] - 1e-12) {
            traj.snapshots.emplace_back(t, field_of(v));
            ++next_snap;
        }

        const bool due = (step_count % c.output_stride == 0) || t >= c.t_max * (1.0 - 1e-14);
        if (due && !record(dt)) {
            done = true;
            break;
        }
    }

    return traj;
}

} // namespace nls
