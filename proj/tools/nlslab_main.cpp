// Command-line front end: ground states, sharp constants, propagation,
// self-similar blow-up construction and the verification harness.
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure,
// 3 verification-suite failure.

#include <atomic>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "nlslab/evolution.hpp"
#include "nlslab/functionals.hpp"
#include "nlslab/groundstate.hpp"
#include "nlslab/io.hpp"
#include "nlslab/pseudoconformal.hpp"
#include "nlslab/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
    int dim = 1;
    double b = 0.0;
    double omega = 1.0;
    double sigma = -1.0; // < 0 means the mass-invariant power
    double rmax = -1.0;  // < 0 means 20 / omega
    int cells = 4096;
    std::string out_dir = ".";
    std::uint64_t seed = 987654321;
    double tol = 1e-12;

    int max_bisect = 60;

    std::string init = "ground:1.0";
    double tmax = 10.0;
    double dt0 = 1e-3;
    double dt_min = 1e-10;
    double c_dt = 0.1;
    double blowup_factor = 1e3;
    int stride = 10;
    std::string snapshots; // comma-separated times

    double a = 1.0;
    double t = 0.0;
    std::string a_list = "0.1,0.05,0.025";
    std::string c_list;
    double c_from = 0.8, c_to = 1.2, c_step = 0.1;
    int threads = 0;
    int trials = 1000;
};

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

nls::ModelParams params_of(const Options& o) {
    if (o.sigma > 0.0) return nls::make_params(o.dim, o.b, o.sigma, o.omega);
    return nls::critical_params(o.dim, o.b, o.omega);
}

nls::GridPtr grid_of(const Options& o, const nls::ModelParams& p) {
    const double rmax = o.rmax > 0.0 ? o.rmax : 20.0 / p.omega;
    return nls::make_grid(p.dim, rmax, o.cells);
}

nls::EvolveControls controls_of(const Options& o) {
    nls::EvolveControls c;
    c.dt0 = o.dt0;
    c.dt_min = o.dt_min;
    c.c_dt = o.c_dt;
    c.t_max = o.tmax;
    c.blowup_factor = o.blowup_factor;
    c.output_stride = o.stride;
    if (!o.snapshots.empty()) c.snapshot_times = parse_list(o.snapshots);
    return c;
}

// Apply --config file values as defaults; explicit flags win.
void apply_config_defaults(Options& o, const std::string& path) {
    const json j = json::parse(nls::io::read_text(path));
    auto get = [&](const char* key, auto& slot) {
        if (j.contains(key)) slot = j.at(key).get<std::decay_t<decltype(slot)>>();
    };
    get("dim", o.dim); get("b", o.b); get("omega", o.omega); get("sigma", o.sigma);
    get("rmax", o.rmax); get("cells", o.cells); get("out_dir", o.out_dir);
    get("seed", o.seed); get("tol", o.tol); get("init", o.init); get("tmax", o.tmax);
    get("dt0", o.dt0); get("dt_min", o.dt_min); get("c_dt", o.c_dt);
    get("blowup_factor", o.blowup_factor); get("stride", o.stride);
    get("snapshots", o.snapshots); get("a", o.a); get("t", o.t);
    get("a_list", o.a_list); get("c_list", o.c_list); get("c_from", o.c_from);
    get("c_to", o.c_to); get("c_step", o.c_step); get("threads", o.threads);
    get("trials", o.trials);
}

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--dim", o.dim, "spatial dimension N");
    cmd->add_option("--b", o.b, "inhomogeneity exponent, 0 <= b < min(2, N)");
    cmd->add_option("--omega", o.omega, "standing-wave frequency");
    cmd->add_option("--sigma", o.sigma, "nonlinearity power (default: (2-b)/N)");
    cmd->add_option("--rmax", o.rmax, "truncation radius (default 20/omega)");
    cmd->add_option("--cells", o.cells, "number of radial cells");
    cmd->add_option("--out-dir", o.out_dir, "output directory");
    cmd->add_option("--seed", o.seed, "seed for randomized trials");
    cmd->add_option("--tol", o.tol, "relative bisection tolerance");
}

void add_evolve_opts(CLI::App* cmd, Options& o) {
    cmd->add_option("--init", o.init, "initial data: ground:<c> | selfsim:<a> | file:<path>");
    cmd->add_option("--tmax", o.tmax, "final time");
    cmd->add_option("--dt0", o.dt0, "initial/maximal step");
    cmd->add_option("--dt-min", o.dt_min, "step-collapse threshold");
    cmd->add_option("--c-dt", o.c_dt, "phase budget per step");
    cmd->add_option("--blowup-factor", o.blowup_factor, "gradient growth detection factor");
    cmd->add_option("--stride", o.stride, "record observables every this many steps");
    cmd->add_option("--snapshots", o.snapshots, "comma-separated snapshot times");
}

void print_summary(const nls::GroundState& g) {
    std::cout.precision(10);
    std::cout << "alpha=" << g.alpha << " mass_sq=" << g.mass_sq << " E=" << g.energy
              << " J=" << g.weinstein << " residual=" << g.residual
              << " tail_mass_fraction=" << g.tail_mass_fraction << "\n";
}

int cmd_groundstate(const Options& o) {
    const auto p = params_of(o);
    const auto grid = grid_of(o, p);
    const auto gs = nls::find_ground_state(p, grid, {0.1, 10.0}, o.tol, o.max_bisect);
    nls::io::write_text(fs::path(o.out_dir) / "ground_state.json", nls::io::ground_state_json(gs, p));
    print_summary(gs);
    return 0;
}

int cmd_constants(const Options& o) {
    auto p = params_of(o);
    if (!p.is_critical())
        throw std::invalid_argument("constants are defined at sigma = (2-b)/N");
    const auto rep = nls::minimization_report(p, grid_of(o, p));
    const std::string text = nls::io::report_json(rep, p);
    nls::io::write_text(fs::path(o.out_dir) / "constants.json", text);
    std::cout << text;
    return 0;
}

struct InitData {
    nls::ComplexField field;
    nls::ModelParams params;
};

InitData initial_data(const Options& o) {
    const auto colon = o.init.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("init spec must look like ground:<c>, selfsim:<a> or file:<path>");
    const std::string kind = o.init.substr(0, colon);
    const std::string arg = o.init.substr(colon + 1);

    if (kind == "file") {
        auto loaded = nls::io::load_field(arg);
        return {std::move(loaded.field), loaded.params};
    }
    const auto p = params_of(o);
    const auto grid = grid_of(o, p);
    const auto psi = nls::find_ground_state(p, grid, {0.1, 10.0}, o.tol);
    if (kind == "ground") {
        const double c = std::stod(arg);
        nls::ComplexField f = nls::to_complex(psi.profile);
        for (auto& z : f.values) z *= c;
        return {std::move(f), p};
    }
    if (kind == "selfsim") {
        const double a = std::stod(arg);
        return {nls::self_similar(psi.profile, p, a, 0.0, grid), p};
    }
    throw std::invalid_argument("unknown init kind: " + kind);
}

int cmd_evolve(const Options& o) {
    InitData init = initial_data(o);
    const auto ctl = controls_of(o);
    const nls::Trajectory traj = nls::propagate(init.field, init.params, ctl);

    const fs::path dir(o.out_dir);
    nls::io::write_text(dir / "trajectory.csv", nls::io::trajectory_csv(traj));
    nls::io::write_text(dir / "verdict.json", nls::io::verdict_json(traj));
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        std::ostringstream name;
        name << "snapshot_" << i << ".json";
        nls::io::write_text(dir / name.str(),
                            nls::io::field_json(traj.snapshots[i].second, init.params));
    }
    std::cout << nls::io::verdict_json(traj);
    return 0;
}

int cmd_selfsim(const Options& o) {
    const auto p = params_of(o);
    const auto grid = grid_of(o, p);
    const auto psi = nls::find_ground_state(p, grid, {0.1, 10.0}, o.tol);
    const auto field = nls::self_similar(psi.profile, p, o.a, o.t, grid);
    const std::string text = nls::io::field_json(field, p);
    nls::io::write_text(fs::path(o.out_dir) / "selfsim_field.json", text);
    std::cout << "wrote selfsim_field.json  t=" << o.t << " a=" << o.a
              << " mass_sq=" << nls::mass_sq(field) << "\n";
    return 0;
}

int cmd_distances(const Options& o) {
    const auto p = params_of(o);
    const auto grid = grid_of(o, p);
    const auto psi = nls::find_ground_state(p, grid, {0.1, 10.0}, o.tol);
    const auto as = parse_list(o.a_list);
    std::vector<nls::DistanceBreakdown> dists;
    for (double a : as) dists.push_back(nls::initial_distance(psi.profile, a));
    const std::string text = nls::io::distances_json(as, dists);
    nls::io::write_text(fs::path(o.out_dir) / "distances.json", text);
    std::cout << text;
    return 0;
}

int cmd_rates(const Options& o) {
    const auto p = params_of(o);
    const auto grid = grid_of(o, p);
    const auto psi = nls::find_ground_state(p, grid, {0.1, 10.0}, o.tol);
    const auto phi0 = nls::self_similar(psi.profile, p, o.a, 0.0, grid);

    nls::EvolveControls ctl = controls_of(o);
    ctl.t_max = std::min(ctl.t_max, 2.0 / o.a);
    const nls::Trajectory traj = nls::propagate(phi0, p, ctl);
    const nls::RateReport rep = nls::rate_check(traj, o.a);

    const fs::path dir(o.out_dir);
    nls::io::write_text(dir / "trajectory.csv", nls::io::trajectory_csv(traj));
    const std::string text = nls::io::rates_json(rep, traj.T_estimate, {}, {});
    nls::io::write_text(dir / "rates.json", text);
    std::cout << text;
    return 0;
}

int cmd_scan(const Options& o) {
    const auto p = params_of(o);
    const auto grid = grid_of(o, p);
    const auto psi = nls::find_ground_state(p, grid, {0.1, 10.0}, o.tol);

    std::vector<double> cs = o.c_list.empty() ? std::vector<double>{} : parse_list(o.c_list);
    if (cs.empty())
        for (double c = o.c_from; c <= o.c_to + 1e-12; c += o.c_step) cs.push_back(c);

    const auto ctl = controls_of(o);
    std::vector<nls::Trajectory> results(cs.size());
    std::atomic<std::size_t> next{0};
    const int nthreads = o.threads > 0
                             ? o.threads
                             : std::max(1u, std::thread::hardware_concurrency());
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < cs.size(); i = next.fetch_add(1)) {
            nls::ComplexField f = nls::to_complex(psi.profile);
            for (auto& z : f.values) z *= cs[i];
            results[i] = nls::propagate(f, p, ctl);
        }
    };
    std::vector<std::thread> pool;
    for (int k = 0; k < nthreads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    json arr = json::array();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const auto& tr = results[i];
        json row{{"c", cs[i]},
                 {"verdict", nls::to_string(tr.verdict)},
                 {"t_end", tr.samples.empty() ? 0.0 : tr.samples.back().t},
                 {"max_grad_norm", tr.max_grad_norm}};
        if (std::isfinite(tr.T_estimate)) row["T_estimate"] = tr.T_estimate;
        arr.push_back(row);
        std::cout << "c=" << cs[i] << "  " << nls::to_string(tr.verdict) << "\n";
    }
    nls::io::write_text(fs::path(o.out_dir) / "scan.json", json{{"scan", arr}}.dump(2) + "\n");
    return 0;
}

int cmd_verify(const Options& o) {
    const auto results = nls::run_acceptance_suite(std::cout, o.seed);
    int failures = 0;
    for (const auto& r : results)
        if (!r.passed) ++failures;
    std::cout << (failures == 0 ? "all checks passed\n"
                                : std::to_string(failures) + " check(s) failed\n");
    return failures == 0 ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"radial laboratory for the mass-critical inhomogeneous NLS"};
    app.require_subcommand(1);

    Options o;
    std::string config_path;

    // --config is honored before flag parsing so explicit flags win.
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
    try {
        if (!config_path.empty()) apply_config_defaults(o, config_path);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }

    auto* g = app.add_subcommand("groundstate", "solve the stationary profile");
    g->add_option("--max-bisect", o.max_bisect, "bisection step budget");
    auto* k = app.add_subcommand("constants", "critical mass and best constant");
    auto* e = app.add_subcommand("evolve", "propagate initial data");
    auto* s = app.add_subcommand("selfsim", "write the explicit blow-up field at time t");
    auto* d = app.add_subcommand("distances", "chirp distance table over a");
    auto* r = app.add_subcommand("rates", "blow-up rate fit from a self-similar run");
    auto* sc = app.add_subcommand("scan", "verdict sweep over mass multipliers");
    auto* v = app.add_subcommand("verify", "run the full verification suite");

    for (auto* cmd : {g, k, e, s, d, r, sc, v}) {
        add_common(cmd, o);
        cmd->add_option("--config", config_path, "JSON file mirroring the flags");
    }
    for (auto* cmd : {e, r, sc}) add_evolve_opts(cmd, o);
    s->add_option("--a", o.a, "transform parameter");
    s->add_option("--t", o.t, "evaluation time in [0, 1/a)");
    r->add_option("--a", o.a, "transform parameter");
    d->add_option("--a-list", o.a_list, "comma-separated a values");
    sc->add_option("--c-list", o.c_list, "comma-separated mass multipliers");
    sc->add_option("--c-from", o.c_from, "sweep start");
    sc->add_option("--c-to", o.c_to, "sweep end");
    sc->add_option("--c-step", o.c_step, "sweep step");
    sc->add_option("--threads", o.threads, "worker threads (0 = hardware)");

    // rates runs live near the blow-up time; detect inside the resolved window.
    r->parse_complete_callback([&] {
        if (r->count("--blowup-factor") == 0 && o.blowup_factor == 1e3) o.blowup_factor = 30.0;
    });
    sc->parse_complete_callback([&] {
        if (sc->count("--blowup-factor") == 0 && o.blowup_factor == 1e3) o.blowup_factor = 30.0;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        return app.exit(err) == 0 ? 0 : 1;
    }

    try {
        if (g->parsed()) return cmd_groundstate(o);
        if (k->parsed()) return cmd_constants(o);
        if (e->parsed()) return cmd_evolve(o);
        if (s->parsed()) return cmd_selfsim(o);
        if (d->parsed()) return cmd_distances(o);
        if (r->parsed()) return cmd_rates(o);
        if (sc->parsed()) return cmd_scan(o);
        if (v->parsed()) return cmd_verify(o);
    } catch (const nls::SolverError& err) {
        std::cerr << json{{"error", {{"kind", "solver"}, {"message", err.what()}}}}.dump() << "\n";
        return 2;
    } catch (const nls::StepFailure& err) {
        std::cerr << json{{"error", {{"kind", "step"}, {"message", err.what()}}}}.dump() << "\n";
        return 2;
    } catch (const std::invalid_argument& err) {
        std::cerr << json{{"error", {{"kind", "config"}, {"message", err.what()}}}}.dump() << "\n";
        return 1;
    } catch (const std::domain_error& err) {
        std::cerr << json{{"error", {{"kind", "config"}, {"message", err.what()}}}}.dump() << "\n";
        return 1;
    } catch (const std::exception& err) {
        std::cerr << json{{"error", {{"kind", "runtime"}, {"message", err.what()}}}}.dump() << "\n";
        return 2;
    }
    return 1;
}
