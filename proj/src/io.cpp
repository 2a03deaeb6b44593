#include "nlslab/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace nls::io {

using nlohmann::json;

namespace {

json params_json(const ModelParams& p) {
    return json{{"N", p.dim}, {"b", p.b}, {"sigma", p.sigma}, {"omega", p.omega}};
}

json grid_json(const RadialGrid& g) {
    return json{{"r_max", g.r_max}, {"M", g.cells}};
}

ModelParams params_from(const json& j) {
    ModelParams p;
    p.dim = j.at("N").get<int>();
    p.b = j.at("b").get<double>();
    p.sigma = j.at("sigma").get<double>();
    p.omega = j.at("omega").get<double>();
    validate(p);
    return p;
}

json field_body(const RealField& f, const ModelParams& p) {
    json j;
    j["params"] = params_json(p);
    j["grid"] = grid_json(*f.grid);
    j["re"] = f.values;
    return j;
}

json field_body(const ComplexField& f, const ModelParams& p) {
    json j;
    j["params"] = params_json(p);
    j["grid"] = grid_json(*f.grid);
    std::vector<double> re(f.values.size()), im(f.values.size());
    for (std::size_t k = 0; k < f.values.size(); ++k) {
        re[k] = f.values[k].real();
        im[k] = f.values[k].imag();
    }
    j["re"] = re;
    j["im"] = im;
    return j;
}

} // namespace

std::string field_json(const RealField& f, const ModelParams& p) {
    return field_body(f, p).dump(2) + "\n";
}

std::string field_json(const ComplexField& f, const ModelParams& p) {
    return field_body(f, p).dump(2) + "\n";
}

LoadedField parse_field(const std::string& text) {
    const json j = json::parse(text);
    LoadedField out;
    out.params = params_from(j.at("params"));
    const auto& jg = j.at("grid");
    GridPtr grid = make_grid(out.params.dim, jg.at("r_max").get<double>(), jg.at("M").get<int>());
    const auto re = j.at("re").get<std::vector<double>>();
    std::vector<double> im;
    out.was_real = !j.contains("im");
    if (!out.was_real) im = j.at("im").get<std::vector<double>>();
    if (static_cast<int>(re.size()) != grid->cells ||
        (!out.was_real && im.size() != re.size()))
        throw std::invalid_argument("field file sample count does not match the grid");
    std::vector<cplx> v(re.size());
    for (std::size_t k = 0; k < re.size(); ++k)
        v[k] = cplx{re[k], out.was_real ? 0.0 : im[k]};
    out.field = ComplexField{std::move(grid), std::move(v)};
    return out;
}

LoadedField load_field(const std::filesystem::path& path) {
    return parse_field(read_text(path));
}

std::string ground_state_json(const GroundState& g, const ModelParams& p) {
    json j = field_body(g.profile, p);
    j["diagnostics"] = json{{"alpha", g.alpha},
                            {"omega", g.omega},
                            {"mass_sq", g.mass_sq},
                            {"grad_norm_sq", g.grad_norm_sq},
                            {"potential", g.potential},
                            {"weinstein", g.weinstein},
                            {"energy", g.energy},
                            {"residual", g.residual},
                            {"tail_mass_fraction", g.tail_mass_fraction},
                            {"multiple_basins", g.multiple_basins}};
    return j.dump(2) + "\n";
}

GroundState parse_ground_state(const std::string& text, ModelParams& params_out) {
    const json j = json::parse(text);
    params_out = params_from(j.at("params"));
    const auto& jg = j.at("grid");
    GridPtr grid = make_grid(params_out.dim, jg.at("r_max").get<double>(), jg.at("M").get<int>());
    auto re = j.at("re").get<std::vector<double>>();
    if (static_cast<int>(re.size()) != grid->cells)
        throw std::invalid_argument("profile sample count does not match the grid");
    double alpha = std::numeric_limits<double>::quiet_NaN();
    if (j.contains("diagnostics")) alpha = j["diagnostics"].value("alpha", alpha);
    return ground_state_from_profile(RealField{std::move(grid), std::move(re)}, params_out, alpha);
}

GroundState load_ground_state(const std::filesystem::path& path, ModelParams& params_out) {
    return parse_ground_state(read_text(path), params_out);
}

std::string report_json(const MinimizationReport& r, const ModelParams& p) {
    json j{{"N", p.dim},
           {"b", p.b},
           {"sigma", p.sigma},
           {"critical_mass", r.critical_mass},
           {"best_constant", r.best_constant},
           {"j_at_psi", r.j_at_psi},
           {"m", r.m}};
    return j.dump(2) + "\n";
}

std::string trajectory_csv(const Trajectory& t) {
    std::ostringstream os;
    os << "t,mass_sq,energy,grad_norm,sup_norm,dt\n";
    os.precision(17);
    for (const auto& s : t.samples)
        os << s.t << ',' << s.mass_sq << ',' << s.energy << ',' << s.grad_norm << ','
           << s.sup_norm << ',' << s.dt << '\n';
    return os.str();
}

std::string verdict_json(const Trajectory& t) {
    json j{{"verdict", to_string(t.verdict)},
           {"fit_quality", t.fit_quality},
           {"max_grad_norm", t.max_grad_norm}};
    if (std::isfinite(t.T_estimate))
        j["T_estimate"] = t.T_estimate;
    else
        j["T_estimate"] = nullptr;
    if (!t.stop_reason.empty()) j["stop_reason"] = t.stop_reason;
    return j.dump(2) + "\n";
}

namespace {

json distances_body(const std::vector<double>& as, const std::vector<DistanceBreakdown>& dists) {
    json arr = json::array();
    for (std::size_t i = 0; i < dists.size(); ++i)
        arr.push_back(json{{"a", as[i]},
                           {"l2_part", dists[i].l2_part},
                           {"grad_part", dists[i].grad_part},
                           {"h1_total", dists[i].h1_total}});
    return arr;
}

} // namespace

std::string rates_json(const RateReport& r, double T, const std::vector<DistanceBreakdown>& dists,
                       const std::vector<double>& dist_as) {
    json j{{"a", r.a},
           {"T", T},
           {"p_fit", r.p_fit},
           {"q_fit", r.q_fit},
           {"fit_quality", std::min(r.p_quality, r.q_quality)},
           {"p_quality", r.p_quality},
           {"q_quality", r.q_quality},
           {"not_blowup", r.not_blowup}};
    if (!dists.empty()) j["distances"] = distances_body(dist_as, dists);
    return j.dump(2) + "\n";
}

std::string distances_json(const std::vector<double>& as,
                           const std::vector<DistanceBreakdown>& dists) {
    json j{{"distances", distances_body(as, dists)}};
    return j.dump(2) + "\n";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path.string());
    out << text;
    if (!out)
        throw std::runtime_error("write failed: " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace nls::io
