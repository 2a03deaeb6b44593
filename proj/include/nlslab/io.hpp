#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "nlslab/evolution.hpp"
#include "nlslab/field.hpp"
#include "nlslab/groundstate.hpp"
#include "nlslab/params.hpp"
#include "nlslab/pseudoconformal.hpp"

namespace nls::io {

/// Field file layout:
///   {params:{N,b,sigma,omega}, grid:{r_max,M}, re:[...], im:[...]}
/// with "im" omitted for real fields.  Doubles are written in the
/// shortest round-trip decimal form, so save/load is bit exact.
std::string field_json(const RealField& f, const ModelParams& p);
std::string field_json(const ComplexField& f, const ModelParams& p);

struct LoadedField {
    ModelParams params;
    ComplexField field;  ///< imaginary part zero for real files
    bool was_real = false;
};
LoadedField parse_field(const std::string& text);
LoadedField load_field(const std::filesystem::path& path);

std::string ground_state_json(const GroundState& g, const ModelParams& p);
GroundState parse_ground_state(const std::string& text, ModelParams& params_out);
GroundState load_ground_state(const std::filesystem::path& path, ModelParams& params_out);

std::string report_json(const MinimizationReport& r, const ModelParams& p);

std::string trajectory_csv(const Trajectory& t);
std::string verdict_json(const Trajectory& t);

std::string rates_json(const RateReport& r, double T, const std::vector<DistanceBreakdown>& dists,
                       const std::vector<double>& dist_as);
std::string distances_json(const std::vector<double>& as,
                           const std::vector<DistanceBreakdown>& dists);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

} // namespace nls::io
