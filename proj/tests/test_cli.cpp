#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct RunResult {
    int code;
    std::string out, err;
};

RunResult run_cli(const std::string& args, const fs::path& dir) {
    fs::create_directories(dir);
    const fs::path out = dir / "stdout.txt", err = dir / "stderr.txt";
    const std::string cmd = std::string(NLSLAB_CLI_PATH) + " " + args + " > " + out.string() +
                            " 2> " + err.string();
    const int raw = std::system(cmd.c_str());
    return {WEXITSTATUS(raw), slurp(out), slurp(err)};
}

const fs::path kBase = fs::temp_directory_path() / "nlslab_cli_tests";

} // namespace

TEST_CASE("parameter validation exits with the config code") {
    const auto r = run_cli("groundstate --dim 2 --b 3", kBase / "bad_b");
    CHECK(r.code == 1);
    CHECK(r.err.find("error") != std::string::npos);
}

TEST_CASE("groundstate writes the profile and a one-line summary") {
    const fs::path dir = kBase / "gs";
    const auto r = run_cli("groundstate --dim 1 --b 0 --omega 1 --rmax 15 --cells 2048 --out-dir " +
                               dir.string(),
                           dir);
    REQUIRE(r.code == 0);
    CHECK(r.out.find("alpha=") != std::string::npos);
    CHECK(r.out.find("mass_sq=2.72") != std::string::npos);
    CHECK(r.out.find("residual=") != std::string::npos);

    const json j = json::parse(slurp(dir / "ground_state.json"));
    CHECK(j.at("params").at("N").get<int>() == 1);
    CHECK(j.at("grid").at("M").get<int>() == 2048);
    CHECK(j.at("diagnostics").at("mass_sq").get<double>() == doctest::Approx(2.7206990).epsilon(1e-4));
    CHECK(!j.contains("im"));
}

TEST_CASE("solver failures exit with the numerical code and JSON on stderr") {
    const auto r = run_cli("groundstate --dim 2 --b 1 --cells 512 --max-bisect 0", kBase / "fail");
    CHECK(r.code == 2);
    CHECK(json::parse(r.err).contains("error"));
}

TEST_CASE("constants are deterministic and self-consistent") {
    const fs::path d1 = kBase / "c1", d2 = kBase / "c2";
    const std::string args = "constants --dim 2 --b 1 --rmax 18 --cells 2048 --out-dir ";
    REQUIRE(run_cli(args + d1.string(), d1).code == 0);
    REQUIRE(run_cli(args + d2.string(), d2).code == 0);
    const std::string a = slurp(d1 / "constants.json"), b = slurp(d2 / "constants.json");
    CHECK(a == b); // bit-identical across runs
    const json j = json::parse(a);
    CHECK(j.at("best_constant").get<double>() * j.at("j_at_psi").get<double>() ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(j.at("N").get<int>() == 2);
}

TEST_CASE("evolve writes the trajectory, verdict and snapshots") {
    const fs::path dir = kBase / "ev";
    const auto r = run_cli(
        "evolve --dim 2 --b 1 --init ground:0.9 --rmax 12 --cells 1024 --tmax 0.2 "
        "--stride 10 --snapshots 0.1,0.2 --out-dir " +
            dir.string(),
        dir);
    REQUIRE(r.code == 0);

    const std::string csv = slurp(dir / "trajectory.csv");
    CHECK(csv.rfind("t,mass_sq,energy,grad_norm,sup_norm,dt\n", 0) == 0);

    const json v = json::parse(slurp(dir / "verdict.json"));
    CHECK(v.at("verdict").get<std::string>() == "Global-to-t_max");
    CHECK(fs::exists(dir / "snapshot_0.json"));
    CHECK(fs::exists(dir / "snapshot_1.json"));

    // A written snapshot can seed a new run.
    const auto r2 = run_cli("evolve --init file:" + (dir / "snapshot_0.json").string() +
                                " --tmax 0.05 --out-dir " + (dir / "resume").string(),
                            dir / "resume");
    CHECK(r2.code == 0);
}

TEST_CASE("selfsim writes the requested field") {
    const fs::path dir = kBase / "ss";
    const auto r = run_cli("selfsim --dim 2 --b 1 --rmax 12 --cells 1024 --a 1.0 --t 0.5 --out-dir " +
                               dir.string(),
                           dir);
    REQUIRE(r.code == 0);
    const json j = json::parse(slurp(dir / "selfsim_field.json"));
    CHECK(j.contains("im"));
    CHECK(j.at("grid").at("M").get<int>() == 1024);
}

TEST_CASE("distances emits the tabulated breakdown") {
    const fs::path dir = kBase / "dist";
    const auto r = run_cli("distances --dim 2 --b 1 --rmax 12 --cells 1024 --out-dir " + dir.string(),
                           dir);
    REQUIRE(r.code == 0);
    const json j = json::parse(slurp(dir / "distances.json"));
    REQUIRE(j.at("distances").size() == 3);
    CHECK(j["distances"][0].at("a").get<double>() == doctest::Approx(0.1));
    CHECK(j["distances"][0].at("h1_total").get<double>() >
          j["distances"][1].at("h1_total").get<double>());
}

TEST_CASE("config file provides defaults, flags win") {
    const fs::path dir = kBase / "cfg";
    fs::create_directories(dir);
    {
        std::ofstream cfg(dir / "run.json");
        cfg << R"({"dim": 2, "b": 1.0, "cells": 512, "rmax": 12.0, "out_dir": ")"
            << dir.string() << R"("})";
    }
    const auto r = run_cli("groundstate --config " + (dir / "run.json").string() + " --cells 1024",
                           dir);
    REQUIRE(r.code == 0);
    const json j = json::parse(slurp(dir / "ground_state.json"));
    CHECK(j.at("params").at("N").get<int>() == 2);   // from config
    CHECK(j.at("grid").at("M").get<int>() == 1024);  // flag overrode config
}

TEST_CASE("rates fits the blow-up exponents from a coarse run") {
    const fs::path dir = kBase / "rates";
    const auto r = run_cli(
        "rates --dim 2 --b 1 --rmax 10.5 --cells 2048 --a 1.0 --dt0 1e-3 --stride 5 "
        "--blowup-factor 8 --out-dir " +
            dir.string(),
        dir);
    REQUIRE(r.code == 0);
    const json j = json::parse(slurp(dir / "rates.json"));
    CHECK(j.at("p_fit").get<double>() == doctest::Approx(1.0).epsilon(0.15));
    CHECK(j.at("q_fit").get<double>() == doctest::Approx(1.0).epsilon(0.15));
    CHECK_FALSE(j.at("not_blowup").get<bool>());
    CHECK(fs::exists(dir / "trajectory.csv"));
}

TEST_CASE("scan sweeps multipliers in deterministic order") {
    const fs::path dir = kBase / "scan";
    const auto r = run_cli(
        "scan --dim 2 --b 1 --rmax 12 --cells 512 --c-list 0.5,0.8 --tmax 0.1 --threads 2 "
        "--out-dir " +
            dir.string(),
        dir);
    REQUIRE(r.code == 0);
    const json j = json::parse(slurp(dir / "scan.json"));
    REQUIRE(j.at("scan").size() == 2);
    CHECK(j["scan"][0].at("c").get<double>() == doctest::Approx(0.5));
    CHECK(j["scan"][1].at("c").get<double>() == doctest::Approx(0.8));
    CHECK(j["scan"][0].at("verdict").get<std::string>() == "Global-to-t_max");
}
