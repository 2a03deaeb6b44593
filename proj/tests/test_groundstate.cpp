#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "nlslab/functionals.hpp"
#include "nlslab/groundstate.hpp"

using namespace nls;

namespace {

double quintic(double r) { return std::pow(3.0, 0.25) * std::sqrt(1.0 / std::cosh(2.0 * r)); }
const double kAlphaTrue = std::pow(3.0, 0.25);
const double kQuinticMass = std::sqrt(3.0) * M_PI / 2.0;

} // namespace

TEST_CASE("stationary residual") {
    const auto p = critical_params(1, 0.0);
    SUBCASE("zero field solves trivially") {
        auto g = make_grid(1, 15.0, 1024);
        CHECK(stationary_residual(zero_field(g), p) == 0.0);
    }
    SUBCASE("closed-form samples on a fine grid") {
        // Interior truncation is O(dr^2); the Dirichlet ghost clash at
        // r_max needs the closed form to have decayed well below it.
        auto g = make_grid(1, 30.0, 65536);
        CHECK(stationary_residual(sample_field(g, quintic), p) < 1e-6);
    }
    SUBCASE("a Gaussian is visibly not a solution") {
        auto g = make_grid(1, 15.0, 2048);
        const RealField gauss = sample_field(g, [](double r) { return std::exp(-r * r); });
        CHECK(stationary_residual(gauss, p) > 0.1);
    }
}

TEST_CASE("shot classification brackets the closed-form amplitude") {
    const auto p = critical_params(1, 0.0);
    CHECK(shoot(p, 0.01, 20.0) == ShotClass::Diverges);
    CHECK(shoot(p, 10.0 * kAlphaTrue, 20.0) == ShotClass::CrossesZero);
    // The true amplitude separates the two behaviors at 1-ulp resolution;
    // tiny offsets classify deterministically on either side.
    CHECK(shoot(p, kAlphaTrue * (1.0 - 1e-6), 20.0) == ShotClass::Diverges);
    CHECK(shoot(p, kAlphaTrue * (1.0 + 1e-6), 20.0) == ShotClass::CrossesZero);
    CHECK_THROWS_AS((void)shoot(p, -1.0, 20.0), std::invalid_argument);
}

TEST_CASE("find_ground_state reproduces the closed form") {
    const auto p = critical_params(1, 0.0);
    auto g = make_grid(1, 15.0, 4096);
    const GroundState psi = find_ground_state(p, g);

    CHECK(psi.alpha == doctest::Approx(1.3160740).epsilon(1e-6));
    CHECK(std::abs(psi.alpha - kAlphaTrue) < 1e-8);
    CHECK(psi.mass_sq == doctest::Approx(2.7206990).epsilon(4e-5));
    CHECK(psi.mass_sq == doctest::Approx(kQuinticMass).epsilon(4e-5));
    CHECK(psi.residual < 1e-6);
    CHECK_FALSE(psi.multiple_basins);

    double max_err = 0.0;
    for (int j = 0; j < g->cells; ++j)
        max_err = std::max(max_err, std::abs(psi.profile.values[j] - quintic(g->nodes[j])));
    CHECK(max_err < 1e-5);
}

TEST_CASE("profiles are positive and radially non-increasing") {
    for (auto [N, b] : {std::pair{1, 0.5}, {2, 1.0}, {3, 1.0}}) {
        const auto p = critical_params(N, b);
        const GroundState psi = find_ground_state(p, make_grid(N, 18.0, 4096));
        double prev = psi.profile.values[0];
        for (double v : psi.profile.values) {
            CHECK(v > 0.0);
            CHECK(v <= prev + 1e-10 * psi.alpha);
            prev = v;
        }
        CHECK(psi.residual < 1e-6);
    }
}

TEST_CASE("re-solving at another frequency matches the branch map") {
    const auto p1 = critical_params(2, 1.0);
    const GroundState u1 = find_ground_state(p1, make_grid(2, 20.0, 8192));

    const auto p4 = critical_params(2, 1.0, 4.0);
    auto g4 = make_grid(2, 5.0, 8192);
    const GroundState u4 = find_ground_state(p4, g4);
    const GroundState mapped = branch(u1, p1, 4.0, g4);

    const double rel_h1 = std::sqrt(h1_distance_sq(u4.profile, mapped.profile) /
                                    (mass_sq(u4.profile) + grad_norm_sq(u4.profile)));
    CHECK(rel_h1 < 1e-3);
}

TEST_CASE("branch map") {
    const auto p = critical_params(2, 1.0);
    const GroundState u1 = find_ground_state(p, make_grid(2, 20.0, 4096));
    SUBCASE("omega = 1 is the identity") {
        const GroundState same = branch(u1, p, 1.0);
        for (int j = 0; j < 4096; j += 97)
            CHECK(same.profile.values[j] == doctest::Approx(u1.profile.values[j]).epsilon(1e-12));
    }
    SUBCASE("mass is preserved along the branch") {
        for (double w : {0.5, 2.0}) {
            const GroundState uw = branch(u1, p, w, make_grid(2, 20.0 / w, 4096));
            CHECK(uw.mass_sq == doctest::Approx(u1.mass_sq).epsilon(1e-6));
        }
    }
    SUBCASE("branch exponent equals N/2 at the mass-invariant power") {
        for (auto [N, b] : {std::pair{1, 0.5}, {2, 1.0}, {3, 1.0}}) {
            const auto q = critical_params(N, b);
            CHECK((2.0 - q.b) / (2.0 * q.sigma) == doctest::Approx(N / 2.0).epsilon(1e-14));
        }
    }
}

TEST_CASE("minimization report") {
    SUBCASE("classical closed-form constants") {
        const auto p = critical_params(1, 0.0);
        const auto rep = minimization_report(p, make_grid(1, 15.0, 4096));
        CHECK(rep.best_constant == doctest::Approx(0.4052848).epsilon(3e-5));
        CHECK(rep.best_constant == doctest::Approx(4.0 / (M_PI * M_PI)).epsilon(3e-5));
        CHECK(rep.critical_mass == doctest::Approx(1.6494542).epsilon(2e-5));
        CHECK(rep.j_at_psi * rep.best_constant == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(rep.m == rep.j_at_psi);
    }
    SUBCASE("internal consistency away from the classical point") {
        const auto p = critical_params(2, 1.0);
        auto g = make_grid(2, 18.0, 32768);
        const GroundState psi = find_ground_state(p, g);
        const auto rep = minimization_report(psi, p);
        CHECK(rep.best_constant * rep.m == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(rep.j_at_psi * (p.sigma + 1.0) ==
              doctest::Approx(std::pow(rep.critical_mass, 2.0 * p.sigma)).epsilon(1e-6));
        CHECK(std::abs(psi.energy) < 1e-6 * psi.grad_norm_sq);
    }
    SUBCASE("rejects off-critical parameters") {
        const auto p = make_params(2, 1.0, 0.4, 1.0);
        CHECK_THROWS_AS((void)minimization_report(p, make_grid(2, 18.0, 512)),
                        std::invalid_argument);
    }
}

TEST_CASE("stationary identities as a solver-independent check") {
    SUBCASE("closed-form samples on a fine grid") {
        const auto p = critical_params(1, 0.0);
        auto g = make_grid(1, 15.0, 131072);
        const GroundState gs = ground_state_from_profile(sample_field(g, quintic), p);
        const auto d = pohozaev_check(gs, p);
        CHECK(d.energy_defect < 1e-8);
        CHECK(d.ratio_defect < 1e-8);
    }
    SUBCASE("a Gaussian non-solution has order-one defects") {
        const auto p = critical_params(1, 0.0);
        auto g = make_grid(1, 15.0, 4096);
        const GroundState gs =
            ground_state_from_profile(sample_field(g, [](double r) { return std::exp(-r * r); }), p);
        const auto d = pohozaev_check(gs, p);
        CHECK(d.ratio_defect > 0.1);
    }
    SUBCASE("defects are invariant under the branch rescaling") {
        const auto p = critical_params(2, 1.0);
        const GroundState u1 = find_ground_state(p, make_grid(2, 24.0, 8192));
        const auto d1 = pohozaev_check(u1, p);
        GroundState u2 = branch(u1, p, 2.0, make_grid(2, 12.0, 8192));
        const auto d2 = pohozaev_check(u2, p);
        CHECK(d2.energy_defect == doctest::Approx(d1.energy_defect).epsilon(0.3));
        CHECK(d2.ratio_defect == doctest::Approx(d1.ratio_defect).epsilon(0.3));
    }
}

TEST_CASE("interpolation inequality holds on random trials") {
    const auto p = critical_params(2, 1.0);
    auto g = make_grid(2, 18.0, 4096);
    const GroundState psi = find_ground_state(p, g);
    const auto rep = minimization_report(psi, p);

    SUBCASE("the ground state attains equality") {
        const double j_psi = weinstein_quotient(psi.profile, p);
        CHECK(j_psi * rep.best_constant == doctest::Approx(1.0).epsilon(1e-5));
    }
    SUBCASE("1000 seeded trials produce no violations") {
        CHECK(verify_interpolation(rep, p, g, 1000, 20240811) == 0);
    }
    SUBCASE("trial fields are never zero and have larger quotient") {
        std::mt19937_64 rng(31337);
        for (int t = 0; t < 50; ++t) {
            const RealField u = random_trial_field(g, rng);
            CHECK(mass_sq(u) > 0.0);
            CHECK(weinstein_quotient(u, p) > rep.m * (1.0 - 1e-9));
        }
    }
}

TEST_CASE("critical mass converges at second order under refinement") {
    const auto p = critical_params(2, 1.0);
    auto cmass = [&](int cells) {
        return minimization_report(p, make_grid(2, 18.0, cells)).critical_mass;
    };
    const double c1 = cmass(1024), c2 = cmass(2048), c4 = cmass(4096);
    CHECK(std::abs(c1 - c2) / std::abs(c2 - c4) > 3.0);
}

TEST_CASE("solver failure paths") {
    const auto p = critical_params(2, 1.0);
    SUBCASE("grid dimension mismatch") {
        CHECK_THROWS_AS((void)find_ground_state(p, make_grid(3, 18.0, 512)),
                        std::invalid_argument);
    }
    SUBCASE("bad bracket") {
        CHECK_THROWS_AS((void)find_ground_state(p, make_grid(2, 18.0, 512), {5.0, 1.0}),
                        std::invalid_argument);
    }
    SUBCASE("zero bisection budget reports no convergence") {
        CHECK_THROWS_AS((void)find_ground_state(p, make_grid(2, 18.0, 512), {0.1, 10.0}, 1e-12, 0),
                        SolverError);
    }
}
