#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "nlslab/field.hpp"
#include "nlslab/functionals.hpp"
#include "nlslab/grid.hpp"
#include "nlslab/interpolate.hpp"
#include "nlslab/io.hpp"
#include "nlslab/params.hpp"

using namespace nls;

namespace {

// Independent quadrature oracle: adaptive Simpson on [a, b].
double simpson(const std::function<double(double)>& f, double a, double b, double tol,
               int depth = 0) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double left = (m - a) / 6.0 * (fa + 4.0 * f(lm) + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * f(rm) + fb);
    if (depth > 40 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, m, 0.5 * tol, depth + 1) + simpson(f, m, b, 0.5 * tol, depth + 1);
}

// Closed-form stationary profile of the classical 1D case at omega = 1.
double quintic(double r) { return std::pow(3.0, 0.25) * std::sqrt(1.0 / std::cosh(2.0 * r)); }
double quintic_deriv(double r) {
    return -std::pow(3.0, 0.25) * std::sqrt(1.0 / std::cosh(2.0 * r)) * std::tanh(2.0 * r);
}

const double kQuinticMass = std::sqrt(3.0) * M_PI / 2.0; // integral of 2 sqrt(3) sech(2r)

} // namespace

TEST_CASE("sphere measure matches the closed dimensions") {
    CHECK(sphere_measure(1) == doctest::Approx(2.0));
    CHECK(sphere_measure(2) == doctest::Approx(2.0 * M_PI));
    CHECK(sphere_measure(3) == doctest::Approx(4.0 * M_PI));
    CHECK(sphere_measure(4) == doctest::Approx(2.0 * M_PI * M_PI));
}

TEST_CASE("grid weights sum to the ball volume") {
    for (int dim : {1, 2, 3}) {
        auto g = make_grid(dim, 10.0, 256);
        double total = 0.0;
        for (double w : g->weights) total += w;
        const double ball = g->sphere * std::pow(10.0, dim) / dim;
        CHECK(std::abs(total - ball) / ball < 0.01);
    }
}

TEST_CASE("grid nodes stay strictly positive and staggered") {
    auto g = make_grid(2, 5.0, 64);
    CHECK(g->nodes.front() == doctest::Approx(0.5 * g->dr));
    for (double r : g->nodes) CHECK(r > 0.0);
}

TEST_CASE("quadrature oracle agrees with the analytic soliton mass") {
    const double oracle =
        simpson([](double r) { return 2.0 * quintic(r) * quintic(r); }, 0.0, 20.0, 1e-13);
    CHECK(oracle == doctest::Approx(kQuinticMass).epsilon(1e-10));
}

TEST_CASE("mass_sq") {
    auto g = make_grid(1, 15.0, 4096);
    SUBCASE("zero field") { CHECK(mass_sq(zero_field(g)) == 0.0); }
    SUBCASE("closed-form soliton") {
        const RealField psi = sample_field(g, quintic);
        CHECK(mass_sq(psi) == doctest::Approx(kQuinticMass).epsilon(3e-6));
        CHECK(mass_sq(psi) == doctest::Approx(2.7206990).epsilon(1e-5));
    }
    SUBCASE("invariant under the mass-preserving rescale") {
        const RealField psi = sample_field(g, quintic);
        const RealField scaled = l2_scale(psi, 2.0);
        CHECK(mass_sq(scaled) == doctest::Approx(mass_sq(psi)).epsilon(1e-6));
    }
}

TEST_CASE("grad_norm_sq") {
    auto g = make_grid(1, 15.0, 4096);
    SUBCASE("constant field has no interior gradient") {
        RealField c = sample_field(g, [](double) { return 3.7; });
        CHECK(grad_norm_sq(c) == 0.0);
    }
    SUBCASE("closed-form soliton: derivative oracle and stationary value") {
        const RealField psi = sample_field(g, quintic);
        const double oracle = simpson(
            [](double r) { return 2.0 * quintic_deriv(r) * quintic_deriv(r); }, 0.0, 20.0, 1e-13);
        CHECK(oracle == doctest::Approx(kQuinticMass / 2.0).epsilon(1e-9)); // |grad|^2 = mass/sigma
        CHECK(grad_norm_sq(psi) == doctest::Approx(oracle).epsilon(1e-5));
    }
    SUBCASE("rescaling multiplies the gradient by lambda^2") {
        const RealField psi = sample_field(g, quintic);
        const RealField scaled = l2_scale(psi, 2.0);
        CHECK(grad_norm_sq(scaled) == doctest::Approx(4.0 * grad_norm_sq(psi)).epsilon(1e-4));
    }
}

TEST_CASE("potential_integral") {
    auto g = make_grid(1, 15.0, 4096);
    const auto p = critical_params(1, 0.0);
    SUBCASE("zero field") { CHECK(potential_integral(zero_field(g), p) == 0.0); }
    SUBCASE("closed-form soliton value") {
        const RealField psi = sample_field(g, quintic);
        const double oracle =
            simpson([](double r) { return 2.0 * std::pow(quintic(r), 6.0); }, 0.0, 20.0, 1e-13);
        CHECK(oracle == doctest::Approx(3.0 * kQuinticMass / 2.0).epsilon(1e-9));
        CHECK(potential_integral(psi, p) == doctest::Approx(4.0810485).epsilon(1e-5));
    }
    SUBCASE("b = 0 reduces to the plain Lebesgue norm power") {
        auto gauss = sample_field(g, [&](double r) { return std::exp(-0.5 * r * r) + 0.2; });
        double direct = 0.0;
        for (int j = 0; j < g->cells; ++j)
            direct += g->weights[j] * std::pow(gauss.values[j], 6.0);
        CHECK(potential_integral(gauss, p) == doctest::Approx(direct).epsilon(1e-14));
    }
}

TEST_CASE("energy identity wiring") {
    auto g = make_grid(2, 10.0, 512);
    const auto p = critical_params(2, 1.0);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> v(g->cells);
        for (auto& x : v) x = 0.1 + 0.9 * ((rng() >> 11) * 0x1.0p-53);
        RealField f{g, v};
        CHECK(energy(f, p) ==
              doctest::Approx(grad_norm_sq(f) - potential_integral(f, p) / (p.sigma + 1.0))
                  .epsilon(1e-14));
    }
}

TEST_CASE("energy of a chirped profile gains the quadratic moment") {
    // grad(e^{-i a r^2/4} u) picks up (a^2/4) r^2 u^2 and nothing else.
    auto g = make_grid(1, 15.0, 8192);
    const auto p = critical_params(1, 0.0);
    const RealField psi = sample_field(g, quintic);
    const double a = 0.7;
    const ComplexField chirped = sample_complex_field(
        g, [a](double r) { return std::polar(quintic(r), -a * r * r / 4.0); });
    double moment = 0.0;
    for (int j = 0; j < g->cells; ++j)
        moment += g->weights[j] * g->nodes[j] * g->nodes[j] * psi.values[j] * psi.values[j];
    const double lhs = energy(chirped, p);
    const double rhs = energy(psi, p) + a * a / 4.0 * moment;
    CHECK(lhs == doctest::Approx(rhs).epsilon(2e-4));
}

TEST_CASE("weinstein quotient") {
    // The 1e-6 comparisons need the quadrature and interpolation error
    // of the sampled profile below them, hence the fine grid.
    auto g = make_grid(1, 15.0, 32768);
    const auto p = critical_params(1, 0.0);
    const RealField psi = sample_field(g, quintic);
    SUBCASE("closed-form minimum value") {
        CHECK(weinstein_quotient(psi, p) == doctest::Approx(M_PI * M_PI / 4.0).epsilon(1e-6));
    }
    SUBCASE("amplitude invariance is exact") {
        RealField f = psi;
        for (auto& x : f.values) x *= 3.21;
        CHECK(weinstein_quotient(f, p) ==
              doctest::Approx(weinstein_quotient(psi, p)).epsilon(1e-12));
    }
    SUBCASE("scale invariance holds to interpolation error") {
        // Expansion by 1/lambda pushes the tail outward, so the box needs
        // headroom for the clipped part to stay below the comparison.
        auto gw = make_grid(1, 30.0, 65536);
        const RealField wide = sample_field(gw, quintic);
        for (double lam : {0.5, 2.0}) {
            CHECK(weinstein_quotient(l2_scale(wide, lam), p) ==
                  doctest::Approx(weinstein_quotient(wide, p)).epsilon(1e-6));
        }
    }
    SUBCASE("zero field is rejected") {
        CHECK_THROWS_AS((void)weinstein_quotient(zero_field(g), p), std::domain_error);
    }
}

TEST_CASE("l2_scale") {
    auto g = make_grid(2, 12.0, 4096);
    const RealField f = sample_field(g, [](double r) { return std::exp(-r * r / 3.0); });
    SUBCASE("lambda = 1 is the identity") {
        const RealField same = l2_scale(f, 1.0);
        for (int j = 0; j < g->cells; ++j)
            CHECK(same.values[j] == doctest::Approx(f.values[j]).epsilon(1e-13));
    }
    SUBCASE("mass is preserved") {
        // Compression by lambda amplifies the first-cell quadrature error
        // by lambda^2; the finer grid keeps it under the 1e-6 comparison.
        auto gf = make_grid(2, 12.0, 16384);
        const RealField fine = sample_field(gf, [](double r) { return std::exp(-r * r / 3.0); });
        for (double lam : {0.6, 1.7, 2.5}) {
            CHECK(mass_sq(l2_scale(fine, lam)) == doctest::Approx(mass_sq(fine)).epsilon(1e-6));
        }
    }
    SUBCASE("rejects nonpositive lambda") {
        CHECK_THROWS_AS((void)l2_scale(f, 0.0), std::invalid_argument);
    }
}

TEST_CASE("h1 distance") {
    auto g = make_grid(1, 8.0, 512);
    const RealField f = sample_field(g, [](double r) { return std::exp(-r * r); });
    const RealField h = sample_field(g, [](double r) { return std::exp(-2.0 * r * r); });
    SUBCASE("coincident fields") { CHECK(h1_distance_sq(f, f) == 0.0); }
    SUBCASE("distance to zero is the h1 norm") {
        CHECK(h1_distance_sq(f, zero_field(g)) ==
              doctest::Approx(mass_sq(f) + grad_norm_sq(f)).epsilon(1e-14));
    }
    SUBCASE("symmetry") {
        CHECK(h1_distance_sq(f, h) == doctest::Approx(h1_distance_sq(h, f)).epsilon(1e-14));
    }
    SUBCASE("grid mismatch throws") {
        auto g2 = make_grid(1, 8.0, 256);
        CHECK_THROWS_AS((void)h1_distance_sq(f, zero_field(g2)), std::invalid_argument);
    }
}

TEST_CASE("midpoint quadrature converges at second order or better") {
    auto value = [](int cells) {
        auto g = make_grid(2, 12.0, cells);
        return mass_sq(sample_field(g, [](double r) { return std::exp(-r * r / 2.0) * (1.0 + r); }));
    };
    const double v1 = value(512), v2 = value(1024), v4 = value(2048);
    const double d1 = std::abs(v1 - v2), d2 = std::abs(v2 - v4);
    CHECK(d1 / d2 > 3.5);
}

TEST_CASE("monotone cubic interpolation") {
    SUBCASE("reproduces knot values and stays monotone") {
        std::vector<double> x{0.0, 1.0, 2.0, 3.0, 4.0};
        std::vector<double> y{1.0, 0.8, 0.3, 0.1, 0.05};
        MonotoneCubic mc(x, y);
        for (std::size_t i = 0; i < x.size(); ++i) CHECK(mc(x[i]) == doctest::Approx(y[i]));
        double prev = mc(0.0);
        for (double q = 0.05; q <= 4.0; q += 0.05) {
            const double cur = mc(q);
            CHECK(cur <= prev + 1e-12);
            prev = cur;
        }
    }
    SUBCASE("zero beyond the last knot") {
        MonotoneCubic mc({0.0, 1.0, 2.0}, {1.0, 0.5, 0.2});
        CHECK(mc(2.5) == 0.0);
    }
    SUBCASE("commutes with scalar multiples (negative included)") {
        auto g = make_grid(1, 6.0, 128);
        std::vector<double> y(g->cells);
        for (int j = 0; j < g->cells; ++j) y[j] = std::exp(-g->nodes[j]);
        MonotoneCubic base = radial_interpolant(*g, y);
        for (auto& v : y) v *= -2.5;
        MonotoneCubic scaled = radial_interpolant(*g, y);
        for (double q : {0.3, 1.1, 2.7, 5.9})
            CHECK(scaled(q) == doctest::Approx(-2.5 * base(q)).epsilon(1e-13));
    }
}

TEST_CASE("field serialization round-trips bit exactly") {
    auto g = make_grid(2, 7.0, 128);
    const auto p = critical_params(2, 1.0);
    std::mt19937_64 rng(99);
    std::vector<cplx> v(g->cells);
    for (auto& z : v)
        z = cplx{(rng() >> 11) * 0x1.0p-53 - 0.5, (rng() >> 11) * 0x1.0p-53 - 0.5};
    const ComplexField f{g, v};

    const auto loaded = io::parse_field(io::field_json(f, p));
    REQUIRE(loaded.field.values.size() == f.values.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        CHECK(loaded.field.values[j].real() == f.values[j].real());
        CHECK(loaded.field.values[j].imag() == f.values[j].imag());
    }
    CHECK(loaded.params.dim == p.dim);
    CHECK(loaded.params.b == p.b);

    const RealField re = sample_field(g, [](double r) { return std::cos(r); });
    const auto loaded_re = io::parse_field(io::field_json(re, p));
    CHECK(loaded_re.was_real);
    for (int j = 0; j < g->cells; ++j) CHECK(loaded_re.field.values[j].real() == re.values[j]);
}

TEST_CASE("model parameter validation") {
    CHECK_THROWS_AS((void)critical_params(2, 3.0), std::invalid_argument);
    CHECK_THROWS_AS((void)critical_params(1, 1.5), std::invalid_argument);
    CHECK_THROWS_AS((void)critical_params(0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)make_params(1, 0.0, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)make_params(3, 1.0, 2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)make_params(1, 0.0, 2.0, 0.0), std::invalid_argument);
    const auto p = critical_params(3, 1.0);
    CHECK(p.sigma == doctest::Approx(1.0 / 3.0));
    CHECK(p.is_critical());
    CHECK(critical_params(1, 0.0).sigma == doctest::Approx(2.0));
}
