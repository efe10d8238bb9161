#include <doctest.h>

#include <cmath>
#include <random>

#include "wdw/grid.hpp"
#include "wdw/spectral.hpp"

using namespace wdw;

namespace {

RealField random_field(const PhaseSpaceGrid& g, unsigned seed) {
    RealField f(g);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double& v : f.values) v = u(rng);
    return f;
}

} // namespace

TEST_CASE("build_grid rejects bad shapes and bounds") {
    CHECK_THROWS_AS(build_grid(1.0, -1.0, -1.0, 1.0, 32, 32),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_grid(-1.0, 1.0, 1.0, 1.0, 32, 32),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_grid(-1.0, 1.0, -1.0, 1.0, 100, 32),
                    std::invalid_argument); // not a power of two
    CHECK_THROWS_AS(build_grid(-1.0, 1.0, -1.0, 1.0, 32, 8),
                    std::invalid_argument); // below the minimum size
    CHECK_NOTHROW(build_grid(-1.0, 1.0, -1.0, 1.0, 16, 1024));
}

TEST_CASE("grid lattices and dual wavenumbers") {
    const auto g = build_grid(-8.0, 8.0, -4.0, 4.0, 64, 32);
    CHECK(g.dx == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(g.dp == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(g.x.front() == doctest::Approx(-8.0));
    // x_max is the periodic image of x_min, not a sample
    CHECK(g.x.back() == doctest::Approx(8.0 - 0.25));
    CHECK(g.cell_area() == doctest::Approx(0.0625));
    CHECK(g.area() == doctest::Approx(16.0 * 8.0));

    const double dk = 2.0 * M_PI / 16.0;
    CHECK(g.k_x[0] == 0.0);
    CHECK(g.k_x[1] == doctest::Approx(dk).epsilon(1e-14));
    CHECK(g.k_x[63] == doctest::Approx(-dk).epsilon(1e-14));
    CHECK(g.k_x[32] == doctest::Approx(-32.0 * dk).epsilon(1e-14));

    const double dl = 2.0 * M_PI / 8.0;
    CHECK(g.lam_p[5] == doctest::Approx(5.0 * dl).epsilon(1e-14));
    CHECK(g.lam_p[31] == doctest::Approx(-dl).epsilon(1e-14));
}

TEST_CASE("transforms round-trip to 1e-12") {
    const auto g = build_grid(-3.0, 3.0, -5.0, 5.0, 32, 64);
    const RealField f = random_field(g, 7);

    SUBCASE("along p") {
        double resid = 0.0;
        const RealField back = realify(inverse_p(forward_p(f)), &resid);
        CHECK(resid < 1e-12);
        for (std::size_t i = 0; i < f.values.size(); ++i)
            CHECK(back.values[i] == doctest::Approx(f.values[i]).epsilon(1e-12));
    }
    SUBCASE("along x") {
        double resid = 0.0;
        const RealField back = realify(inverse_x(forward_x(f)), &resid);
        CHECK(resid < 1e-12);
        for (std::size_t i = 0; i < f.values.size(); ++i)
            CHECK(back.values[i] == doctest::Approx(f.values[i]).epsilon(1e-12));
    }
}

TEST_CASE("Parseval: unnormalized forward transform scales power by n") {
    const auto g = build_grid(-1.0, 1.0, -1.0, 1.0, 16, 32);
    const RealField f = random_field(g, 11);
    const ComplexField F = forward_p(f);

    double pow_f = 0.0, pow_F = 0.0;
    for (const double v : f.values) pow_f += v * v;
    for (const auto& c : F.values) pow_F += std::norm(c);
    CHECK(pow_F == doctest::Approx(32.0 * pow_f).epsilon(1e-12));
}

TEST_CASE("transforms are linear") {
    const auto g = build_grid(-1.0, 1.0, -1.0, 1.0, 16, 16);
    const RealField a = random_field(g, 1), b = random_field(g, 2);
    RealField combo(g);
    for (std::size_t i = 0; i < combo.values.size(); ++i)
        combo.values[i] = 2.5 * a.values[i] - 0.75 * b.values[i];

    const ComplexField Fa = forward_x(a), Fb = forward_x(b),
                       Fc = forward_x(combo);
    for (std::size_t i = 0; i < Fc.values.size(); ++i) {
        const auto expect = 2.5 * Fa.values[i] - 0.75 * Fb.values[i];
        CHECK(std::abs(Fc.values[i] - expect) < 1e-12);
    }
}

TEST_CASE("spectral_derivative_p is exact on lattice harmonics") {
    const auto g = build_grid(-2.0, 2.0, -6.0, 6.0, 16, 128);
    const double kl = 3.0 * 2.0 * M_PI / 12.0; // third harmonic of the p box
    RealField f(g);
    for (std::size_t i = 0; i < g.n_x; ++i)
        for (std::size_t j = 0; j < g.n_p; ++j)
            f.at(i, j) = (1.0 + 0.25 * g.x[i]) * std::sin(kl * (g.p[j] + 6.0));

    const RealField d1 = spectral_derivative_p(f, 1);
    const RealField d2 = spectral_derivative_p(f, 2);
    for (std::size_t i = 0; i < g.n_x; ++i)
        for (std::size_t j = 0; j < g.n_p; ++j) {
            const double fac = 1.0 + 0.25 * g.x[i];
            CHECK(d1.at(i, j) ==
                  doctest::Approx(fac * kl * std::cos(kl * (g.p[j] + 6.0)))
                      .epsilon(1e-10));
            CHECK(d2.at(i, j) ==
                  doctest::Approx(-fac * kl * kl * std::sin(kl * (g.p[j] + 6.0)))
                      .epsilon(1e-10));
        }
}

TEST_CASE("spectral_derivative_p matches the analytic Gaussian derivative") {
    const auto g = build_grid(-1.0, 1.0, -8.0, 8.0, 16, 256);
    const double s2 = 1.0; // sigma_p^2
    RealField f(g);
    for (std::size_t i = 0; i < g.n_x; ++i)
        for (std::size_t j = 0; j < g.n_p; ++j)
            f.at(i, j) = std::exp(-g.p[j] * g.p[j] / (2.0 * s2));

    const RealField d1 = spectral_derivative_p(f, 1);
    for (std::size_t j = 0; j < g.n_p; ++j) {
        const double expect =
            -(g.p[j] / s2) * std::exp(-g.p[j] * g.p[j] / (2.0 * s2));
        CHECK(d1.at(3, j) == doctest::Approx(expect).epsilon(1e-10));
    }
    CHECK_THROWS_AS(spectral_derivative_p(f, 0), std::invalid_argument);
}

TEST_CASE("engine rejects mismatched grids") {
    const auto g1 = build_grid(-1.0, 1.0, -1.0, 1.0, 16, 16);
    const auto g2 = build_grid(-1.0, 1.0, -1.0, 1.0, 16, 32);
    SpectralEngine eng(g1);
    CHECK_THROWS_AS(eng.load(RealField(g2)), std::invalid_argument);
}
