#include <doctest.h>

#include <cmath>

#include "wdw/observables.hpp"
#include "wdw/state.hpp"

using namespace wdw;

TEST_CASE("GaussianSpec constructors") {
    const ModelConfig cfg;

    SUBCASE("from_entropy fixes the width product") {
        const auto pure = GaussianSpec::from_entropy(0.2, -0.1, 0.0, 1.0, cfg.hbar);
        CHECK(pure.product() == doctest::Approx(0.05).epsilon(1e-14));
        CHECK(pure.sigma_x == doctest::Approx(pure.sigma_p).epsilon(1e-14));

        const auto mixed = GaussianSpec::from_entropy(0, 0, std::log(2.0), 2.0, cfg.hbar);
        CHECK(mixed.product() == doctest::Approx(0.1).epsilon(1e-13));
        CHECK(mixed.sigma_p / mixed.sigma_x == doctest::Approx(2.0).epsilon(1e-13));
    }
    SUBCASE("invalid specs") {
        CHECK_THROWS_AS(GaussianSpec::from_entropy(0, 0, -0.5, 1.0, cfg.hbar),
                        std::invalid_argument);
        CHECK_THROWS_AS(GaussianSpec::from_entropy(0, 0, 1.0, 0.0, cfg.hbar),
                        std::invalid_argument);
        CHECK_THROWS_AS(GaussianSpec::from_widths(0, 0, -1.0, 1.0),
                        std::invalid_argument);
    }
}

TEST_CASE("gaussian_wigner: normalization, purity, moments") {
    const ModelConfig cfg;
    const EnvironmentParams env;
    // The mixed state below has sigma ~ 0.32; +-3 keeps its tail under the
    // 1e-10 construction gate at the outermost checked rows.
    const auto grid = build_grid(-3.0, 3.0, -3.0, 3.0, 128, 128);

    SUBCASE("pure state") {
        const auto spec = GaussianSpec::from_entropy(0.3, -0.2, 0.0, 1.0, cfg.hbar);
        const auto w = gaussian_wigner(spec, grid, cfg, env);
        CHECK(norm(w) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(purity(w) == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(linear_entropy(w) == doctest::Approx(0.0).epsilon(1e-6));

        const auto c = covariance(w);
        CHECK(c.mean_x == doctest::Approx(0.3).epsilon(1e-9));
        CHECK(c.mean_p == doctest::Approx(-0.2).epsilon(1e-9));
        CHECK(c.xx == doctest::Approx(spec.sigma_x * spec.sigma_x).epsilon(1e-6));
        CHECK(c.pp == doctest::Approx(spec.sigma_p * spec.sigma_p).epsilon(1e-6));
        CHECK(c.xp == doctest::Approx(0.0).epsilon(1e-9));
    }
    SUBCASE("H0 = ln 2 gives purity 1/2") {
        const auto spec =
            GaussianSpec::from_entropy(0, 0, std::log(2.0), 1.0, cfg.hbar);
        const auto w = gaussian_wigner(spec, grid, cfg, env);
        CHECK(purity(w) == doctest::Approx(0.5).epsilon(1e-4));
        CHECK(linear_entropy(w) ==
              doctest::Approx(std::log(2.0)).epsilon(1e-4));
    }
}

TEST_CASE("pure-state 1/20 contour encloses the documented area") {
    // For a symmetric pure Gaussian the contour W = max/20 bounds the area
    // 2 pi sigma_x sigma_p ln 20 = pi ln(20) hbar, about 9.4 hbar.
    const ModelConfig cfg;
    const auto grid = build_grid(-2.0, 2.0, -2.0, 2.0, 512, 512);
    const auto spec = GaussianSpec::from_entropy(0, 0, 0.0, 1.0, cfg.hbar);
    const auto w = gaussian_wigner(spec, grid, cfg, {});

    double peak = 0.0;
    for (double v : w.data.values) peak = std::max(peak, v);
    std::size_t inside = 0;
    for (double v : w.data.values)
        if (v >= peak / 20.0) ++inside;
    const double area = static_cast<double>(inside) * grid.cell_area();

    const double expect = M_PI * std::log(20.0) * cfg.hbar;
    CHECK(expect / cfg.hbar == doctest::Approx(9.41).epsilon(2e-3));
    CHECK(area == doctest::Approx(expect).epsilon(0.02));
}

TEST_CASE("gaussian_wigner rejects bad inputs") {
    const ModelConfig cfg;
    const auto grid = build_grid(-2.0, 2.0, -2.0, 2.0, 64, 64);

    // Sub-Heisenberg widths
    CHECK_THROWS_AS(
        gaussian_wigner(GaussianSpec::from_widths(0, 0, 0.1, 0.1), grid, cfg, {}),
        std::invalid_argument);
    // State leaking off the grid
    CHECK_THROWS_AS(
        gaussian_wigner(GaussianSpec::from_widths(0, 0, 1.5, 1.5), grid, cfg, {}),
        std::invalid_argument);
    // Center outside the box
    CHECK_THROWS_AS(
        gaussian_wigner(GaussianSpec::from_entropy(5.0, 0, 0, 1, cfg.hbar),
                        grid, cfg, {}),
        std::invalid_argument);
}

TEST_CASE("superposition_wigner builds a normalized pure cat state") {
    const ModelConfig cfg;
    const auto grid = build_grid(-4.0, 4.0, -4.0, 4.0, 256, 512);
    const double sx = std::sqrt(0.5 * cfg.hbar); // symmetric pure widths
    const auto a = GaussianSpec::from_widths(-1.0, 0.0, sx, sx);
    const auto b = GaussianSpec::from_widths(1.0, 0.0, sx, sx);
    const auto w = superposition_wigner(a, b, grid, cfg, {});

    CHECK(norm(w) == doctest::Approx(1.0).epsilon(1e-12));
    // A coherent superposition of two pure lumps is itself pure.
    CHECK(purity(w) == doctest::Approx(1.0).epsilon(1e-6));

    // Interference fringes must go negative somewhere.
    double min_v = 1e300;
    for (double v : w.data.values) min_v = std::min(min_v, v);
    CHECK(min_v < -0.1);

    SUBCASE("mixture of the same lumps has purity 1/2, no fringes") {
        auto mix = gaussian_wigner(a, grid, cfg, {});
        const auto wb = gaussian_wigner(b, grid, cfg, {});
        for (std::size_t i = 0; i < mix.data.values.size(); ++i)
            mix.data.values[i] =
                0.5 * (mix.data.values[i] + wb.data.values[i]);
        CHECK(purity(mix) == doctest::Approx(0.5).epsilon(1e-3));
    }
}

TEST_CASE("superposition_wigner validates its lumps") {
    const ModelConfig cfg;
    const auto grid = build_grid(-4.0, 4.0, -4.0, 4.0, 256, 512);
    const double sx = std::sqrt(0.5 * cfg.hbar);
    const auto good = GaussianSpec::from_widths(-1.0, 0.0, sx, sx);

    // Mixed-state lumps are not a valid pure superposition.
    CHECK_THROWS_AS(superposition_wigner(
                        good, GaussianSpec::from_widths(1.0, 0.0, 2 * sx, 2 * sx),
                        grid, cfg, {}),
                    std::invalid_argument);
    // Momentum centers must agree.
    CHECK_THROWS_AS(superposition_wigner(
                        good, GaussianSpec::from_widths(1.0, 0.5, sx, sx),
                        grid, cfg, {}),
                    std::invalid_argument);
}

TEST_CASE("boundary_mass_ratio tracks net mass in the edge band") {
    const auto grid = build_grid(-2.0, 2.0, -2.0, 2.0, 64, 64);
    RealField f(grid);
    f.at(32, 32) = 1.0;
    CHECK(boundary_mass_ratio(f) == 0.0);
    f.at(0, 32) = 0.01;
    CHECK(boundary_mass_ratio(f) ==
          doctest::Approx(0.01 / 1.01).epsilon(1e-14));
    // Sign-alternating edge content (spectral ringing) cancels in the net.
    f.at(1, 32) = -0.01;
    CHECK(boundary_mass_ratio(f) == 0.0);
    // A transported lump does not.
    f.at(33, 63) = 0.5;
    CHECK(boundary_mass_ratio(f) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}
