#include <doctest.h>

#include <cmath>

#include "support/oracles.hpp"
#include "wdw/errors.hpp"
#include "wdw/evolver.hpp"
#include "wdw/observables.hpp"

using namespace wdw;

namespace {

ModelConfig harmonic(double omega0) {
    ModelConfig cfg;
    cfg.B = -0.5 * omega0 * omega0; // V = omega0^2 x^2 / 2
    cfg.C = 0.0;
    cfg.E = 0.0;
    cfg.omega = omega0;
    return cfg;
}

} // namespace

TEST_CASE("constructor validation") {
    const auto grid = build_grid(-2.0, 2.0, -2.0, 2.0, 32, 32);
    ModelConfig cfg;
    EnvironmentParams env;
    CHECK_NOTHROW(WignerEvolver(grid, cfg, env, cfg.period() / 200.0));
    CHECK_THROWS_AS(WignerEvolver(grid, cfg, env, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(WignerEvolver(grid, cfg, env, cfg.period() / 50.0),
                    std::invalid_argument); // exceeds T/100
    env.D = -1.0;
    CHECK_THROWS_AS(WignerEvolver(grid, cfg, env, cfg.period() / 200.0),
                    std::invalid_argument);
}

TEST_CASE("harmonic oracle: covariance rotation and purity conservation") {
    const double omega0 = 2.0;
    const ModelConfig cfg = harmonic(omega0);
    const EnvironmentParams env; // D = gamma = 0
    // Box sized for the widest transient: sigma_p peaks at 0.6 while the
    // momentum mean swings to 0.81, so +-5 keeps the tails many sigma off
    // the boundary band.
    const auto grid = build_grid(-5.0, 5.0, -5.0, 5.0, 256, 256);
    // Unbalanced widths and an off-center start exercise both the moment
    // rotation and the mean transport.
    const auto spec = GaussianSpec::from_widths(0.4, 0.1, 0.30, 0.25);
    auto w = gaussian_wigner(spec, grid, cfg, env);

    const double T0 = 2.0 * M_PI / omega0;
    const double p0 = purity(w);
    const double n_steps = 1000;
    evolve(w, T0, T0 / n_steps, 0);

    // One full period returns every moment to its start; the residual is
    // the second-order splitting phase error, ~(omega0 dt)^2/24 ~ 1e-5.
    const auto c = covariance(w);
    CHECK(c.mean_x == doctest::Approx(0.4).epsilon(1e-4));
    CHECK(c.mean_p == doctest::Approx(0.1).epsilon(1e-4));
    CHECK(c.xx == doctest::Approx(0.09).epsilon(1e-4));
    CHECK(c.pp == doctest::Approx(0.0625).epsilon(1e-4));
    CHECK(c.xp == doctest::Approx(0.0).epsilon(1e-4));
    CHECK(purity(w) == doctest::Approx(p0).epsilon(1e-8));
    CHECK(norm(w) == doctest::Approx(1.0).epsilon(1e-10));

    // Quarter period: the oracle ODE gives the rotated covariance.
    auto w2 = gaussian_wigner(spec, grid, cfg, env);
    const double tq = 0.25 * T0;
    evolve(w2, tq, T0 / n_steps, 0);
    const auto m = oracle::evolve_covariance({0.09, 0.0, 0.0625},
                                             omega0 * omega0, 0.0, 0.0, tq,
                                             4000);
    const auto c2 = covariance(w2);
    CHECK(c2.xx == doctest::Approx(m.xx).epsilon(1e-3));
    CHECK(c2.xp == doctest::Approx(m.xp).epsilon(1e-3));
    CHECK(c2.pp == doctest::Approx(m.pp).epsilon(1e-3));
}

TEST_CASE("inverted harmonic oracle with diffusion") {
    ModelConfig cfg = harmonic(1.0);
    cfg.B = 0.5; // V = -x^2/2, Lyapunov rate 1
    EnvironmentParams env;
    env.D = 1e-3;
    // The contracting direction narrows to ~0.05 by t = 1.5 (the diffusion
    // floor sqrt(D/2) is below the decayed initial width), so the dual grid
    // must reach lam ~ 120; 512 points over +-6 give lam_max = 134.
    const auto grid = build_grid(-6.0, 6.0, -6.0, 6.0, 512, 512);
    const auto spec = GaussianSpec::from_entropy(0, 0, 0.0, 1.0, cfg.hbar);
    auto w = gaussian_wigner(spec, grid, cfg, env);

    const double t = 1.5;
    evolve(w, t, t / 300.0, 0);

    oracle::Moments m{0.05, 0.0, 0.05};
    const auto mt = oracle::evolve_covariance(m, -1.0, 0.0, env.D, t, 4000);
    const auto c = covariance(w);
    CHECK(c.xx == doctest::Approx(mt.xx).epsilon(1e-3));
    CHECK(c.xp == doctest::Approx(mt.xp).epsilon(1e-3));
    CHECK(c.pp == doctest::Approx(mt.pp).epsilon(1e-3));

    const double det = mt.xx * mt.pp - mt.xp * mt.xp;
    CHECK(purity(w) ==
          doctest::Approx(oracle::gaussian_purity(det, cfg.hbar)).epsilon(1e-3));
}

TEST_CASE("unitary evolution is reversible") {
    ModelConfig cfg; // driven double well
    const EnvironmentParams env;
    const auto grid = build_grid(-4.0, 4.0, -4.0, 4.0, 256, 256);
    const auto spec = GaussianSpec::from_entropy(0.0, 0.4, 0.0, 1.0, cfg.hbar);
    const auto w0 = gaussian_wigner(spec, grid, cfg, env);

    const double dt = cfg.period() / 500.0;
    WignerField w = w0;
    for (int i = 0; i < 50; ++i) w = step(w, dt);
    CHECK(w.time == doctest::Approx(50 * dt).epsilon(1e-12));
    for (int i = 0; i < 50; ++i) w = step(w, -dt);
    CHECK(w.time == doctest::Approx(0.0).epsilon(1e-10));

    double peak = 0.0, diff = 0.0;
    for (std::size_t i = 0; i < w.data.values.size(); ++i) {
        peak = std::max(peak, std::abs(w0.data.values[i]));
        diff = std::max(diff,
                        std::abs(w.data.values[i] - w0.data.values[i]));
    }
    CHECK(diff < 1e-10 * peak);
}

TEST_CASE("diffusion makes purity monotone and entropy non-decreasing") {
    ModelConfig cfg;
    EnvironmentParams env;
    env.D = 1e-3;
    // In-well aspect-matched configuration (see the observables driven-run
    // test for the box/resolution sizing).
    const auto grid = build_grid(2.0, 7.0, -6.0, 6.0, 256, 256);
    const auto spec = GaussianSpec::from_entropy(
        std::sqrt(20.0), 0.0, 0.0, std::sqrt(40.0), cfg.hbar);
    auto w = gaussian_wigner(spec, grid, cfg, env);

    std::vector<double> purities{purity(w)};
    evolve(w, cfg.period(), cfg.period() / 1000.0, 50,
           [&](const WignerField& s) { purities.push_back(purity(s)); });
    REQUIRE(purities.size() == 21);
    for (std::size_t i = 1; i < purities.size(); ++i)
        CHECK(purities[i] <= purities[i - 1] + 1e-12);
    CHECK(purities.back() < purities.front()); // strictly dissipative run
}

TEST_CASE("unitary double-well run conserves norm and purity per period") {
    ModelConfig cfg;
    const EnvironmentParams env;
    const auto grid = build_grid(2.0, 7.0, -6.0, 6.0, 256, 256);
    const auto spec = GaussianSpec::from_entropy(
        std::sqrt(20.0), 0.0, 0.0, std::sqrt(40.0), cfg.hbar);
    auto w = gaussian_wigner(spec, grid, cfg, env);

    const double p0 = purity(w);
    const auto health = evolve(w, cfg.period(), cfg.period() / 1000.0, 0);
    CHECK(std::abs(purity(w) - p0) < 1e-6);
    CHECK(health.norm_drift < 1e-8);
    CHECK(health.imag_residue < 1e-12);
}

TEST_CASE("friction contracts momentum and boosts the trace weight") {
    // Pure friction on a free particle: p(t) = p0 exp(-2 gamma t) and the
    // distribution stays normalized (the e^{2 gamma dt} factor compensates
    // the contraction).
    ModelConfig cfg;
    cfg.B = 0.0;
    cfg.C = 0.0;
    cfg.E = 0.0;
    cfg.omega = 2.0;
    EnvironmentParams env;
    env.gamma = 0.2;
    const auto grid = build_grid(-6.0, 6.0, -6.0, 6.0, 128, 128);
    const auto spec = GaussianSpec::from_widths(0.0, 1.0, 0.7, 0.5);
    auto w = gaussian_wigner(spec, grid, cfg, env);

    const double t = 0.8;
    evolve(w, t, t / 100.0, 0);
    const auto c = covariance(w);
    const double shrink = std::exp(-2.0 * env.gamma * t);
    CHECK(norm(w) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(c.mean_p == doctest::Approx(1.0 * shrink).epsilon(1e-4));
    CHECK(std::sqrt(c.pp) == doctest::Approx(0.5 * shrink).epsilon(1e-3));
    // x keeps spreading while p contracts; no momentum diffusion here.
    CHECK(c.xx > 0.49);
}

TEST_CASE("box smaller than the classical support triggers a solver abort") {
    ModelConfig cfg;
    const EnvironmentParams env;
    // A packet released on the barrier top falls to |p| = sqrt(B^2/C) ~ 14
    // at the well bottom, so a +-8 momentum box is physically too small:
    // the falling lump carries percent-level net mass through the boundary
    // band within the first transit and the leak gate must fire.
    const auto grid = build_grid(-8.0, 8.0, -8.0, 8.0, 256, 256);
    const auto spec = GaussianSpec::from_entropy(0, 0, 0.0, 1.0, cfg.hbar);
    auto w = gaussian_wigner(spec, grid, cfg, env);
    CHECK_THROWS_AS(evolve(w, 2.0 * cfg.period(), cfg.period() / 1000.0, 4),
                    SolverAbort);
}

TEST_CASE("evolve bookkeeping") {
    const ModelConfig cfg = harmonic(1.0);
    const EnvironmentParams env;
    const auto grid = build_grid(-9.0, 9.0, -9.0, 9.0, 64, 64);
    const auto spec = GaussianSpec::from_widths(0.5, 0.0, 1.0, 1.0);
    auto w = gaussian_wigner(spec, grid, cfg, env);

    SUBCASE("sampling stride T/50 over 10 periods gives 500 samples") {
        const double T = cfg.period();
        std::size_t calls = 0;
        evolve(w, 10.0 * T, T / 100.0, 2,
               [&](const WignerField&) { ++calls; });
        CHECK(calls == 500);
        CHECK(w.time == doctest::Approx(10.0 * T).epsilon(1e-10));
    }
    SUBCASE("zero-duration evolve is the identity") {
        const auto before = w.data.values;
        std::size_t calls = 0;
        evolve(w, 0.0, cfg.period() / 200.0, 1,
               [&](const WignerField&) { ++calls; });
        CHECK(calls == 0);
        CHECK(w.data.values == before);
    }
    SUBCASE("non-commensurate horizon is rejected") {
        CHECK_THROWS_AS(evolve(w, 0.12345, cfg.period() / 500.0, 1),
                        std::invalid_argument);
    }
    SUBCASE("t_final before state time is rejected") {
        w.time = 5.0;
        CHECK_THROWS_AS(evolve(w, 1.0, cfg.period() / 500.0, 1),
                        std::invalid_argument);
    }
}
