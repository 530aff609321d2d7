#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "workloop/plants.hpp"

using namespace wl;
using Catch::Approx;

TEST_CASE("inelastic_load: Duffing and linear plants") {
    const PlantModel duf{DuffingInelasticPlant{2.0}};
    const auto sh = PeriodicSignal::simple_harmonic(1.0, 2.0);
    // xdot(0) = 0, xddot(0) = -Omega^2 xhat
    CHECK(inelastic_load(duf, sh, 0.0) == Approx(-4.0));

    // two-harmonic: G(0) = -Omega^2 xhat (1 + 8 rho)
    const double rho = 0.05;
    const PeriodicSignal w(1.0, {0.0, 1.0 - rho, 0.0, rho}, {0.0, 0.0, 0.0, 0.0});
    CHECK(inelastic_load(duf, w, 0.0) == Approx(-1.4));

    // direct substitution: x = cos t, xdot = -sin t; at t = pi/2
    // G = xddot + 2 zeta w0 xdot = 0 + 2(0.1)(1)(-1) = -0.2
    const PlantModel lin{LinearPlant{0.1, 1.0}};
    const auto sh1 = PeriodicSignal::simple_harmonic(1.0, 1.0);
    CHECK(inelastic_load(lin, sh1, std::numbers::pi / 2.0) == Approx(-0.2).margin(1e-12));

    const PlantModel tab{TabulatedPlant{}};
    CHECK_THROWS_AS(inelastic_load(tab, sh, 0.0), UnsupportedPlant);
}

TEST_CASE("elastic_eval: polynomial and tabulated") {
    const auto duf = ElasticityProfile::duffing(1.0, 3.0);
    CHECK(duf.eval(1.0) == Approx(4.0));
    CHECK(duf.eval(0.0) == Approx(0.0));

    // linear family member at beta* = 0: Fs(x) = Omega^2 x
    const double omega = 2.0 * std::numbers::pi;
    const auto lin = ElasticityProfile::linear(omega * omega);
    CHECK(lin.eval(1.0) == Approx(39.478).epsilon(1e-4));

    const auto tab = ElasticityProfile::tabulated({-1.0, 0.0, 1.0}, {-2.0, 0.0, 2.0});
    CHECK(tab.eval(0.5) == Approx(1.0));
    CHECK_THROWS_AS(tab.eval(1.5), OutOfRange);
}

TEST_CASE("tabulated elasticity rejects bad grids") {
    CHECK_THROWS_AS(ElasticityProfile::tabulated({0.0, 0.0, 1.0}, {0.0, 1.0, 2.0}), Error);
    CHECK_THROWS_AS(ElasticityProfile::tabulated({0.0, 1.0}, {0.0}), Error);
}

TEST_CASE("total_load cancels stiffness against inertia at linear resonance") {
    const double zeta = 0.15, w0 = 3.0;
    const PlantModel lin{LinearPlant{zeta, w0}};
    const auto profile = ElasticityProfile::linear(w0 * w0);
    const auto sh = PeriodicSignal::simple_harmonic(0.7, w0);
    for (double t : {0.1, 0.9, 1.7}) {
        const double expected = 2.0 * zeta * w0 * sh.eval(t, 1);
        CHECK(total_load(lin, profile, sh, t) == Approx(expected).margin(1e-12));
    }
}

TEST_CASE("total_load vanishes at t = 0 for any family member") {
    // G(0) = -Omega^2 xhat and Fs(xhat) = Omega^2 xhat
    const double delta = 4.0, omega = 2.0, xhat = 1.0;
    const PlantModel duf{DuffingInelasticPlant{delta}};
    const auto sh = PeriodicSignal::simple_harmonic(xhat, omega);
    for (double beta_star : {-1.0, 0.0, 0.5}) {
        const double beta = beta_star * omega * omega;
        const double alpha = omega * omega - beta * xhat * xhat;
        const auto prof = ElasticityProfile::duffing(alpha, beta);
        CHECK(total_load(duf, prof, sh, 0.0) == Approx(0.0).margin(1e-12));
    }
}

TEST_CASE("closed_form_branches: values and closure") {
    const double omega = 2.0 * std::numbers::pi;
    const PlantModel duf{DuffingInelasticPlant{4.0}};
    const auto sh = PeriodicSignal::simple_harmonic(1.0, omega);
    const auto br = closed_form_branches(duf, sh);
    CHECK(br.upper(0.0) == Approx(4.0 * omega).epsilon(1e-12));
    CHECK(br.lower(0.0) == Approx(-4.0 * omega).epsilon(1e-12));
    // closure at the extrema
    CHECK(br.upper(1.0) == Approx(br.lower(1.0)));
    CHECK(br.upper(1.0) == Approx(-omega * omega));
    CHECK(br.upper(-1.0) == Approx(omega * omega));

    const PlantModel duf2{DuffingInelasticPlant{2.0}};
    const auto sh2 = PeriodicSignal::simple_harmonic(1.0, 2.0);
    const auto br2 = closed_form_branches(duf2, sh2);
    CHECK(br2.upper(0.5) == Approx(-2.0 + 4.0 * std::sqrt(0.75)).epsilon(1e-12));
}

TEST_CASE("closed_form_branches rejects multiharmonic signals") {
    const PlantModel duf{DuffingInelasticPlant{1.0}};
    const PeriodicSignal w(1.0, {0.0, 0.9, 0.0, 0.1}, {0.0, 0.0, 0.0, 0.0});
    CHECK_THROWS_AS(closed_form_branches(duf, w), NotSimpleHarmonic);
}

TEST_CASE("branch/time consistency along the half-cycles") {
    const double delta = 3.0, omega = 1.7, xhat = 0.8;
    const PlantModel duf{DuffingInelasticPlant{delta}};
    const auto sh = PeriodicSignal::simple_harmonic(xhat, omega);
    const auto br = closed_form_branches(duf, sh);
    const double T = sh.period();
    const double scale = omega * omega * xhat + delta * omega * xhat;
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(1e-6, 1.0 - 1e-6);
    for (int i = 0; i < 100; ++i) {
        // falling half (xdot < 0): t in (0, T/2); rising half: t in (T/2, T)
        const double tf = u(rng) * T / 2.0;
        CHECK(std::abs(br.lower(sh.eval(tf)) - inelastic_load(duf, sh, tf)) < 1e-10 * scale);
        const double tr = T / 2.0 + u(rng) * T / 2.0;
        CHECK(std::abs(br.upper(sh.eval(tr)) - inelastic_load(duf, sh, tr)) < 1e-10 * scale);
    }
}

TEST_CASE("linear identity: G +- plus w0^2 x equals F +-") {
    const double zeta = 0.2, w0 = 2.5, omega = 1.4, xhat = 1.1;
    const PlantModel lin{LinearPlant{zeta, w0}};
    const auto profile = ElasticityProfile::linear(w0 * w0);
    const auto sh = PeriodicSignal::simple_harmonic(xhat, omega);
    const auto br = closed_form_branches(lin, sh);
    const double T = sh.period();
    for (int i = 1; i < 40; ++i) {
        const double t = T / 2.0 + i * (T / 2.0) / 40.0;  // rising half
        const double x = sh.eval(t);
        CHECK(br.upper(x) + w0 * w0 * x ==
              Approx(total_load(lin, profile, sh, t)).margin(1e-10));
    }
}
