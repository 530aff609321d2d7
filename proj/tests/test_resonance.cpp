#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "workloop/duffing_opt.hpp"
#include "workloop/loop.hpp"
#include "workloop/plants.hpp"
#include "workloop/resonance.hpp"

using namespace wl;
using Catch::Approx;

namespace {

WorkLoop duffing_inelastic_loop(double delta, double omega, double xhat,
                                int grid = 513) {
    const PlantModel plant{DuffingInelasticPlant{delta}};
    const auto sig = PeriodicSignal::simple_harmonic(xhat, omega);
    return build_loop(sig, [&](double t) { return inelastic_load(plant, sig, t); },
                      grid, BranchKind::InelasticLoad);
}

}  // namespace

TEST_CASE("check_time_domain: linear system at and off resonance") {
    const double zeta = 0.1, w0 = 1.0;
    const PlantModel plant{LinearPlant{zeta, w0}};
    const auto prof = ElasticityProfile::linear(w0 * w0);

    const auto at = PeriodicSignal::simple_harmonic(1.0, w0);
    CHECK(check_time_domain(at, [&](double t) { return total_load(plant, prof, at, t); })
              .is_resonant);

    const auto off = PeriodicSignal::simple_harmonic(1.0, 0.5 * w0);
    const auto chk =
        check_time_domain(off, [&](double t) { return total_load(plant, prof, off, t); });
    CHECK_FALSE(chk.is_resonant);
    CHECK(chk.worst_power < 0.0);
}

TEST_CASE("check_time_domain: Duffing at its energy-resonant frequency") {
    // alpha = 1, beta = 3, xhat = 1 -> omega_e = 2
    const PlantModel plant{DuffingInelasticPlant{2.0}};
    const auto prof = ElasticityProfile::duffing(1.0, 3.0);
    const auto sig = PeriodicSignal::simple_harmonic(1.0, 2.0);
    CHECK(check_time_domain(sig, [&](double t) { return total_load(plant, prof, sig, t); })
              .is_resonant);
}

TEST_CASE("check_bounds: family members inside and outside the bound") {
    const double delta = 4.0, omega = 2.0 * std::numbers::pi, xhat = 1.0;
    const auto loop = duffing_inelastic_loop(delta, omega, xhat);
    const double crit = beta_star_crit(delta, omega, xhat);

    const auto inside = optimal_family(delta, omega, xhat, 0.0);
    const auto rep_in = check_bounds(loop, inside.elasticity());
    CHECK(rep_in.is_resonant);
    CHECK(rep_in.margin > 0.0);
    CHECK(rep_in.equality_residual_max_x < 1e-9 * loop.load_scale());
    CHECK(rep_in.equality_residual_min_x < 1e-9 * loop.load_scale());

    const auto outside = optimal_family(delta, omega, xhat, 1.5 * crit);
    const auto rep_out = check_bounds(loop, outside.elasticity());
    CHECK_FALSE(rep_out.is_resonant);
    CHECK(rep_out.margin < 0.0);
    CHECK(std::abs(rep_out.violation_x) < xhat);  // interior violation
    CHECK(std::abs(rep_out.violation_x) > 0.0);
}

TEST_CASE("check_bounds: zero elasticity is never resonant against a dissipative loop") {
    const auto loop = duffing_inelastic_loop(2.0, 2.0, 1.0);
    const auto zero = ElasticityProfile::polynomial({0.0});
    CHECK_FALSE(check_bounds(loop, zero).is_resonant);
}

TEST_CASE("check_bounds: tabulated profile must span the loop") {
    const auto loop = duffing_inelastic_loop(2.0, 2.0, 1.0);
    const auto narrow = ElasticityProfile::tabulated({-0.5, 0.5}, {-2.0, 2.0});
    CHECK_THROWS_AS(check_bounds(loop, narrow), GridMismatch);
}

TEST_CASE("time-domain and bound checks agree across the family") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> ud(0.5, 4.0);
    for (int k = 0; k < 8; ++k) {
        const double delta = ud(rng), omega = ud(rng), xhat = 0.25 * ud(rng);
        const auto loop = duffing_inelastic_loop(delta, omega, xhat);
        const double crit = beta_star_crit(delta, omega, xhat);
        const PlantModel plant{DuffingInelasticPlant{delta}};
        const auto sig = PeriodicSignal::simple_harmonic(xhat, omega);
        for (double f : {-1.8, -0.9, -0.4, 0.0, 0.4, 0.9, 1.8}) {
            const auto design = optimal_family(delta, omega, xhat, f * crit);
            const auto prof = design.elasticity();
            const bool by_bounds = check_bounds(loop, prof).is_resonant;
            const bool by_time =
                check_time_domain(sig, [&](double t) { return total_load(plant, prof, sig, t); })
                    .is_resonant;
            CHECK(by_bounds == by_time);
        }
    }
}

TEST_CASE("one_way_drive: upper side zeroes the rising branch") {
    const double delta = 4.0, omega = 2.0 * std::numbers::pi, xhat = 1.0;
    const auto loop = duffing_inelastic_loop(delta, omega, xhat);
    const auto ow = one_way_drive(loop, DriveSide::Upper);
    const double scale = loop.load_scale();

    for (std::size_t i = 0; i < ow.total_loop.x_grid.size(); ++i) {
        CHECK(std::abs(ow.total_loop.upper[i]) < 1e-12 * scale);
        CHECK(ow.total_loop.lower[i] <= 1e-12 * scale);  // single-signed
        // F- = -(G+ - G-) = -2 delta Omega sqrt(xhat^2 - x^2)
        const double x = ow.total_loop.x_grid[i];
        const double expected =
            -2.0 * delta * omega * std::sqrt(std::max(0.0, xhat * xhat - x * x));
        CHECK(ow.total_loop.lower[i] == Approx(expected).margin(2e-4 * scale));
    }
    CHECK(ow.duty_cycle == Approx(0.5).margin(0.01));

    // extremal member of the resonant family
    const auto rep = check_bounds(loop, ow.profile);
    CHECK(rep.is_resonant);
}

TEST_CASE("one_way_drive: lower side and unidirectionality") {
    const auto loop = duffing_inelastic_loop(2.0, 2.0, 1.0);
    const auto ow = one_way_drive(loop, DriveSide::Lower);
    for (std::size_t i = 0; i < ow.total_loop.x_grid.size(); ++i) {
        CHECK(std::abs(ow.total_loop.lower[i]) < 1e-12 * loop.load_scale());
        CHECK(ow.total_loop.upper[i] >= -1e-12 * loop.load_scale());
    }
    CHECK(ow.duty_cycle == Approx(0.5).margin(0.01));
}

TEST_CASE("one_way_drive: zero-area loop gives zero load and zero duty") {
    // constant-load loop built from a trajectory: G+ = G- pointwise
    const auto sig = PeriodicSignal::simple_harmonic(1.0, 1.0);
    const auto loop = build_loop(sig, [&](double t) { return 2.0 * sig.eval(t); }, 129,
                                 BranchKind::InelasticLoad);
    const auto ow = one_way_drive(loop, DriveSide::Upper);
    CHECK(ow.duty_cycle == Approx(0.0).margin(1e-6));
    CHECK(loop_area(ow.total_loop) == Approx(0.0).margin(1e-9));
}

TEST_CASE("resonant states collapse the power metrics") {
    const double delta = 2.0, omega = 2.0, xhat = 1.0;
    const PlantModel plant{DuffingInelasticPlant{delta}};
    const auto sig = PeriodicSignal::simple_harmonic(xhat, omega);
    const auto prof = ElasticityProfile::duffing(1.0, 3.0);  // beta* = 0.75 < crit = 2
    const auto m = power_metrics(
        sig, [&](double t) { return total_load(plant, prof, sig, t); }, 8192);
    CHECK(m.p_abs == Approx(m.p_net).epsilon(1e-9));
    CHECK(m.p_pos == Approx(m.p_net).epsilon(1e-9));
}
