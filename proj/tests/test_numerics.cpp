#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "workloop/numerics.hpp"

using namespace wl;

TEST_CASE("bisect finds bracketed roots") {
    auto lin = [](double x) { return x - 1.0; };
    CHECK(bisect(lin, {0.0, 2.0}) == Catch::Approx(1.0).margin(1e-12));

    auto sq = [](double x) { return x * x - 2.0; };
    CHECK(bisect(sq, {1.0, 2.0}) == Catch::Approx(std::sqrt(2.0)).margin(1e-11));
}

TEST_CASE("bisect rejects brackets without a sign change") {
    auto f = [](double x) { return x * x + 1.0; };
    CHECK_THROWS_AS(bisect(f, {0.0, 1.0}), NoSignChange);
}

TEST_CASE("bisect is deterministic") {
    auto f = [](double x) { return std::cos(x) - x; };
    const double r1 = bisect(f, {0.0, 1.0});
    const double r2 = bisect(f, {0.0, 1.0});
    CHECK(r1 == r2);
}

TEST_CASE("trapezoid rule basics") {
    CHECK(quad_trapezoid([](double) { return 1.0; }, {0.0, 1.0}, 7) ==
          Catch::Approx(1.0).margin(1e-15));
    // exact on affine integrands
    CHECK(quad_trapezoid([](double x) { return x; }, {0.0, 1.0}, 3) ==
          Catch::Approx(0.5).margin(1e-15));
}

TEST_CASE("trapezoid rule is spectrally accurate on periodic integrands") {
    const double tau = 2.0 * std::numbers::pi;
    const double val =
        quad_trapezoid([](double t) { return std::sin(t) * std::sin(t); }, {0.0, tau}, 4096);
    CHECK(std::abs(val - std::numbers::pi) < 1e-12);

    // trig polynomial of moderate degree, full period
    auto f = [](double t) { return 1.0 + std::cos(3 * t) * std::sin(5 * t) + std::cos(7 * t); };
    const double v = quad_trapezoid(f, {0.0, tau}, 256);
    CHECK(std::abs(v - tau) < 1e-12 * tau);
}

TEST_CASE("solve_quadratic") {
    auto r = solve_quadratic(1.0, 0.0, -1.0);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == Catch::Approx(-1.0));
    CHECK(r[1] == Catch::Approx(1.0));

    CHECK(solve_quadratic(1.0, 0.0, 1.0).empty());

    // double root reported once
    auto d = solve_quadratic(1.0, -2.0, 1.0);
    REQUIRE(d.size() == 1);
    CHECK(d[0] == Catch::Approx(1.0));

    CHECK_THROWS_AS(solve_quadratic(0.0, 0.0, 0.0), AllZeroCoefficients);
}

TEST_CASE("solve_quadratic avoids cancellation for disparate roots") {
    // roots 1e-8 and 1e8
    auto r = solve_quadratic(1.0, -(1e8 + 1e-8), 1.0);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == Catch::Approx(1e-8).epsilon(1e-12));
    CHECK(r[1] == Catch::Approx(1e8).epsilon(1e-12));
}
