#include "doctest.h"

#include "opkit/errors.hpp"
#include "opkit/potential.hpp"

#include <cmath>

using namespace opkit;
using namespace opkit::potential;

TEST_CASE("arcsine on a single interval") {
    auto eq = equilibrium_density(make_system({{-1.0, 1.0}}));
    CHECK(density_at_eq(eq, 0.0) == doctest::Approx(1.0 / M_PI).epsilon(1e-14));
    CHECK(density_at_eq(eq, 1.0 / std::sqrt(2.0)) ==
          doctest::Approx(std::sqrt(2.0) / M_PI).epsilon(1e-13));
    CHECK(density_at_eq(eq, 0.999) > 5.0);
    CHECK(std::isfinite(density_at_eq(eq, 0.999)));
    CHECK(total_mass(eq) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(density_at_eq(eq, 1.0), domain_error);
    CHECK_THROWS_AS(density_at_eq(eq, 1.5), domain_error);
}

TEST_CASE("symmetric two-band closed form") {
    const double g = 0.5;
    auto eq = equilibrium_density(make_system({{-1.0, -g}, {g, 1.0}}));
    // Gap root sits at 0 by symmetry.
    CHECK(eq.gap_poly[0] == doctest::Approx(0.0).epsilon(1e-10));
    // omega(x) = |x| / (pi sqrt((1-x^2)(x^2-g^2))).
    for (double x : {0.6, 0.75, 0.9, -0.8}) {
        double pred = std::abs(x) /
                      (M_PI * std::sqrt((1 - x * x) * (x * x - g * g)));
        CHECK(density_at_eq(eq, x) == doctest::Approx(pred).epsilon(1e-10));
        CHECK(density_at_eq(eq, -x) ==
              doctest::Approx(density_at_eq(eq, x)).epsilon(1e-12));
    }
    CHECK(total_mass(eq) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK_THROWS_AS(density_at_eq(eq, 0.0), domain_error);
}

TEST_CASE("asymmetric two-band normalization and gap root") {
    auto sys = make_system({{-1.2, -0.3}, {0.5, 1.7}});
    auto eq = equilibrium_density(sys);
    CHECK(total_mass(eq) == doctest::Approx(1.0).epsilon(1e-8));
    // gap_poly = x + c0 has its root inside the gap.
    double root = -eq.gap_poly[0];
    CHECK(root > -0.3);
    CHECK(root < 0.5);
}

TEST_CASE("three bands") {
    auto sys = make_system({{-2.0, -1.0}, {-0.2, 0.4}, {1.1, 2.5}});
    auto eq = equilibrium_density(sys);
    CHECK(total_mass(eq) == doctest::Approx(1.0).epsilon(1e-8));
    // One gap root per gap, located by sign changes.
    auto q = [&](double x) {
        return (x + eq.gap_poly[1]) * x + eq.gap_poly[0];
    };
    CHECK(q(-1.0) * q(-0.2) < 0.0);
    CHECK(q(0.4) * q(1.1) < 0.0);
}

TEST_CASE("edge constant") {
    auto eq = equilibrium_density(make_system({{-1.0, 1.0}}));
    CHECK(edge_constant(eq, 1.0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(edge_constant(eq, -1.0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(edge_constant(eq, 0.5), domain_error);

    // Numerical limit oracle: sqrt(2) pi sqrt(1-x) omega(x) as x -> 1.
    double x = 1.0 - 1e-10;
    double lim = std::sqrt(2.0) * M_PI * std::sqrt(1.0 - x) * density_at_eq(eq, x);
    CHECK(edge_constant(eq, 1.0) == doctest::Approx(lim).epsilon(1e-5));

    auto eq2 = equilibrium_density(make_system({{-1.0, -0.5}, {0.5, 1.0}}));
    double x2 = 1.0 - 1e-10;
    double lim2 =
        std::sqrt(2.0) * M_PI * std::sqrt(1.0 - x2) * density_at_eq(eq2, x2);
    CHECK(edge_constant(eq2, 1.0) == doctest::Approx(lim2).epsilon(1e-5));
}

TEST_CASE("admissibility validation") {
    CHECK_NOTHROW(make_admissible({0.0, 1.0}));          // T1 = x
    CHECK_NOTHROW(make_admissible({-1.0, 0.0, 2.0}));    // 2x^2 - 1
    CHECK_NOTHROW(make_admissible({-3.0, 0.0, 4.0}));    // 4x^2 - 3
    // x^2 + 1: complex zeros.
    CHECK_THROWS_AS(make_admissible({1.0, 0.0, 1.0}), schema_error);
    // x^2: repeated zero.
    CHECK_THROWS_AS(make_admissible({0.0, 0.0, 1.0}), schema_error);
    // x^2 - 0.25: critical value 1/4 < 1 in modulus.
    CHECK_THROWS_AS(make_admissible({-0.25, 0.0, 1.0}), schema_error);
}

TEST_CASE("inverse image bands") {
    auto t1 = make_admissible({0.0, 1.0});
    auto s1 = inverse_image(t1);
    REQUIRE(s1.bands() == 1);
    CHECK(s1.intervals[0].lo == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(s1.intervals[0].hi == doctest::Approx(1.0).epsilon(1e-12));

    // Chebyshev T2: bands touch at 0.
    auto t2 = make_admissible({-1.0, 0.0, 2.0});
    auto s2 = inverse_image(t2);
    REQUIRE(s2.bands() == 2);
    CHECK(s2.intervals[0].lo == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(s2.intervals[0].hi == doctest::Approx(0.0));
    CHECK(s2.intervals[1].lo == doctest::Approx(0.0));
    CHECK(s2.intervals[1].hi == doctest::Approx(1.0).epsilon(1e-12));

    // Split fixture: (2x^2 - 1 - c)/(1 - c), c = 1/2.
    auto ts = make_admissible({-3.0, 0.0, 4.0});
    auto ss = inverse_image(ts);
    REQUIRE(ss.bands() == 2);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(ss.intervals[0].lo == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(ss.intervals[0].hi == doctest::Approx(-r).epsilon(1e-12));
    CHECK(ss.intervals[1].lo == doctest::Approx(r).epsilon(1e-12));
    CHECK(ss.intervals[1].hi == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("inverse image density consistency") {
    auto t2 = make_admissible({-1.0, 0.0, 2.0});
    // T2 = 2x^2-1 maps onto the full interval; density is arcsine.
    double x = 1.0 / std::sqrt(2.0);
    CHECK(inverse_image_density(t2, x) ==
          doctest::Approx(std::sqrt(2.0) / M_PI).epsilon(1e-12));
    CHECK_THROWS_AS(inverse_image_density(t2, 1.0), domain_error);

    auto t1 = make_admissible({0.0, 1.0});
    auto eq1 = equilibrium_density(inverse_image(t1));
    for (double u = -0.95; u < 1.0; u += 0.1)
        CHECK(inverse_image_density(t1, u) ==
              doctest::Approx(density_at_eq(eq1, u)).epsilon(1e-10));

    auto ts = make_admissible({-3.0, 0.0, 4.0});
    auto eqs = equilibrium_density(inverse_image(ts));
    for (double u = 0.72; u < 0.999; u += 0.01)
        CHECK(inverse_image_density(ts, u) ==
              doctest::Approx(density_at_eq(eqs, u)).epsilon(1e-8));
}

TEST_CASE("T2 derivative identity at the edge") {
    auto ts = make_admissible({-1.0, 0.0, 2.0});
    auto eq = equilibrium_density(make_system({{-1.0, 1.0}}));
    // |T2'(1)| = 4 = N^2 M^2 with N=2, M computed on the image interval.
    double M = edge_constant(eq, 1.0);
    CHECK(std::abs(ts.deriv(1.0)) == doctest::Approx(4.0 * M * M).epsilon(1e-10));
}

TEST_CASE("pushforward identity") {
    auto t2 = make_admissible({-1.0, 0.0, 2.0});
    CHECK(pushforward_check(t2, [](double) { return 1.0; }) < 1e-10);
    CHECK(pushforward_check(t2, [](double u) { return u * u; }) < 1e-10);
    auto ts = make_admissible({-3.0, 0.0, 4.0});
    CHECK(pushforward_check(ts, [](double u) { return u * u * u - 2 * u; }) < 1e-10);
    // |u| weight against a polynomial.
    CHECK(pushforward_check(ts, [](double u) {
              return std::abs(u) * (1.0 + u * u);
          }) < 1e-8);
}
