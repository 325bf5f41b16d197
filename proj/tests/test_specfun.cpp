#include "doctest.h"

#include "opkit/errors.hpp"
#include "opkit/specfun.hpp"

#include <cmath>
#include <vector>

using namespace opkit;
using namespace opkit::specfun;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Independent long-double ascending-series oracle for J_nu, usable for
// moderate arguments.  Deliberately shares no code with the library path.
long double oracle_bessel(long double nu, long double x) {
    long double term = powl(x / 2.0L, nu) / expl(lgammal(nu + 1.0L));
    long double sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= -(x * x / 4.0L) / (k * (nu + k));
        sum += term;
        if (fabsl(term) < 1e-25L * fabsl(sum)) break;
    }
    return sum;
}

long double oracle_bessel_deriv(long double nu, long double x) {
    const long double h = 1e-7L;
    return (oracle_bessel(nu, x + h) - oracle_bessel(nu, x - h)) / (2.0L * h);
}

double sinc_kernel(double a, double b) {
    if (a == b) return 1.0 / kPi;
    return std::sin(a - b) / (kPi * (a - b));
}

} // namespace

TEST_CASE("gamma_fn basic values") {
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
    // Sweep against lgamma.
    for (double x = 1e-3; x < 50.0; x *= 1.7) {
        double ref = std::exp(std::lgamma(x));
        CHECK(gamma_fn(x) == doctest::Approx(ref).epsilon(1e-13));
    }
    CHECK_THROWS_AS(gamma_fn(0.0), domain_error);
    CHECK_THROWS_AS(gamma_fn(-1.5), domain_error);
}

TEST_CASE("bessel_j series values") {
    CHECK(bessel_j(0.0, 0.0) == doctest::Approx(1.0));
    // Half-integer closed form: J_{1/2}(x) = sqrt(2/(pi x)) sin x.
    const double x = 1.3;
    const double ref = std::sqrt(2.0 / (kPi * x)) * std::sin(x);
    CHECK(bessel_j(0.5, x) == doctest::Approx(ref).epsilon(1e-13));
    CHECK((double)oracle_bessel(0.5L, 1.3L) == doctest::Approx(ref).epsilon(1e-13));
    CHECK_THROWS_AS(bessel_j(-1.5, 1.0), domain_error);
}

TEST_CASE("bessel_j matches the oracle across regimes") {
    for (double nu : {-0.75, -0.25, 0.0, 0.5, 1.0, 1.75, 2.5}) {
        for (double x : {0.1, 1.0, 5.0, 11.9, 12.1, 20.0}) {
            // The long-double series sheds roughly e^x of cancellation.
            double tol = x < 13.0 ? 5e-10 : 3e-8;
            double ref = (double)oracle_bessel((long double)nu, (long double)x);
            CHECK(bessel_j(nu, x) == doctest::Approx(ref).epsilon(tol));
        }
    }
}

TEST_CASE("bessel_j large arguments") {
    // Library oracle for nonnegative orders.
    for (double nu : {0.0, 0.5, 1.0, 1.75, 2.5})
        for (double x : {15.0, 50.0, 300.0})
            CHECK(bessel_j(nu, x) ==
                  doctest::Approx(std::cyl_bessel_j(nu, x)).epsilon(1e-10));
    // Negative orders through the reflection formula
    //   J_{-m}(x) = J_m(x) cos(m pi) - Y_m(x) sin(m pi).
    for (double m : {0.75, 0.25})
        for (double x : {15.0, 50.0, 300.0}) {
            double ref = std::cyl_bessel_j(m, x) * std::cos(m * kPi) -
                         std::cyl_neumann(m, x) * std::sin(m * kPi);
            CHECK(bessel_j(-m, x) == doctest::Approx(ref).epsilon(1e-10));
        }
}

TEST_CASE("bessel_j complex series and regime guard") {
    std::complex<double> z(1.0, 0.7);
    auto v = bessel_j(0.5, z);
    // Closed form continued to complex arguments.
    auto ref = std::sqrt(2.0 / (kPi * z)) * std::sin(z);
    CHECK(std::abs(v - ref) < 1e-12);
    CHECK_THROWS_AS(bessel_j(0.5, std::complex<double>(13.0, 0.0)), domain_error);
}

TEST_CASE("first zero of J0 from Newton on the oracle") {
    // Newton iteration on the independent oracle.
    long double r = 2.4L;
    for (int i = 0; i < 40; ++i)
        r -= oracle_bessel(0.0L, r) / oracle_bessel_deriv(0.0L, r);
    CHECK((double)r == doctest::Approx(2.404825557695773).epsilon(1e-12));
    CHECK(std::abs(bessel_j(0.0, (double)r)) < 1e-12);
    auto z = bessel_j_zeros(0.0, 1);
    CHECK(z[0] == doctest::Approx(2.404825557695773).epsilon(1e-11));
}

TEST_CASE("bessel_j_zeros half-integer closed form and interlacing") {
    auto z = bessel_j_zeros(0.5, 3);
    CHECK(z[0] == doctest::Approx(kPi).epsilon(1e-11));
    CHECK(z[1] == doctest::Approx(2 * kPi).epsilon(1e-11));
    CHECK(z[2] == doctest::Approx(3 * kPi).epsilon(1e-11));

    for (double nu : {-0.5, 0.0, 1.3}) {
        auto a = bessel_j_zeros(nu, 30);
        auto b = bessel_j_zeros(nu + 1.0, 30);
        for (int k = 0; k + 1 < 30; ++k) {
            CHECK(a[k] < a[k + 1]);
            // Interlacing: j_{nu,k} < j_{nu+1,k} < j_{nu,k+1}.
            CHECK(a[k] < b[k]);
            CHECK(b[k] < a[k + 1]);
        }
        // Gaps approach pi.
        CHECK(a[29] - a[28] == doctest::Approx(kPi).epsilon(1e-3));
    }
    CHECK_THROWS_AS(bessel_j_zeros(0.0, 0), domain_error);
}

TEST_CASE("kernel_J origin value and symmetry") {
    for (double alpha : {-0.5, 0.0, 0.3, 1.0, 2.5}) {
        const double ref = 1.0 / (std::pow(2.0, 2 * alpha + 2) *
                                  std::exp(std::lgamma(alpha + 1.0)) *
                                  std::exp(std::lgamma(alpha + 2.0)));
        CHECK(kernel_J(alpha, 0.0, 0.0, KernelVariant::entire) ==
              doctest::Approx(ref).epsilon(1e-12));
        CHECK(kernel_J_diag(alpha, 0.0) == doctest::Approx(ref).epsilon(1e-12));
    }
    CHECK(kernel_J(0.0, 0.0, 0.0, KernelVariant::entire) ==
          doctest::Approx(0.25).epsilon(1e-13));
    // Symmetry of the raw kernel.
    for (double a : {0.3, 1.7, 4.0})
        for (double b : {0.9, 2.2, 7.5})
            CHECK(kernel_J(0.5, a, b, KernelVariant::raw) ==
                  doctest::Approx(kernel_J(0.5, b, a, KernelVariant::raw))
                      .epsilon(1e-12));
    CHECK_THROWS_AS(kernel_J(-1.5, 1.0, 1.0, KernelVariant::raw), domain_error);
}

TEST_CASE("kernel_J confluent matches finite difference") {
    // Central finite difference of the raw formula near the diagonal.
    const double alpha = 1.0, a = 2.0, h = 1e-5;
    const double fd = 0.5 * (kernel_J(alpha, a + h, a, KernelVariant::raw) +
                             kernel_J(alpha, a - h, a, KernelVariant::raw));
    const double conf =
        kernel_J_diag(alpha, a) * std::pow(a, alpha); // back to raw scale
    CHECK(conf == doctest::Approx(fd).epsilon(1e-6));
    // Entire diagonal consistency with near-diagonal entire values.
    CHECK(kernel_J(alpha, 2.0, 2.0, KernelVariant::entire) ==
          doctest::Approx(kernel_J_diag(alpha, 2.0)).epsilon(1e-12));
}

TEST_CASE("kernel_L sinc reduction at alpha = 0") {
    double worst = 0.0;
    for (double a = -10.0; a <= 10.0; a += 0.5)
        for (double b = -10.0; b <= 10.0; b += 0.5) {
            double v = kernel_L(0.0, a, b, KernelVariant::entire);
            worst = std::max(worst, std::abs(v - sinc_kernel(a, b)));
        }
    CHECK(worst < 1e-10);
}

TEST_CASE("kernel_L origin closed form") {
    for (double alpha : {-0.5, 0.0, 0.3, 1.0, 2.5}) {
        const double ref =
            std::pow(2.0, -(alpha + 1.0)) /
            (std::exp(std::lgamma(0.5 * (alpha + 3.0))) *
             std::exp(std::lgamma(0.5 * (alpha + 1.0))));
        CHECK(kernel_L_diag(alpha, 0.0) == doctest::Approx(ref).epsilon(1e-12));
        CHECK(kernel_L(alpha, 0.0, 0.0, KernelVariant::entire) ==
              doctest::Approx(ref).epsilon(1e-12));
    }
    CHECK(kernel_L_diag(0.0, 0.0) == doctest::Approx(1.0 / kPi).epsilon(1e-13));
}

TEST_CASE("kernel_L symmetry and reflection invariance") {
    for (double alpha : {-0.5, 0.0, 0.3, 1.0, 2.5}) {
        for (double a = -10.0; a <= 10.0; a += 2.5)
            for (double b = -10.0; b <= 10.0; b += 2.5) {
                const double v = kernel_L(alpha, a, b, KernelVariant::entire);
                CHECK(kernel_L(alpha, b, a, KernelVariant::entire) ==
                      doctest::Approx(v).epsilon(1e-10));
                CHECK(kernel_L(alpha, -a, -b, KernelVariant::entire) ==
                      doctest::Approx(v).epsilon(1e-10));
            }
    }
}

TEST_CASE("kernel_L raw/entire consistency") {
    for (double alpha : {-0.5, 0.3, 1.0}) {
        for (double a : {0.2, 1.5, 6.0, 15.0})
            for (double b : {0.7, 3.0, 9.0}) {
                const double raw = kernel_L(alpha, a, b, KernelVariant::raw);
                const double ent = kernel_L(alpha, a, b, KernelVariant::entire) *
                                   std::pow(a, 0.5 * alpha) *
                                   std::pow(b, 0.5 * alpha);
                CHECK(raw == doctest::Approx(ent).epsilon(1e-12));
            }
    }
}

TEST_CASE("kernel_L diagonal matches off-diagonal limit") {
    for (double alpha : {-0.5, 1.0}) {
        for (double a : {0.4, 2.0, 8.0, 30.0}) {
            const double h = 1e-5 * std::max(1.0, a);
            const double fd = kernel_L(alpha, a + h, a - h, KernelVariant::entire);
            CHECK(kernel_L_diag(alpha, a) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("kernel_L large-argument law") {
    for (double alpha : {-0.5, 0.0, 1.0}) {
        double prevdev = 1.0;
        for (double a : {50.0, 150.0, 500.0}) {
            const double dev =
                std::abs(kPi * std::pow(a, alpha) * kernel_L_diag(alpha, a) - 1.0);
            CHECK(dev < 0.05);
            CHECK(dev <= prevdev + 1e-3);
            prevdev = dev;
        }
    }
}

TEST_CASE("kernel_L complex entire agrees with real path") {
    for (double alpha : {-0.5, 1.0}) {
        std::complex<double> a(1.2, 0.0), b(-3.4, 0.0);
        CHECK(std::abs(kernel_L(alpha, a, b) -
                       kernel_L(alpha, 1.2, -3.4, KernelVariant::entire)) < 1e-12);
        // Entire on genuinely complex arguments stays finite.
        auto v = kernel_L(alpha, std::complex<double>(1.0, 2.0),
                          std::complex<double>(-0.5, 0.3));
        CHECK(std::isfinite(v.real()));
        CHECK(std::isfinite(v.imag()));
    }
}

TEST_CASE("cardinal series reconstruction") {
    const double alpha = 1.0;
    // Exact reproduction at a retained sample node.
    auto jz = bessel_j_zeros(0.5 * (alpha - 1.0), 5);
    const double c = 0.7;
    const double node = jz[2];
    const double direct = kernel_L(alpha, c, node, KernelVariant::entire);
    CHECK(cardinal_series(alpha, c, node, 60) ==
          doctest::Approx(direct).epsilon(1e-8));

    // Convergence on an off-node point.
    const double z = 0.4;
    const double target = kernel_L_diag(alpha, 0.4);
    const double e100 =
        std::abs(cardinal_series(alpha, 0.4, z, 100) - target);
    const double e200 =
        std::abs(cardinal_series(alpha, 0.4, z, 200) - target);
    const double e400 =
        std::abs(cardinal_series(alpha, 0.4, z, 400) - target);
    CHECK(e200 < 1e-3);
    CHECK(e400 <= e100);
    CHECK_THROWS_AS(cardinal_series(alpha, 0.0, 0.0, 0), domain_error);
}
