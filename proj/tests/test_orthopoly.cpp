#include "doctest.h"

#include "opkit/errors.hpp"
#include "opkit/measure.hpp"
#include "opkit/orthopoly.hpp"

#include <cmath>

using namespace opkit;
using namespace opkit::measure;
using namespace opkit::orthopoly;

TEST_CASE("legendre closed form") {
    auto t = jacobi_recurrence(0.0, 0.0, 16);
    CHECK(t.mass == doctest::Approx(2.0));
    for (int k = 0; k < t.size(); ++k) CHECK(t.b(k) == doctest::Approx(0.0));
    CHECK(t.a(1) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    // p_0 = 1/sqrt(2), p_1(x) = sqrt(3/2) x.
    auto [p0, dummy] = eval_orthonormal(t, 0, 0.3);
    CHECK(p0 == doctest::Approx(1.0 / std::sqrt(2.0)));
    auto [p1, p0b] = eval_orthonormal(t, 1, 0.5);
    CHECK(p1 == doctest::Approx(std::sqrt(1.5) * 0.5).epsilon(1e-14));
    CHECK(p0b == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("symmetric singular recurrence") {
    auto leg = jacobi_recurrence(0.0, 0.0, 32);
    auto sym0 = symmetric_singular_recurrence(0.0, 32);
    for (int k = 1; k <= 32; ++k)
        CHECK(sym0.a(k) == doctest::Approx(leg.a(k)).epsilon(1e-13));

    auto sym1 = symmetric_singular_recurrence(1.0, 64);
    for (int k = 0; k < 64; ++k) CHECK(sym1.b(k) == 0.0);

    // Lanczos oracle.
    auto mu = make_model_bulk(1.0);
    auto rule = composite_quadrature(mu, 100);
    auto lz = lanczos_recurrence(mu, 64, rule);
    CHECK(lz.mass == doctest::Approx(sym1.mass).epsilon(1e-13));
    for (int k = 1; k <= 64; ++k)
        CHECK(lz.a(k) == doctest::Approx(sym1.a(k)).epsilon(1e-11));
}

TEST_CASE("jacobi edge measure vs lanczos oracle") {
    for (double alpha : {-0.5, 0.7, 1.0}) {
        auto cf = jacobi_recurrence(alpha, 0.0, 64);
        auto mu = make_model_edge(alpha);
        auto rule = composite_quadrature(mu, 100);
        auto lz = lanczos_recurrence(mu, 64, rule);
        CHECK(lz.mass == doctest::Approx(cf.mass).epsilon(1e-12));
        for (int k = 0; k < 64; ++k)
            CHECK(lz.b(k) == doctest::Approx(cf.b(k)).epsilon(1e-11));
        for (int k = 1; k <= 64; ++k)
            CHECK(lz.a(k) == doctest::Approx(cf.a(k)).epsilon(1e-11));
    }
}

TEST_CASE("composite quadrature exactness") {
    auto m1 = make_model_bulk(1.0);
    auto r = composite_quadrature(m1, 20);
    double s = 0.0;
    for (double w : r.weights) s += w;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));

    // Odd moments vanish for Lebesgue on [-1,1].
    auto leb = make_model_bulk(0.0);
    auto rl = composite_quadrature(leb, 12);
    double odd = 0.0;
    for (size_t i = 0; i < rl.nodes.size(); ++i)
        odd += rl.weights[i] * std::pow(rl.nodes[i], 23);
    CHECK(odd == doctest::Approx(0.0).epsilon(1e-13));

    // x^2 against |x|^{-1/2}: analytic value 4/5.
    auto mh = make_model_bulk(-0.5);
    auto rh = composite_quadrature(mh, 20);
    double v = 0.0;
    for (size_t i = 0; i < rh.nodes.size(); ++i)
        v += rh.weights[i] * rh.nodes[i] * rh.nodes[i];
    CHECK(v == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("lanczos on two symmetric intervals") {
    auto mu = make_lebesgue({{-1.0, -0.4}, {0.4, 1.0}});
    auto rule = composite_quadrature(mu, 80);
    auto t = lanczos_recurrence(mu, 48, rule);
    for (int k = 0; k < 48; ++k) CHECK(t.b(k) == doctest::Approx(0.0).epsilon(1e-12));
    for (int k = 1; k <= 48; ++k) CHECK(t.a(k) > 0.0);
}

TEST_CASE("orthonormality under the rule") {
    for (auto mu : {make_model_bulk(1.0), make_model_edge(-0.5)}) {
        auto rule = composite_quadrature(mu, 90);
        auto t = lanczos_recurrence(mu, 65, rule);
        for (int m = 0; m <= 20; m += 5)
            for (int k = 0; k <= 20; k += 7) {
                double s = 0.0;
                for (size_t j = 0; j < rule.nodes.size(); ++j)
                    s += rule.weights[j] *
                         eval_orthonormal(t, m, rule.nodes[j]).first *
                         eval_orthonormal(t, k, rule.nodes[j]).first;
                CHECK(s == doctest::Approx(m == k ? 1.0 : 0.0).epsilon(1e-10));
            }
    }
}

TEST_CASE("poly zeros") {
    auto t = jacobi_recurrence(0.0, 0.0, 16);
    auto z2 = poly_zeros(t, 2);
    CHECK(z2[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-13));
    CHECK(z2[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-13));

    auto sym = symmetric_singular_recurrence(1.0, 32);
    auto z = poly_zeros(sym, 15);
    for (int i = 0; i < 15; ++i)
        CHECK(z[i] == doctest::Approx(-z[14 - i]).epsilon(1e-12));

    // Interlacing with p_{n-1}.
    auto zn = poly_zeros(t, 10);
    auto znm = poly_zeros(t, 9);
    for (int i = 0; i < 9; ++i) {
        CHECK(zn[i] < znm[i]);
        CHECK(znm[i] < zn[i + 1]);
    }
    CHECK_THROWS_AS(poly_zeros(t, 17), domain_error);
}

TEST_CASE("derivative evaluation") {
    auto t = jacobi_recurrence(0.0, 0.0, 16);
    const double x = 0.37, h = 1e-6;
    auto d = eval_orthonormal_deriv(t, 7, x);
    auto up = eval_orthonormal(t, 7, x + h), dn = eval_orthonormal(t, 7, x - h);
    CHECK(d.dpn == doctest::Approx((up.first - dn.first) / (2 * h)).epsilon(1e-7));
    CHECK(d.dpnm1 == doctest::Approx((up.second - dn.second) / (2 * h)).epsilon(1e-7));
}

TEST_CASE("csv export shape") {
    auto t = jacobi_recurrence(0.0, 0.0, 3);
    auto csv = export_csv(t);
    CHECK(csv.substr(0, 8) == "k,b_k,a_");
    CHECK(csv.find("0,0,\n") != std::string::npos);
}
