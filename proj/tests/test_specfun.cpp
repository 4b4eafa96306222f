#include "doctest.h"

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "patchnoise/quadrature.hpp"
#include "patchnoise/specfun.hpp"

using namespace patchnoise;
using specfun::DegreeOrder;
constexpr double pi = std::numbers::pi;

TEST_CASE("normalized Legendre P: known values") {
    CHECK(specfun::legendre_p_norm({0, 0}, 0.3) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(specfun::legendre_p_norm({1, 0}, 0.5) == doctest::Approx(std::sqrt(1.5) * 0.5).epsilon(1e-14));
    CHECK(specfun::legendre_p_norm({1, 1}, 0.0) ==
          doctest::Approx(std::sqrt(3.0 / 4.0)).epsilon(1e-14));
    // recurrence reproduces the closed forms through l = 2
    for (double x : {-0.7, 0.1, 0.9}) {
        CHECK(specfun::legendre_p_norm({2, 0}, x) ==
              doctest::Approx(std::sqrt(2.5) * 0.5 * (3.0 * x * x - 1.0)).epsilon(1e-12));
        CHECK(specfun::legendre_p_norm({2, 1}, x) ==
              doctest::Approx(std::sqrt(5.0 / 12.0) * 3.0 * x * std::sqrt(1.0 - x * x))
                  .epsilon(1e-12));
    }
}

TEST_CASE("normalized Legendre P: orthonormality up to l = 12") {
    std::vector<double> x, w;
    quadrature::gauss_legendre(64, x, w);
    for (int m = 0; m <= 12; ++m)
        for (int l = m; l <= 12; ++l)
            for (int lp = m; lp <= 12; ++lp) {
                double acc = 0.0;
                for (size_t i = 0; i < x.size(); ++i)
                    acc += w[i] * specfun::legendre_p_norm({l, m}, x[i]) *
                           specfun::legendre_p_norm({lp, m}, x[i]);
                const double expect = (l == lp) ? 1.0 : 0.0;
                CHECK(std::abs(acc - expect) < 1e-10);
            }
}

TEST_CASE("normalized Legendre P: P20 x P40 integrates to zero") {
    std::vector<double> x, w;
    quadrature::gauss_legendre(48, x, w);
    double acc = 0.0;
    for (size_t i = 0; i < x.size(); ++i)
        acc += w[i] * specfun::legendre_p_norm({2, 0}, x[i]) * specfun::legendre_p_norm({4, 0}, x[i]);
    CHECK(std::abs(acc) < 1e-12);
}

TEST_CASE("normalized Legendre P derivatives") {
    // Pbar_10 = sqrt(3/2) x everywhere, endpoints included
    for (double x : {-1.0, -0.3, 0.5, 1.0})
        CHECK(specfun::d_dx_legendre_p_norm({1, 0}, x) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-13));

    // five-point finite differences across orders and degrees, with the step
    // scaled to the distance from the singular endpoints
    for (int l = 1; l <= 10; ++l)
        for (int m = 0; m <= l; ++m)
            for (double x : {-0.999, -0.4, 0.2, 0.92}) {
                const double h = (1.0 - std::abs(x)) / 200.0;
                auto p = [&](double t) { return specfun::legendre_p_norm({l, m}, t); };
                const double fd =
                    (p(x - 2 * h) - 8.0 * p(x - h) + 8.0 * p(x + h) - p(x + 2 * h)) / (12.0 * h);
                const double an = specfun::d_dx_legendre_p_norm({l, m}, x);
                CHECK(an == doctest::Approx(fd).epsilon(1e-7));
            }

    CHECK_THROWS_AS((void)specfun::d_dx_legendre_p_norm({3, 1}, 1.0 - 1e-13), std::domain_error);
}

TEST_CASE("degree/order validation") {
    CHECK_THROWS_AS(specfun::validate({-1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(specfun::validate({2, 3}), std::invalid_argument);
    CHECK_THROWS_AS((void)specfun::legendre_p_norm({2, 0}, 1.5), std::domain_error);
}

TEST_CASE("Legendre Q: closed forms and recurrence consistency") {
    CHECK(specfun::legendre_q({0, 0}, 2.0) == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-14));
    CHECK(specfun::legendre_q({1, 0}, 2.0) == doctest::Approx(std::log(3.0) - 1.0).epsilon(1e-12));
    for (double xi : {1.5, 2.0, 10.0}) {
        const double q0 = 0.5 * std::log((xi + 1.0) / (xi - 1.0));
        const double q1 = xi * q0 - 1.0;
        const double q2 = (3.0 * xi * q1 - q0) / 2.0;
        CHECK(specfun::legendre_q({2, 0}, xi) == doctest::Approx(q2).epsilon(1e-12));
    }
}

TEST_CASE("Legendre Q: ratio against the integral oracle") {
    const auto f20 = specfun::legendre_q_family(5, 20.0);
    const auto f10 = specfun::legendre_q_family(5, 10.0);
    const double ratio = std::exp(f20.log_value(5) - f10.log_value(5));
    const double oracle = oracles::legendre_q_integral(5, 20.0) / oracles::legendre_q_integral(5, 10.0);
    CHECK(ratio == doctest::Approx(oracle).epsilon(1e-10));

    // value itself against the oracle at a few degrees
    for (int l : {0, 3, 8})
        CHECK(specfun::legendre_q({l, 0}, 3.0) ==
              doctest::Approx(oracles::legendre_q_integral(l, 3.0)).epsilon(1e-10));
}

TEST_CASE("Legendre Q: ratio monotone decreasing in xi") {
    const double xi0 = 1.5;
    const auto base = specfun::legendre_q_family(3, xi0);
    double prev = 1.0;
    for (double xi : {1.6, 2.0, 3.0, 5.0, 12.0}) {
        const auto fam = specfun::legendre_q_family(3, xi);
        const double r = std::exp(fam.log_value(3) - base.log_value(3));
        CHECK(r < prev);
        prev = r;
    }
}

TEST_CASE("Legendre Q: domain errors near the singular endpoint") {
    CHECK_THROWS_AS((void)specfun::legendre_q({0, 0}, 1.0), std::domain_error);
    CHECK_THROWS_AS((void)specfun::legendre_q({2, 0}, 1.0 + 1e-13), std::domain_error);
    CHECK_THROWS_AS((void)specfun::legendre_q_ratio_imag({1, 0}, -0.5, 1.0), std::domain_error);
}

TEST_CASE("Legendre Q derivatives") {
    CHECK(specfun::d_dxi_legendre_q({0, 0}, 2.0) == doctest::Approx(-1.0 / 3.0).epsilon(1e-13));
    const double h = 1e-5;
    for (DegreeOrder lo : {DegreeOrder{3, 0}, DegreeOrder{5, 0}, DegreeOrder{3, 1}}) {
        const double xi = 1.5;
        const double fd =
            (specfun::legendre_q(lo, xi + h) - specfun::legendre_q(lo, xi - h)) / (2.0 * h);
        CHECK(specfun::d_dxi_legendre_q(lo, xi) == doctest::Approx(fd).epsilon(1e-8));
    }
}

TEST_CASE("imaginary-axis Q ratios") {
    CHECK(specfun::legendre_q_ratio_imag({0, 0}, 0.7, 0.7) == doctest::Approx(1.0).epsilon(1e-14));
    // arccot(1)/arccot(0) = (pi/4)/(pi/2)
    CHECK(specfun::legendre_q_ratio_imag({0, 0}, 1.0, 0.0) == doctest::Approx(0.5).epsilon(1e-13));

    for (int l : {0, 1, 3, 6}) {
        const double r = specfun::legendre_q_ratio_imag({l, 0}, 2000.0, 1000.0);
        CHECK(r == doctest::Approx(std::pow(2.0, -(l + 1.0))).epsilon(1e-2));
    }
    for (int l : {0, 2, 5}) {
        const double r = specfun::legendre_q_ratio_imag({l, 0}, 1.7, 0.4);
        const double oracle =
            oracles::legendre_q_imag_integral(l, 1.7) / oracles::legendre_q_imag_integral(l, 0.4);
        CHECK(r == doctest::Approx(oracle).epsilon(1e-9));
    }
    // disc surface value xi0 = 0 is a closed product; spot-check against the oracle
    const double r0 = specfun::legendre_q_ratio_imag({4, 0}, 0.9, 0.0);
    const double o0 =
        oracles::legendre_q_imag_integral(4, 0.9) / oracles::legendre_q_imag_integral(4, 0.0);
    CHECK(r0 == doctest::Approx(o0).epsilon(1e-9));
}

TEST_CASE("spherical harmonics") {
    CHECK(specfun::sph_harm({0, 0}, 1.234, 2.0).real() ==
          doctest::Approx(1.0 / std::sqrt(4.0 * pi)).epsilon(1e-14));
    CHECK(specfun::sph_harm({1, 0}, 0.0, 0.0).real() ==
          doctest::Approx(std::sqrt(3.0 / (4.0 * pi))).epsilon(1e-14));

    // norm of Y_32 over the sphere
    std::vector<double> x, w;
    quadrature::gauss_legendre(40, x, w);
    const int nphi = 24;
    double acc = 0.0;
    for (size_t i = 0; i < x.size(); ++i)
        for (int j = 0; j < nphi; ++j) {
            const double phi = 2.0 * pi * j / nphi;
            acc += w[i] * (2.0 * pi / nphi) * std::norm(specfun::sph_harm({3, 2}, std::acos(x[i]), phi));
        }
    CHECK(acc == doctest::Approx(1.0).epsilon(1e-10));

    // conjugation relation for negative order
    const auto yp = specfun::sph_harm({3, 2}, 0.8, 0.9);
    const auto ym = specfun::sph_harm({3, -2}, 0.8, 0.9);
    CHECK(ym.real() == doctest::Approx(std::conj(yp).real()).epsilon(1e-13));
    CHECK(ym.imag() == doctest::Approx(std::conj(yp).imag()).epsilon(1e-13));
}

TEST_CASE("transverse axis slope") {
    for (int l : {1, 2, 7})
        CHECK(specfun::transverse_axis_slope(l) ==
              doctest::Approx(std::sqrt((2.0 * l + 1.0) * l * (l + 1.0) / 8.0)).epsilon(1e-14));
    // matches the slope of Pbar_l1(cos chi) at chi -> 0
    const double chi = 1e-4;
    for (int l : {1, 4}) {
        const double slope = specfun::legendre_p_norm({l, 1}, std::cos(chi)) / chi;
        CHECK(specfun::transverse_axis_slope(l) == doctest::Approx(slope).epsilon(1e-6));
    }
}
