#include "doctest.h"

#include <cmath>
#include <numbers>

#include "patchnoise/quadrature.hpp"

using namespace patchnoise;

TEST_CASE("adaptive Gauss-Kronrod basics") {
    auto r = quadrature::integrate([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-13));

    r = quadrature::integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));

    // integrable endpoint singularity
    r = quadrature::integrate([](double x) { return 1.0 / std::sqrt(x); }, 1e-30, 1.0,
                              {1e-10, 1e-8, 4000});
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("semi-infinite integrals") {
    auto r = quadrature::integrate_semi_infinite([](double x) { return std::exp(-x); }, 0.0, 1.0);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-11));

    r = quadrature::integrate_semi_infinite([](double x) { return std::pow(x, -4.0); }, 1.0, 1.0);
    CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-11));
}

TEST_CASE("Gauss-Legendre nodes") {
    std::vector<double> x, w;
    quadrature::gauss_legendre(5, x, w);
    double sum = 0.0;
    for (double v : w) sum += v;
    CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
    for (size_t i = 0; i < 2; ++i) CHECK(x[i] == doctest::Approx(-x[4 - i]).epsilon(1e-14));

    // exact for degree 9 with 5 nodes
    double acc = 0.0;
    for (size_t i = 0; i < x.size(); ++i) acc += w[i] * std::pow(x[i], 8);
    CHECK(acc == doctest::Approx(2.0 / 9.0).epsilon(1e-14));

    quadrature::gauss_legendre(700, x, w);
    acc = 0.0;
    for (size_t i = 0; i < x.size(); ++i) acc += w[i] * std::cos(3.0 * x[i]);
    CHECK(acc == doctest::Approx(2.0 * std::sin(3.0) / 3.0).epsilon(1e-13));
}
