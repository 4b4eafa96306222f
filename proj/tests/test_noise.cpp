#include "doctest.h"

#include <cmath>
#include <random>

#include "patchnoise/noise.hpp"

using namespace patchnoise;

TEST_CASE("spectral density") {
    noise::NoiseSpectrumModel r;
    r.beta = 1.0;
    r.amplitude = 1.0;
    r.omega_ref = 1.0;
    CHECK(noise::spectral_density(r, 1.0, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(noise::spectral_density(r, 1.0, 2.0) == doctest::Approx(4.0).epsilon(1e-15));
    r.amplitude = 2.0;
    CHECK(noise::spectral_density(r, 1.0, 1.0) == doctest::Approx(4.0).epsilon(1e-15));

    // power-law algebra between the cited exponents
    noise::NoiseSpectrumModel r1{1.0, 1.0, 1.0};
    noise::NoiseSpectrumModel r2{2.0, 1.0, 1.0};
    CHECK(noise::spectral_density(r1, 10.0, 1.0) / noise::spectral_density(r2, 10.0, 1.0) ==
          doctest::Approx(10.0).epsilon(1e-13));

    noise::NoiseSpectrumModel bad{1.3, 1.0, 1.0};
    CHECK_THROWS_AS((void)noise::spectrum(bad, 1.0), std::invalid_argument);
    bad.allow_any_beta = true;
    CHECK(noise::spectrum(bad, 1.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS((void)noise::spectrum(r1, 0.0), std::domain_error);
}

TEST_CASE("heating rate") {
    noise::IonParams natural{1.0, 1.0, 1.0, 1.0};
    CHECK(noise::heating_rate(natural, 0.0) == 0.0);
    CHECK(noise::heating_rate(natural, 1.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(noise::heating_rate(natural, 2.0) ==
          doctest::Approx(2.0 * noise::heating_rate(natural, 1.0)).epsilon(1e-15));

    // scales as q^2/(m omega) under random rescalings
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.2, 5.0);
    for (int i = 0; i < 10; ++i) {
        const double cq = u(rng), cm = u(rng), cw = u(rng);
        noise::IonParams scaled{cq * 1.0, cm * 1.0, cw * 1.0, 1.0};
        const double expect = noise::heating_rate(natural, 1.0) * cq * cq / (cm * cw);
        CHECK(noise::heating_rate(scaled, 1.0) == doctest::Approx(expect).epsilon(1e-12));
    }
    CHECK_THROWS_AS((void)noise::heating_rate({0.0, 1.0, 1.0, 1.0}, 1.0), std::invalid_argument);
}

TEST_CASE("nondimensional lambda to SI") {
    lambda::LambdaResult r;
    r.value = 3.0;
    CHECK(noise::lambda_si(r, 2.0) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK_THROWS_AS((void)noise::lambda_si(r, 0.0), std::invalid_argument);
}

TEST_CASE("rf advisory") {
    const auto a = noise::validity_check_rf(2.0 * 3.141592653589793 * 1e6, 2.0 * 3.141592653589793 * 30e6);
    CHECK(a.ratio == doctest::Approx(1.0 / 900.0).epsilon(1e-12));
    CHECK(!a.warn);
    const auto b = noise::validity_check_rf(1.0, 1.0);
    CHECK(b.ratio == doctest::Approx(1.0));
    CHECK(b.warn);
    // threshold override respected
    const auto c = noise::validity_check_rf(1.0, 10.0, 0.005);
    CHECK(c.warn);
    CHECK_THROWS_AS((void)noise::validity_check_rf(-1.0, 1.0), std::domain_error);
}
