#include "doctest.h"

#include <cmath>

#include "patchnoise/errors.hpp"
#include "patchnoise/scaling.hpp"

using namespace patchnoise;
using geometry::FieldMode;
using geometry::Geometry;
using patchmodel::PatchModel;

namespace {
const Geometry plane = geometry::InfinitePlane{};
const Geometry hole = geometry::HolePlane{1.0};
const Geometry sphere = geometry::Sphere{1.0};
} // namespace

TEST_CASE("alpha is exact on power laws") {
    // plane point-patch is d^-4, hole coherent z is d^-2
    for (double D : {0.05, 1.0, 30.0})
        for (double h : {0.2, 0.05, 0.01}) {
            scaling::AlphaOptions ao;
            ao.h = h;
            CHECK(std::abs(scaling::alpha_at(plane, FieldMode::Normal, PatchModel::pp(), D, ao) - 4.0) <
                  1e-12);
        }
    CHECK(std::abs(scaling::alpha_at(hole, FieldMode::Normal, PatchModel::ip(), 2.0) - 2.0) < 1e-12);
}

TEST_CASE("sphere coherent-limit identity alpha = 4D/(1+D)") {
    scaling::AlphaOptions ao;
    ao.h = 0.01;
    ao.richardson = true;
    ao.backend = lambda::Backend::Closed;
    for (double D : {1e-3, 0.01, 0.3, 1.0, 20.0, 100.0}) {
        const double a = scaling::alpha_at(sphere, FieldMode::Normal, PatchModel::ip(), D, ao);
        CHECK(std::abs(a - 4.0 * D / (1.0 + D)) < 1e-8);
    }
}

TEST_CASE("alpha step robustness") {
    scaling::AlphaOptions a1, a2;
    a1.h = 0.05;
    a2.h = 0.025;
    for (double D : {0.1, 1.0, 10.0}) {
        const double v1 = scaling::alpha_at(sphere, FieldMode::Normal, PatchModel::pp(), D, a1);
        const double v2 = scaling::alpha_at(sphere, FieldMode::Normal, PatchModel::pp(), D, a2);
        CHECK(std::abs(v1 - v2) < 1e-4);
    }
}

TEST_CASE("alpha rejects vanishing factors and bad steps") {
    CHECK_THROWS_AS((void)scaling::alpha_at(plane, FieldMode::Normal, PatchModel::ip(), 1.0),
                    LogOfZero);
    scaling::AlphaOptions bad;
    bad.h = 0.5;
    CHECK_THROWS_AS((void)scaling::alpha_at(plane, FieldMode::Normal, PatchModel::pp(), 1.0, bad),
                    std::invalid_argument);
}

TEST_CASE("log grid") {
    const auto g = scaling::log_grid(1e-2, 1e2, 5);
    REQUIRE(g.size() == 5);
    CHECK(g.front() == doctest::Approx(1e-2).epsilon(1e-12));
    CHECK(g.back() == doctest::Approx(1e2).epsilon(1e-12));
    CHECK(g[2] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS((void)scaling::log_grid(1.0, 0.5, 5), std::invalid_argument);
    CHECK_THROWS_AS((void)scaling::log_grid(1.0, 2.0, 1), std::invalid_argument);
}

TEST_CASE("sweeps preserve grid order and are reproducible") {
    const auto grid = scaling::log_grid(0.1, 10.0, 9);
    const std::vector<PatchModel> patches{PatchModel::ip(), PatchModel::pp(),
                                          PatchModel::truncated(8)};
    const auto a = scaling::sweep_alpha(sphere, FieldMode::Normal, patches, grid);
    const auto b = scaling::sweep_alpha(sphere, FieldMode::Normal, patches, grid);
    REQUIRE(a.size() == 3);
    CHECK(a[0].patch == "ip");
    CHECK(a[1].backend == "closed");
    CHECK(a[2].backend == "spectral");
    for (size_t c = 0; c < a.size(); ++c) {
        REQUIRE(a[c].samples.size() == grid.size());
        for (size_t i = 0; i < grid.size(); ++i) {
            CHECK(a[c].samples[i].D == grid[i]);
            // bitwise equality across repeated parallel runs
            CHECK(a[c].samples[i].alpha == b[c].samples[i].alpha);
            CHECK(a[c].samples[i].lambda == b[c].samples[i].lambda);
        }
    }
}

TEST_CASE("needle sweep reuses one context across patch models") {
    const Geometry needle = geometry::ProlateSpheroid{1.0, 1.2};
    const auto grid = scaling::log_grid(0.5, 5.0, 4);
    lambda::EvalOptions e;
    e.l_max = 96;
    const auto curves = scaling::sweep_alpha(
        needle, FieldMode::Normal, {PatchModel::pp(), PatchModel::truncated(10)}, grid, {}, e);
    REQUIRE(curves.size() == 2);
    for (const auto& c : curves)
        for (const auto& s : c.samples) {
            CHECK(std::isfinite(s.alpha));
            CHECK(s.lambda > 0.0);
        }
}
