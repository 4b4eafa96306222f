#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "patchnoise/geometry.hpp"

using namespace patchnoise;
using geometry::FieldMode;
using geometry::FieldPoint;
using geometry::Geometry;
using geometry::SourcePoint;
constexpr double pi = std::numbers::pi;

TEST_CASE("plane surface kernel and gradients") {
    const Geometry g = geometry::InfinitePlane{};
    CHECK(geometry::surface_green(g, {0, 0, 1}, {0, 0}).value ==
          doctest::Approx(1.0 / (2.0 * pi)).epsilon(1e-14));
    CHECK(geometry::grad_surface_green(g, FieldMode::Normal, {0, 0, 1}, {0, 0}).value ==
          doctest::Approx(-1.0 / pi).epsilon(1e-14));
    // transverse component against the analytic form 3 z s' cos(phi') / (2 pi rho^5)
    const double expect = 3.0 / (2.0 * pi * std::pow(2.0, 2.5));
    CHECK(geometry::grad_surface_green(g, FieldMode::Transverse, {0, 0, 1}, {1, 0}).value ==
          doctest::Approx(expect).epsilon(1e-13));
    CHECK_THROWS_AS((void)geometry::surface_green(g, {0, 0, -1}, {0, 0}), std::domain_error);
}

TEST_CASE("plane boundary condition and proximity floor") {
    const Geometry g = geometry::InfinitePlane{};
    for (double x : {0.3, 2.0})
        CHECK(std::abs(geometry::greens_function(g, {x, 0.0, 0.0}, {0.0, 1.0, 0.7})) < 1e-10);
    CHECK_THROWS_AS((void)geometry::surface_green(g, {1.0, 0.0, 1e-12}, {1.0, 0.0}),
                    std::domain_error);
}

TEST_CASE("sphere image kernel") {
    const Geometry g = geometry::Sphere{1.0};
    CHECK(geometry::surface_green(g, {2, 0, 0}, {0, 0}).value ==
          doctest::Approx(3.0 / (4.0 * pi)).epsilon(1e-13));
    // uniform surface potential must give 1/r outside the unit sphere:
    // integrate the kernel over the sphere at a couple of radii
    for (double r : {1.5, 4.0}) {
        double acc = 0.0;
        const int n = 4000;
        for (int i = 0; i < n; ++i) {
            const double th = pi * (i + 0.5) / n;
            acc += geometry::surface_green(g, {r, 0, 0}, {th, 0}).value * 2.0 * pi * std::sin(th) *
                   (pi / n);
        }
        CHECK(acc == doctest::Approx(1.0 / r).epsilon(1e-6));
    }
}

TEST_CASE("sphere series kernel matches the image form") {
    const geometry::Sphere s{1.0};
    const Geometry g = s;
    // on the axis; at r = 1.1 the exact l = 200 truncation tail is ~1e-7 of
    // the value, so the bound is looser there
    for (double r : {1.1, 2.0, 10.0, 100.0}) {
        const double closed = geometry::surface_green(g, {r, 0, 0}, {0.0, 0.4}).value;
        const double series =
            geometry::sphere_surface_green_series(s, {r, 0, 0}, {0.0, 0.4}, {200, 1e-13}).value;
        CHECK(series == doctest::Approx(closed).epsilon(r < 1.2 ? 2e-7 : 1e-8));
    }
    // off-axis sources with enough terms in hand
    for (double th : {1.1, 2.7}) {
        const double closed = geometry::surface_green(g, {1.1, 0, 0}, {th, 0.4}).value;
        const double series =
            geometry::sphere_surface_green_series(s, {1.1, 0, 0}, {th, 0.4}, {420, 1e-13}).value;
        CHECK(series == doctest::Approx(closed).epsilon(1e-8));
    }
}

TEST_CASE("sphere full Green's function: reciprocity and boundary") {
    const Geometry g = geometry::Sphere{1.0};
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> rad(1.2, 5.0), ang(0.0, pi), az(0.0, 2.0 * pi);
    for (int i = 0; i < 10; ++i) {
        const auto p1 = geometry::to_cartesian(g, {rad(rng), ang(rng), az(rng)});
        const auto p2 = geometry::to_cartesian(g, {rad(rng), ang(rng), az(rng)});
        const double g12 = geometry::greens_function(g, p1, p2);
        const double g21 = geometry::greens_function(g, p2, p1);
        CHECK(g12 == doctest::Approx(g21).epsilon(1e-12));
    }
    // vanishes when the field point sits on the conductor
    const auto on = geometry::to_cartesian(g, {1.0, 1.1, 0.3});
    const auto out = geometry::to_cartesian(g, {2.5, 0.7, 1.0});
    CHECK(std::abs(geometry::greens_function(g, on, out)) < 1e-10);
}

TEST_CASE("sphere transverse gradient vanishes on axis for axisymmetric sources") {
    const Geometry g = geometry::Sphere{1.0};
    // phi' = pi/2 puts the source out of the gradient's azimuth plane
    CHECK(std::abs(geometry::grad_surface_green(g, FieldMode::Transverse, {2, 0, 0}, {0.9, pi / 2}).value) <
          1e-14);
    // and the theta' = 0 source column has no transverse pull at all
    CHECK(std::abs(geometry::grad_surface_green(g, FieldMode::Transverse, {2, 0, 0}, {1e-9, 0.0}).value) <
          1e-8);
}

TEST_CASE("hole trap: surface kernel against a finite difference of the printed form") {
    const double d = 1.0;
    const Geometry g = geometry::HolePlane{d};
    auto fd_kernel = [&](double s, double z, double sp, double phip) {
        // one-sided second-order difference in z' (the kernel vanishes at z' = 0)
        const double h = 1e-5;
        const std::array<double, 3> field{s, 0.0, z};
        auto at = [&](double zp) {
            return geometry::greens_function(g, field,
                                             {sp * std::cos(phip), sp * std::sin(phip), zp});
        };
        return (4.0 * at(h) - at(2.0 * h)) / (2.0 * h);
    };
    for (const auto& q :
         {std::array<double, 4>{0.3, 0.8, 1.5, 0.0}, std::array<double, 4>{0.0, 1.0, 2.5, 0.0},
          std::array<double, 4>{1.2, 0.4, 1.8, 2.1}}) {
        const FieldPoint field{q[0], 0.0, q[1]};
        const double val = geometry::surface_green(g, field, {q[2], q[3]}).value;
        CHECK(val == doctest::Approx(fd_kernel(q[0], q[1], q[2], q[3])).epsilon(1e-7));
    }
}

TEST_CASE("hole trap tends to the infinite plane as the hole closes") {
    const double d = 1e-3;
    const Geometry hole = geometry::HolePlane{d};
    const Geometry plane = geometry::InfinitePlane{};
    for (double sp : {0.5, 1.0}) {
        const double h = geometry::surface_green(hole, {0, 0, 1}, {sp, 0}).value;
        const double p = geometry::surface_green(plane, {0, 0, 1}, {sp, 0}).value;
        CHECK(h == doctest::Approx(p).epsilon(1e-4));
    }
}

TEST_CASE("hole trap gradients at the center") {
    const double d = 1.0;
    const Geometry g = geometry::HolePlane{d};
    // normal gradient at the center is 1/(4 pi s'^3); check against a finite
    // difference of the kernel itself along z
    for (double sp : {1.4, 3.0}) {
        const double grad =
            geometry::grad_surface_green(g, FieldMode::Normal, {0, 0, 0}, {sp, 0}).value;
        CHECK(grad == doctest::Approx(1.0 / (4.0 * pi * sp * sp * sp)).epsilon(1e-13));
        const double h = 1e-5;
        auto k = [&](double z) { return geometry::surface_green(g, {0, 0, z}, {sp, 0}).value; };
        const double fd = (-3.0 * k(0.0) + 4.0 * k(h) - k(2.0 * h)) / (2.0 * h);
        CHECK(grad == doctest::Approx(fd).epsilon(1e-7));
    }
    // radial gradient against a central difference inside the hole
    for (double sp : {1.4, 3.0}) {
        const double grad =
            geometry::grad_surface_green(g, FieldMode::Transverse, {0, 0, 0}, {sp, 0}).value;
        const double h = 1e-5;
        auto k = [&](double x) { return geometry::surface_green(g, {x, 0, 0}, {sp, 0}).value; };
        CHECK(grad == doctest::Approx((k(h) - k(-h)) / (2.0 * h)).epsilon(1e-7));
    }
    CHECK_THROWS_AS(
        (void)geometry::grad_surface_green(g, FieldMode::Normal, {0, 0, 0}, {0.5, 0.0}),
        std::domain_error); // source inside the hole is off the sheet
}

TEST_CASE("spheroid coordinates") {
    const Geometry pro = geometry::ProlateSpheroid{1.0, 2.0};
    const Geometry obl = geometry::OblateSpheroid{1.0, 0.0};

    auto xyz = geometry::to_cartesian(pro, {1.0, 1.0, 0.0});
    CHECK(xyz[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(xyz[2] == doctest::Approx(1.0).epsilon(1e-14));

    xyz = geometry::to_cartesian(obl, {0.0, 0.0, 0.0});
    CHECK(xyz[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(xyz[2]) < 1e-14);

    xyz = geometry::to_cartesian(pro, {2.0, 0.5, pi / 2});
    CHECK(std::abs(xyz[0]) < 1e-14);
    CHECK(xyz[1] == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(xyz[2] == doctest::Approx(1.0).epsilon(1e-14));

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uxi(1.01, 6.0), ueta(-0.99, 0.99), uphi(0.0, 2 * pi);
    for (int i = 0; i < 20; ++i) {
        const FieldPoint p{uxi(rng), ueta(rng), uphi(rng)};
        const auto c = geometry::to_cartesian(pro, p);
        const auto back = geometry::field_from_cartesian(pro, c);
        CHECK(back.c1 == doctest::Approx(p.c1).epsilon(1e-12));
        CHECK(back.c2 == doctest::Approx(p.c2).epsilon(1e-12));
    }
    std::uniform_real_distribution<double> oxi(0.02, 6.0);
    const Geometry ob2 = geometry::OblateSpheroid{1.0, 0.5};
    for (int i = 0; i < 20; ++i) {
        const FieldPoint p{oxi(rng), ueta(rng), uphi(rng)};
        const auto c = geometry::to_cartesian(ob2, p);
        const auto back = geometry::field_from_cartesian(ob2, c);
        CHECK(back.c1 == doctest::Approx(p.c1).epsilon(1e-11));
        CHECK(back.c2 == doctest::Approx(p.c2).epsilon(1e-11));
    }
}

TEST_CASE("prolate kernel approaches the sphere kernel for xi0 -> inf") {
    const double xi0 = 1.0e3;
    const Geometry pro = geometry::ProlateSpheroid{1.0, xi0};
    const Geometry sg = geometry::Sphere{xi0}; // same physical radius
    const geometry::SeriesSpec spec{96, 1e-12};
    for (double scale : {2.0, 5.0})
        for (double th : {0.4, 1.2}) {
            const double xi = scale * xi0;
            const double eta_p = std::cos(th);
            const double gp = geometry::surface_green(pro, {xi, 1.0, 0.0}, {eta_p, 0.0}, spec).value;
            const double gs = geometry::surface_green(sg, {xi, 0.0, 0.0}, {th, 0.0}).value;
            CHECK(gp == doctest::Approx(gs).epsilon(1e-6));
        }
}

TEST_CASE("spheroid kernels: domain handling") {
    const Geometry pro = geometry::ProlateSpheroid{1.0, 1.5};
    CHECK_THROWS_AS((void)geometry::surface_green(pro, {1.2, 1.0, 0.0}, {0.5, 0.0}),
                    std::domain_error); // interior
    CHECK_THROWS_AS((void)geometry::surface_green(pro, {2.0, 0.6, 0.0}, {0.5, 0.0}),
                    std::invalid_argument); // off axis
    CHECK_THROWS_AS(geometry::validate(Geometry{geometry::ProlateSpheroid{1.0, 0.9}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(geometry::validate(Geometry{geometry::OblateSpheroid{1.0, -0.1}}),
                    std::invalid_argument);
    CHECK(geometry::is_exterior(pro, {1.6, 1.0, 0.0}));
    CHECK(!geometry::is_exterior(pro, {1.4, 1.0, 0.0}));
}

TEST_CASE("surface elements") {
    CHECK(geometry::surface_element(Geometry{geometry::InfinitePlane{}}, {2.0, 0.0}) == 2.0);
    CHECK(geometry::surface_element(Geometry{geometry::Sphere{2.0}}, {pi / 2, 0.0}) ==
          doctest::Approx(4.0).epsilon(1e-14));
    const Geometry pro = geometry::ProlateSpheroid{1.0, 2.0};
    CHECK(geometry::surface_element(pro, {0.0, 0.0}) ==
          doctest::Approx(std::sqrt(4.0 * 3.0)).epsilon(1e-14));
}

TEST_CASE("mode labels") {
    CHECK(geometry::mode_label(Geometry{geometry::InfinitePlane{}}, FieldMode::Normal) == "z");
    CHECK(geometry::mode_label(Geometry{geometry::HolePlane{1.0}}, FieldMode::Transverse) == "s");
    CHECK(geometry::mode_label(Geometry{geometry::Sphere{1.0}}, FieldMode::Transverse) == "theta");
    CHECK(geometry::mode_label(Geometry{geometry::OblateSpheroid{1.0, 0.0}}, FieldMode::Normal) == "xi");
}
