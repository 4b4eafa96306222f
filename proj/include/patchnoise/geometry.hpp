#pragma once

#include <array>
#include <string>
#include <variant>

#include "patchnoise/specfun.hpp"

// Electrode geometries, their coordinate systems, and their surface Green's
// functions G_sigma (the kernel mapping surface potential to exterior
// potential, per unit source area), plus gradients with respect to the field
// point. Gradients are physical (orthonormal-frame) components in every
// coordinate system.

namespace patchnoise::geometry {

struct InfinitePlane {};                        // conductor fills z <= 0
struct HolePlane { double hole_radius = 1.0; }; // thin sheet z = 0 with a circular hole; sources on the top face
struct Sphere { double radius = 1.0; };
struct ProlateSpheroid { double a = 1.0; double xi0 = 2.0; }; // xi0 > 1
struct OblateSpheroid { double a = 1.0; double xi0 = 0.0; };  // xi0 >= 0 (0 = disc of radius a)

using Geometry = std::variant<InfinitePlane, HolePlane, Sphere, ProlateSpheroid, OblateSpheroid>;

// throws std::invalid_argument on nonpositive lengths / out-of-range xi0
void validate(const Geometry& g);

enum class FieldMode { Normal, Transverse };

// z/x (plane), z/s (hole), r/theta (sphere), xi/eta (spheroids)
std::string mode_label(const Geometry& g, FieldMode k);

// field point in geometry-native coordinates:
//   planes: (x, y, z) with z > 0 (hole: z >= 0 off the sheet)
//   sphere: (r, theta, phi)
//   spheroids: (xi, eta, phi); evaluation is supported on the axis eta = 1
struct FieldPoint { double c1 = 0.0, c2 = 0.0, c3 = 0.0; };

// point on the source surface:
//   planes: (s', phi') with s' >= hole radius for the hole trap
//   sphere: (theta', phi')
//   spheroids: (eta', phi')
struct SourcePoint { double u = 0.0, v = 0.0; };

std::array<double, 3> to_cartesian(const Geometry& g, const FieldPoint& p);
std::array<double, 3> source_to_cartesian(const Geometry& g, const SourcePoint& p);
FieldPoint field_from_cartesian(const Geometry& g, const std::array<double, 3>& xyz);

// true if p lies strictly outside the conductor
bool is_exterior(const Geometry& g, const FieldPoint& p);

struct SeriesSpec {
    int l_max = 256;
    double rel_tol = 1e-8;
};

struct SeriesValue {
    double value = 0.0;
    int l_used = 0;
    double residual = 0.0;   // absolute tail estimate (0 for closed forms)
    bool converged = true;
};

// G_sigma(r, r'); closed form for plane/hole/sphere, eigenfunction series for
// spheroids. Throws std::domain_error if |r - r'| is below the proximity
// floor 1e-9 * (geometry scale).
SeriesValue surface_green(const Geometry& g, const FieldPoint& r, const SourcePoint& rp,
                          const SeriesSpec& spec = {});

// k-component of grad_r G_sigma (physical component). The transverse
// component is taken along the x axis of the field point's azimuth frame.
// Hole-trap gradients are evaluated in the hole plane (z = 0, s < d).
SeriesValue grad_surface_green(const Geometry& g, FieldMode k, const FieldPoint& r,
                               const SourcePoint& rp, const SeriesSpec& spec = {});

// spherical-harmonic series form of the sphere kernel, kept separate from the
// image-charge closed form so the two can cross-validate each other
SeriesValue sphere_surface_green_series(const Sphere& g, const FieldPoint& r,
                                        const SourcePoint& rp, const SeriesSpec& spec = {});

// full Dirichlet Green's function for the closed-form geometries
// (plane, sphere, hole trap); hole trap requires both points on the same side
double greens_function(const Geometry& g, const std::array<double, 3>& r,
                       const std::array<double, 3>& rp);

// surface area element dS/(du dv) at a source point (e.g. s' for planes,
// a^2 sin(theta')-free R^2 sin... see implementation notes per geometry)
double surface_element(const Geometry& g, const SourcePoint& p);

} // namespace patchnoise::geometry
