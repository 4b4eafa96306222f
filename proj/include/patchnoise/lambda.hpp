#pragma once

#include <memory>
#include <string>

#include "patchnoise/geometry.hpp"
#include "patchnoise/patchmodel.hpp"

// The geometric factor Lambda_k at a dimensionless distance D above the
// electrode, via three mutually cross-validating backends:
//   closed      printed closed forms
//   spectral    eigenfunction sums (sphere and spheroids)
//   quadrature  direct adaptive surface integration of the defining integral
//
// Geometries are unit-scale (sphere radius 1, spheroid focal scale 1); the
// hole trap uses the hole radius itself as the scaling variable, so there D
// IS the hole radius with the ion pinned at the center. Evaluation points sit
// on the symmetry axis:
//   plane   ion at height D
//   hole    ion at the hole center, radius D
//   sphere  r = 1 + D
//   prolate xi = xi0 + D sqrt(xi0^2 - 1)   (D in units of the spheroid radius)
//   oblate  xi = D                          (D in units of a)
//
// Values are reported nondimensionalized by the geometry scale; point-patch
// and truncated values carry one factor of the patch area ratio A/N.

namespace patchnoise::lambda {

enum class Backend { Auto, Closed, Spectral, Quadrature };

std::string backend_label(Backend b);

struct LambdaResult {
    double value = 0.0;
    Backend backend = Backend::Closed;
    int l_used = 0;
    double residual = 0.0; // absolute uncertainty estimate (0 for closed forms)
    int unit_power = 0;    // far-field inverse power of distance, for unit display
    bool has_patch_area_factor = false;
};

struct EvalOptions {
    int l_max = 256;
    double rel_tol = 1e-8;      // series tolerance
    double quad_abs_tol = 1e-13;
    double quad_rel_tol = 1e-9;
    double edge_delta = 0.0;    // edge exclusion for hole transverse / disc
};

// precomputed spheroid coefficient tables (m = 0 and |m| = 1) reused across a
// sweep; immutable after construction, safe to share across threads
struct SpectralContext {
    geometry::Geometry g;
    int l_max = 256;
    double edge_delta = 0.0;
    std::shared_ptr<const patchmodel::CoefficientTable> c_m0, c_m1;
};

SpectralContext make_spectral_context(const geometry::Geometry& g, int l_max,
                                      double edge_delta = 0.0);

LambdaResult lambda_closed(const geometry::Geometry& g, geometry::FieldMode k,
                           const patchmodel::PatchModel& patch, double D,
                           const EvalOptions& opt = {});

LambdaResult lambda_spectral(const SpectralContext& ctx, geometry::FieldMode k,
                             const patchmodel::PatchModel& patch, double D,
                             const EvalOptions& opt = {});

LambdaResult lambda_quadrature(const geometry::Geometry& g, geometry::FieldMode k,
                               const patchmodel::PatchModel& patch, double D,
                               const EvalOptions& opt = {});

// backend dispatch; Auto prefers closed, then spectral
LambdaResult evaluate(const geometry::Geometry& g, geometry::FieldMode k,
                      const patchmodel::PatchModel& patch, double D, Backend backend,
                      const EvalOptions& opt = {}, const SpectralContext* ctx = nullptr);

} // namespace patchnoise::lambda
