#pragma once

#include <string>
#include <vector>

#include "patchnoise/lambda.hpp"

// Scaling exponent alpha(D) = -d ln Lambda / d ln D, extracted by a central
// difference in ln D (exact on power laws), with optional Richardson
// extrapolation. Reference points and distance normalizations follow the
// per-geometry conventions of the lambda layer.

namespace patchnoise::scaling {

struct AlphaOptions {
    double h = 0.05;          // log-distance half step, in (0, 0.2]
    bool richardson = false;  // combine h and h/2 to cancel the h^2 error
    lambda::Backend backend = lambda::Backend::Auto;
};

// throws LogOfZero if Lambda vanishes (or is negative) at a stencil point
double alpha_at(const geometry::Geometry& g, geometry::FieldMode k,
                const patchmodel::PatchModel& patch, double D, const AlphaOptions& aopt = {},
                const lambda::EvalOptions& eopt = {}, const lambda::SpectralContext* ctx = nullptr);

struct AlphaSample {
    double D = 0.0;
    double lambda = 0.0;
    double alpha = 0.0;
};

struct AlphaCurve {
    std::string geometry;
    std::string mode;
    std::string patch;
    std::string backend;
    std::string reference; // reference point and sweep direction of D
    double h = 0.05;
    std::vector<AlphaSample> samples; // ordered by strictly increasing D
};

std::vector<double> log_grid(double d_min, double d_max, int points);

// one curve per patch model; grid points evaluated concurrently but emitted
// in grid order. A caller-supplied spectral context is reused when it covers
// the requested truncation orders; otherwise one is built for the sweep.
std::vector<AlphaCurve> sweep_alpha(const geometry::Geometry& g, geometry::FieldMode k,
                                    const std::vector<patchmodel::PatchModel>& patches,
                                    const std::vector<double>& grid,
                                    const AlphaOptions& aopt = {},
                                    const lambda::EvalOptions& eopt = {},
                                    const lambda::SpectralContext* ctx = nullptr);

} // namespace patchnoise::scaling
