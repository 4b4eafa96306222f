#include "patchnoise/scaling.hpp"

#include <cmath>
#include <stdexcept>

#include "patchnoise/errors.hpp"
#include "patchnoise/parallel.hpp"

namespace patchnoise::scaling {

namespace {

double lambda_or_throw(const geometry::Geometry& g, geometry::FieldMode k,
                       const patchmodel::PatchModel& patch, double D, lambda::Backend b,
                       const lambda::EvalOptions& eopt, const lambda::SpectralContext* ctx) {
    const double v = lambda::evaluate(g, k, patch, D, b, eopt, ctx).value;
    if (!(v > 0.0))
        throw LogOfZero("scaling: log of zero; the geometric factor vanishes at a stencil point");
    return v;
}

double central(const geometry::Geometry& g, geometry::FieldMode k,
               const patchmodel::PatchModel& patch, double D, double h, lambda::Backend b,
               const lambda::EvalOptions& eopt, const lambda::SpectralContext* ctx) {
    const double lp = lambda_or_throw(g, k, patch, D * std::exp(h), b, eopt, ctx);
    const double lm = lambda_or_throw(g, k, patch, D * std::exp(-h), b, eopt, ctx);
    return -(std::log(lp) - std::log(lm)) / (2.0 * h);
}

} // namespace

double alpha_at(const geometry::Geometry& g, geometry::FieldMode k,
                const patchmodel::PatchModel& patch, double D, const AlphaOptions& aopt,
                const lambda::EvalOptions& eopt, const lambda::SpectralContext* ctx) {
    if (!(aopt.h > 0.0) || aopt.h > 0.2)
        throw std::invalid_argument("scaling: log step h must lie in (0, 0.2]");
    if (!(D > 0.0)) throw std::domain_error("scaling: distance must be positive");
    const double a1 = central(g, k, patch, D, aopt.h, aopt.backend, eopt, ctx);
    if (!aopt.richardson) return a1;
    const double a2 = central(g, k, patch, D, 0.5 * aopt.h, aopt.backend, eopt, ctx);
    return (4.0 * a2 - a1) / 3.0;
}

std::vector<double> log_grid(double d_min, double d_max, int points) {
    if (!(d_min > 0.0) || !(d_max > d_min) || points < 2)
        throw std::invalid_argument("scaling: grid needs 0 < d_min < d_max and points >= 2");
    std::vector<double> g(static_cast<size_t>(points));
    const double l0 = std::log10(d_min), l1 = std::log10(d_max);
    for (int i = 0; i < points; ++i)
        g[static_cast<size_t>(i)] = std::pow(10.0, l0 + (l1 - l0) * i / (points - 1));
    return g;
}

std::vector<AlphaCurve> sweep_alpha(const geometry::Geometry& g, geometry::FieldMode k,
                                    const std::vector<patchmodel::PatchModel>& patches,
                                    const std::vector<double>& grid, const AlphaOptions& aopt,
                                    const lambda::EvalOptions& eopt,
                                    const lambda::SpectralContext* ctx) {
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("scaling: grid must be strictly increasing");

    // one shared context per sweep; sized for the largest truncation order
    int l_need = eopt.l_max;
    bool want_spectral = false;
    for (const auto& p : patches)
        if (p.regime == patchmodel::PatchModel::Regime::Truncated) {
            l_need = std::max(l_need, 2 * p.l0);
            want_spectral = true;
        } else if (p.regime == patchmodel::PatchModel::Regime::PointPatch) {
            want_spectral = true;
        }
    lambda::SpectralContext local;
    const lambda::SpectralContext* ctx_ptr = nullptr;
    const bool spheroid = std::holds_alternative<geometry::ProlateSpheroid>(g) ||
                          std::holds_alternative<geometry::OblateSpheroid>(g);
    if (spheroid && want_spectral &&
        (aopt.backend == lambda::Backend::Auto || aopt.backend == lambda::Backend::Spectral)) {
        if (ctx && ctx->l_max >= l_need && ctx->edge_delta == eopt.edge_delta) {
            ctx_ptr = ctx;
        } else {
            local = lambda::make_spectral_context(g, l_need, eopt.edge_delta);
            ctx_ptr = &local;
        }
    }

    std::vector<AlphaCurve> curves;
    for (const auto& patch : patches) {
        AlphaCurve c;
        c.geometry = std::visit(
            [](const auto& gg) -> std::string {
                using T = std::decay_t<decltype(gg)>;
                if constexpr (std::is_same_v<T, geometry::InfinitePlane>) return "plane";
                else if constexpr (std::is_same_v<T, geometry::HolePlane>) return "hole";
                else if constexpr (std::is_same_v<T, geometry::Sphere>) return "sphere";
                else if constexpr (std::is_same_v<T, geometry::ProlateSpheroid>) return "prolate";
                else return "oblate";
            },
            g);
        c.mode = geometry::mode_label(g, k);
        c.patch = patch.label();
        c.reference = std::visit(
            [](const auto& gg) -> std::string {
                using T = std::decay_t<decltype(gg)>;
                if constexpr (std::is_same_v<T, geometry::InfinitePlane>)
                    return "ion height above the plane";
                else if constexpr (std::is_same_v<T, geometry::HolePlane>)
                    return "hole radius, ion at the center";
                else if constexpr (std::is_same_v<T, geometry::Sphere>)
                    return "radial distance from the surface, in radii";
                else if constexpr (std::is_same_v<T, geometry::ProlateSpheroid>)
                    return "axial distance above the tip, in units of the spheroid radius";
                else
                    return "axial distance above the center, in units of a";
            },
            g);
        c.h = aopt.h;
        lambda::Backend eff = aopt.backend;
        if (eff == lambda::Backend::Auto) {
            if (patch.regime == patchmodel::PatchModel::Regime::Truncated ||
                (spheroid && patch.regime == patchmodel::PatchModel::Regime::PointPatch))
                eff = lambda::Backend::Spectral;
            else
                eff = lambda::Backend::Closed;
        }
        c.backend = lambda::backend_label(eff);
        c.samples.resize(grid.size());
        parallel::parallel_for(grid.size(), [&](size_t i) {
            const double D = grid[i];
            AlphaSample s;
            s.D = D;
            s.lambda = lambda::evaluate(g, k, patch, D, eff, eopt, ctx_ptr).value;
            AlphaOptions pa = aopt;
            pa.backend = eff;
            s.alpha = alpha_at(g, k, patch, D, pa, eopt, ctx_ptr);
            c.samples[i] = s;
        });
        curves.push_back(std::move(c));
    }
    return curves;
}

} // namespace patchnoise::scaling
