#include "patchnoise/lambda.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "patchnoise/errors.hpp"
#include "patchnoise/quadrature.hpp"

namespace patchnoise::lambda {

namespace {

constexpr double pi = std::numbers::pi;
using geometry::FieldMode;
using geometry::Geometry;
using patchmodel::PatchModel;
using Regime = PatchModel::Regime;

double sq(double x) { return x * x; }

void require_unit_scale(const Geometry& g) {
    if (const auto* s = std::get_if<geometry::Sphere>(&g)) {
        if (s->radius != 1.0)
            throw std::invalid_argument("lambda: evaluation layer works with the unit sphere");
    } else if (const auto* p = std::get_if<geometry::ProlateSpheroid>(&g)) {
        if (p->a != 1.0)
            throw std::invalid_argument("lambda: evaluation layer works with the unit spheroid");
    } else if (const auto* o = std::get_if<geometry::OblateSpheroid>(&g)) {
        if (o->a != 1.0)
            throw std::invalid_argument("lambda: evaluation layer works with the unit spheroid");
    }
}

void require_positive_distance(double D) {
    if (!(D > 0.0)) throw std::domain_error("lambda: dimensionless distance must be positive");
}

int unit_power_for(const Geometry& g, FieldMode k, Regime regime) {
    if (std::holds_alternative<geometry::InfinitePlane>(g))
        return regime == Regime::InfinitePatch ? 0 : 4;
    if (std::holds_alternative<geometry::HolePlane>(g)) {
        if (k == FieldMode::Normal) return regime == Regime::InfinitePatch ? 2 : 4;
        return regime == Regime::InfinitePatch ? 0 : 4;
    }
    return k == FieldMode::Normal ? 4 : 6;
}

LambdaResult make_result(const Geometry& g, FieldMode k, const PatchModel& patch, Backend b,
                         double value, int l_used = 0, double residual = 0.0) {
    LambdaResult r;
    r.value = value;
    r.backend = b;
    r.l_used = l_used;
    r.residual = residual;
    r.unit_power = unit_power_for(g, k, patch.regime);
    r.has_patch_area_factor = patch.regime != Regime::InfinitePatch;
    return r;
}

// field xi coordinate for a spheroid at dimensionless distance D
double spheroid_field_xi(const Geometry& g, double D) {
    if (const auto* p = std::get_if<geometry::ProlateSpheroid>(&g))
        return p->xi0 + D * std::sqrt(sq(p->xi0) - 1.0);
    return D; // oblate: z = a xi on the axis
}

// ---- closed forms ----

LambdaResult closed_impl(const Geometry& g, FieldMode k, const PatchModel& patch, double D,
                         const EvalOptions& opt) {
    require_unit_scale(g);
    require_positive_distance(D);
    const bool ip = patch.regime == Regime::InfinitePatch;
    if (patch.regime == Regime::Truncated)
        throw NoClosedForm("lambda: truncated patch models have no closed form");
    const double an = patch.a_over_n;

    if (std::holds_alternative<geometry::InfinitePlane>(g)) {
        if (ip) return make_result(g, k, patch, Backend::Closed, 0.0);
        const double c = (k == FieldMode::Normal) ? 3.0 / (16.0 * pi) : 3.0 / (32.0 * pi);
        return make_result(g, k, patch, Backend::Closed, an * c / std::pow(D, 4));
    }
    if (std::holds_alternative<geometry::HolePlane>(g)) {
        if (k == FieldMode::Normal) {
            if (ip) return make_result(g, k, patch, Backend::Closed, 0.25 / sq(D));
            return make_result(g, k, patch, Backend::Closed, an / (32.0 * pi * std::pow(D, 4)));
        }
        if (ip) return make_result(g, k, patch, Backend::Closed, 0.0);
        if (!(opt.edge_delta > 0.0))
            throw EdgeSingular("lambda: the hole-trap radial mode needs an edge exclusion delta > 0");
        // small-delta asymptotic of the edge-regularized radial integral
        const double v = an * (2.0 * std::log(D / (2.0 * opt.edge_delta)) - 3.0) /
                         (4.0 * pi * pi * pi * std::pow(D, 4));
        return make_result(g, k, patch, Backend::Closed, v);
    }
    if (std::holds_alternative<geometry::Sphere>(g)) {
        const double r = 1.0 + D;
        const double r2 = r * r;
        if (k == FieldMode::Normal) {
            if (ip) return make_result(g, k, patch, Backend::Closed, 1.0 / sq(r2));
            const double v = an * (3.0 + 8.0 * r2 + sq(r2)) / (4.0 * pi * std::pow(r2 - 1.0, 4));
            return make_result(g, k, patch, Backend::Closed, v);
        }
        if (ip) return make_result(g, k, patch, Backend::Closed, 0.0);
        const double v = an * 3.0 * (1.0 + r2) / (4.0 * pi * std::pow(r2 - 1.0, 4));
        return make_result(g, k, patch, Backend::Closed, v);
    }
    if (const auto* p = std::get_if<geometry::ProlateSpheroid>(&g)) {
        if (!ip) throw NoClosedForm("lambda: spheroid point-patch values need the spectral backend");
        if (k == FieldMode::Transverse) return make_result(g, k, patch, Backend::Closed, 0.0);
        const double xi = spheroid_field_xi(g, D);
        const double q0 = 0.5 * std::log((p->xi0 + 1.0) / (p->xi0 - 1.0));
        return make_result(g, k, patch, Backend::Closed, 1.0 / sq((sq(xi) - 1.0) * q0));
    }
    const auto& o = std::get<geometry::OblateSpheroid>(g);
    if (!ip) throw NoClosedForm("lambda: spheroid point-patch values need the spectral backend");
    if (k == FieldMode::Transverse) return make_result(g, k, patch, Backend::Closed, 0.0);
    const double xi = spheroid_field_xi(g, D);
    const double q0 = std::atan2(1.0, o.xi0); // arccot
    return make_result(g, k, patch, Backend::Closed, 1.0 / sq((1.0 + sq(xi)) * q0));
}

// ---- spectral backend ----

LambdaResult sphere_spectral(const Geometry& g, FieldMode k, const PatchModel& patch, double D,
                             const EvalOptions& opt) {
    const double r = 1.0 + D;
    const double x = 1.0 / (r * r);
    const bool normal = (k == FieldMode::Normal);
    if (patch.regime == Regime::InfinitePatch) {
        // the monopole is the whole coherent sum
        const double v = normal ? std::pow(r, -4.0) : 0.0;
        return make_result(g, k, patch, Backend::Spectral, v, 0, 0.0);
    }
    const int top = (patch.regime == Regime::Truncated) ? patch.l0 : opt.l_max;
    double sum = 0.0;
    double term = 0.0;
    const int l_first = normal ? 0 : 1;
    double xl = std::pow(x, l_first + 2); // r^{-(2l+4)}
    for (int l = l_first; l <= top; ++l) {
        const double w = normal ? (2.0 * l + 1.0) * sq(l + 1.0) / (4.0 * pi)
                                : (2.0 * l + 1.0) * l * (l + 1.0) / (8.0 * pi);
        term = w * xl;
        if (patch.spectral_weight) term *= patch.spectral_weight(l);
        sum += term;
        xl *= x;
        if (term > 0.0 && term < 1e-18 * sum && patch.regime == Regime::PointPatch) break;
    }
    double residual = 0.0;
    if (patch.regime == Regime::PointPatch) {
        const double q = x * sq((top + 2.0) / (top + 1.0)) * (2.0 * top + 3.0) / (2.0 * top + 1.0);
        residual = (q < 1.0) ? term * q / (1.0 - q) : HUGE_VAL;
        if (!(residual <= opt.rel_tol * sum))
            throw NotConverged("lambda: sphere point-patch sum not converged by l_max", residual);
    }
    return make_result(g, k, patch, Backend::Spectral, patch.a_over_n * sum, top,
                       patch.a_over_n * residual);
}

LambdaResult spheroid_spectral(const SpectralContext& ctx, FieldMode k, const PatchModel& patch,
                               double D, const EvalOptions& opt) {
    const Geometry& g = ctx.g;
    const bool prolate = std::holds_alternative<geometry::ProlateSpheroid>(g);
    const double xi0 = prolate ? std::get<geometry::ProlateSpheroid>(g).xi0
                               : std::get<geometry::OblateSpheroid>(g).xi0;
    const double xi = spheroid_field_xi(g, D);
    if (xi <= xi0) throw std::domain_error("lambda: spheroid field point must be exterior");

    if (patch.regime == Regime::InfinitePatch) {
        double v = 0.0;
        if (k == FieldMode::Normal) {
            if (prolate) {
                const double q0 = 0.5 * std::log((xi0 + 1.0) / (xi0 - 1.0));
                v = 1.0 / sq((sq(xi) - 1.0) * q0);
            } else {
                v = 1.0 / sq((1.0 + sq(xi)) * std::atan2(1.0, xi0));
            }
        }
        return make_result(g, k, patch, Backend::Spectral, v, 0, 0.0);
    }

    const bool normal = (k == FieldMode::Normal);
    const auto& table = normal ? *ctx.c_m0 : *ctx.c_m1;
    const int L = (patch.regime == Regime::Truncated) ? std::min(2 * patch.l0, table.l_max)
                                                      : table.l_max;
    if (patch.regime == Regime::Truncated && 2 * patch.l0 > table.l_max)
        throw std::invalid_argument("lambda: spectral context l_max too small for the truncation order");

    // per-l gradient factors of the eigenfunctions on the axis
    const int m = normal ? 0 : 1;
    std::vector<double> gvec(static_cast<size_t>(L) + 1, 0.0);
    if (prolate) {
        const auto fam = normal ? specfun::legendre_q_family(L, xi) : specfun::legendre_q1_family(L, xi);
        const auto fam0 = normal ? specfun::legendre_q_family(L, xi0) : specfun::legendre_q1_family(L, xi0);
        for (int l = m; l <= L; ++l) {
            const double rho = std::exp(fam.log_value(l) - fam0.log_value(l));
            gvec[static_cast<size_t>(l)] =
                normal ? fam.deriv_over_value(l) * rho * specfun::legendre_p_norm_at_one(l)
                       : rho * specfun::transverse_axis_slope(l);
        }
    } else {
        const auto fam = normal ? specfun::legendre_q_imag_family(L, xi) : specfun::legendre_q1_imag_family(L, xi);
        const auto fam0 = normal ? specfun::legendre_q_imag_family(L, xi0) : specfun::legendre_q1_imag_family(L, xi0);
        for (int l = m; l <= L; ++l) {
            const double rho = std::exp(fam.log_value(l) - fam0.log_value(l));
            gvec[static_cast<size_t>(l)] =
                normal ? fam.deriv_over_value(l) * rho * specfun::legendre_p_norm_at_one(l)
                       : rho * specfun::transverse_axis_slope(l);
        }
    }

    if (patch.spectral_weight)
        for (int l = m; l <= L; ++l)
            gvec[static_cast<size_t>(l)] *= std::sqrt(patch.spectral_weight(l));

    const int pair_cap = (patch.regime == Regime::Truncated) ? 2 * patch.l0 : 2 * L + 1;
    std::vector<double> shell(static_cast<size_t>(L) + 1, 0.0);
    for (int l = m; l <= L; ++l)
        for (int lp = m; lp <= L; ++lp) {
            if (l + lp > pair_cap) continue;
            shell[static_cast<size_t>(std::max(l, lp))] += table.at(l, lp) * gvec[static_cast<size_t>(l)] * gvec[static_cast<size_t>(lp)];
        }
    double sum = 0.0;
    for (double s : shell) sum += s;

    double pref;
    if (normal) {
        pref = 1.0 / (2.0 * pi);
    } else {
        const double trans_metric = prolate ? (sq(xi) - 1.0) : (sq(xi) + 1.0);
        pref = 2.0 / (2.0 * pi * trans_metric);
    }
    pref /= prolate ? std::sqrt(sq(xi0) - 1.0) : std::sqrt(1.0 + sq(xi0));

    double residual = 0.0;
    if (patch.regime == Regime::PointPatch) {
        // geometric-shell tail estimate from the last two shell blocks
        const int nb = std::max(2, L / 16);
        double last = 0.0, prev = 0.0;
        for (int l = L - nb + 1; l <= L; ++l) last += std::abs(shell[static_cast<size_t>(l)]);
        for (int l = L - 2 * nb + 1; l <= L - nb; ++l) prev += std::abs(shell[static_cast<size_t>(l)]);
        double q = (prev > 0.0) ? std::min(last / prev, 0.999) : 0.0;
        residual = std::abs(pref) * ((last > 0.0) ? last * q / (1.0 - q) : 0.0);
        if (!(residual <= opt.rel_tol * std::abs(pref * sum)) && residual > 1e-300)
            throw NotConverged("lambda: spheroid point-patch sum not converged by l_max", residual);
    }
    return make_result(g, k, patch, Backend::Spectral, patch.a_over_n * pref * sum, L,
                       patch.a_over_n * residual);
}

// ---- quadrature backend ----

struct KernelTrack {
    double worst_rel = 0.0;
    void note(const geometry::SeriesValue& v) {
        if (v.value != 0.0) worst_rel = std::max(worst_rel, v.residual / std::abs(v.value));
    }
};

LambdaResult quad_impl(const Geometry& g, FieldMode k, const PatchModel& patch, double D,
                       const EvalOptions& opt) {
    require_unit_scale(g);
    require_positive_distance(D);
    if (patch.regime == Regime::Truncated)
        throw std::invalid_argument("lambda: the quadrature backend handles the IP and PP regimes");
    const bool ip = patch.regime == Regime::InfinitePatch;
    const bool normal = (k == FieldMode::Normal);
    const double an = patch.a_over_n;
    quadrature::Tolerance qt{opt.quad_abs_tol, opt.quad_rel_tol, 4000};
    const geometry::SeriesSpec spec{opt.l_max, opt.rel_tol};
    KernelTrack track;

    // transverse coherent integrals vanish by azimuthal parity everywhere
    if (ip && !normal) return make_result(g, k, patch, Backend::Quadrature, 0.0);

    auto finish = [&](double value, const quadrature::Result& q) {
        double residual = q.error + 2.0 * track.worst_rel * std::abs(value);
        if (!q.converged)
            throw NotConverged("lambda: surface quadrature did not reach tolerance", residual);
        return make_result(g, k, patch, Backend::Quadrature, value, opt.l_max, residual);
    };

    if (std::holds_alternative<geometry::InfinitePlane>(g)) {
        const geometry::FieldPoint field{0.0, 0.0, D};
        auto amp = [&](double sp) {
            auto v = geometry::grad_surface_green(g, k, field, {sp, 0.0}, spec);
            track.note(v);
            return v.value;
        };
        // radial integral over the plane, compactified by s' = D tan u
        auto transform = [&](const std::function<double(double)>& f) {
            return quadrature::integrate(
                [&](double u) {
                    const double sp = D * std::tan(u);
                    const double jac = D / sq(std::cos(u));
                    return f(sp) * jac;
                },
                0.0, pi / 2.0 - 1e-12, qt);
        };
        if (ip) {
            auto q = transform([&](double sp) { return amp(sp) * 2.0 * pi * sp; });
            return finish(sq(q.value), q);
        }
        const double azfac = normal ? 2.0 * pi : pi;
        auto q = transform([&](double sp) { return sq(amp(sp)) * azfac * sp; });
        return finish(an * q.value, q);
    }

    if (std::holds_alternative<geometry::HolePlane>(g)) {
        const geometry::HolePlane hole{D};
        const Geometry hg = hole;
        const geometry::FieldPoint center{0.0, 0.0, 0.0};
        auto amp = [&](double sp) {
            auto v = geometry::grad_surface_green(hg, k, center, {sp, 0.0}, spec);
            track.note(v);
            return v.value;
        };
        if (normal) {
            // s' = D sec u maps (D, inf) to a finite interval; near u = 0 the
            // Jacobian vanishes and s' can round onto the edge itself
            auto transform = [&](const std::function<double(double)>& f) {
                return quadrature::integrate(
                    [&](double u) {
                        const double sp = D / std::cos(u);
                        if (!(sp > D)) return 0.0;
                        const double jac = D * std::tan(u) / std::cos(u);
                        return f(sp) * jac;
                    },
                    0.0, pi / 2.0 - 1e-12, qt);
            };
            if (ip) {
                auto q = transform([&](double sp) { return amp(sp) * 2.0 * pi * sp; });
                return finish(sq(q.value), q);
            }
            auto q = transform([&](double sp) { return sq(amp(sp)) * 2.0 * pi * sp; });
            return finish(an * q.value, q);
        }
        if (!(opt.edge_delta > 0.0))
            throw EdgeSingular("lambda: the hole-trap radial mode needs an edge exclusion delta > 0");
        // s' = D cosh v absorbs the edge square root; delta is an absolute length
        const double v0 = std::acosh(1.0 + opt.edge_delta / D);
        auto q = quadrature::integrate_semi_infinite(
            [&](double v) {
                if (v > 60.0) return 0.0; // integrand ~ e^{-8v}, cosh overflows far earlier
                const double sp = D * std::cosh(v);
                const double jac = D * std::sinh(v);
                return sq(amp(sp)) * pi * sp * jac;
            },
            v0, 1.0, qt);
        return finish(an * q.value, q);
    }

    if (std::holds_alternative<geometry::Sphere>(g)) {
        const geometry::FieldPoint field{1.0 + D, 0.0, 0.0};
        auto amp = [&](double thp) {
            auto v = geometry::grad_surface_green(g, k, field, {thp, 0.0}, spec);
            track.note(v);
            return v.value;
        };
        if (ip) {
            auto q = quadrature::integrate(
                [&](double thp) { return amp(thp) * 2.0 * pi * std::sin(thp); }, 0.0, pi, qt);
            return finish(sq(q.value), q);
        }
        const double azfac = normal ? 2.0 * pi : pi;
        auto q = quadrature::integrate(
            [&](double thp) { return sq(amp(thp)) * azfac * std::sin(thp); }, 0.0, pi, qt);
        return finish(an * q.value, q);
    }

    // spheroids, field on the axis
    const bool prolate = std::holds_alternative<geometry::ProlateSpheroid>(g);
    const double xi0 = prolate ? std::get<geometry::ProlateSpheroid>(g).xi0
                               : std::get<geometry::OblateSpheroid>(g).xi0;
    const double xi = spheroid_field_xi(g, D);
    const geometry::FieldPoint field{xi, 1.0, 0.0};
    auto amp = [&](double etap) {
        auto v = geometry::grad_surface_green(g, k, field, {etap, 0.0}, spec);
        track.note(v);
        return v.value;
    };
    auto element = [&](double etap) { return geometry::surface_element(g, {etap, 0.0}); };

    if (ip) { // integrand is smooth across the whole eta range
        auto q = quadrature::integrate(
            [&](double etap) { return amp(etap) * 2.0 * pi * element(etap); }, -1.0, 1.0, qt);
        return finish(sq(q.value), q);
    }
    const double azfac = normal ? 2.0 * pi : pi;
    const bool disc = !prolate && xi0 == 0.0;
    if (disc) {
        if (!(opt.edge_delta > 0.0))
            throw EdgeSingular("lambda: disc point-patch integrals need an edge exclusion delta > 0");
        // eta' = +-exp(-u) handles the 1/|eta'| edge weight
        const double umax = std::log(1.0 / opt.edge_delta);
        auto q = quadrature::integrate(
            [&](double u) {
                const double e = std::exp(-u);
                return (sq(amp(e)) * element(e) + sq(amp(-e)) * element(-e)) * azfac * e;
            },
            0.0, umax, qt);
        return finish(an * q.value, q);
    }
    if (prolate) {
        const double t1 = std::asin(1.0 / xi0);
        auto q = quadrature::integrate(
            [&](double t) {
                const double etap = xi0 * std::sin(t);
                const double jac = xi0 * std::cos(t);
                return sq(amp(etap)) * azfac * element(etap) * jac;
            },
            -t1, t1, qt);
        return finish(an * q.value, q);
    }
    const double t1 = std::asinh(1.0 / xi0);
    auto q = quadrature::integrate(
        [&](double t) {
            const double etap = xi0 * std::sinh(t);
            const double jac = xi0 * std::cosh(t);
            return sq(amp(etap)) * azfac * element(etap) * jac;
        },
        -t1, t1, qt);
    return finish(an * q.value, q);
}

} // namespace

std::string backend_label(Backend b) {
    switch (b) {
        case Backend::Auto: return "auto";
        case Backend::Closed: return "closed";
        case Backend::Spectral: return "spectral";
        case Backend::Quadrature: return "quadrature";
    }
    return "?";
}

SpectralContext make_spectral_context(const geometry::Geometry& g, int l_max, double edge_delta) {
    geometry::validate(g);
    SpectralContext ctx;
    ctx.g = g;
    ctx.l_max = l_max;
    ctx.edge_delta = edge_delta;
    const bool prolate = std::holds_alternative<geometry::ProlateSpheroid>(g);
    const bool oblate = std::holds_alternative<geometry::OblateSpheroid>(g);
    if (prolate || oblate) {
        const auto kind = prolate ? patchmodel::SpheroidKind::Prolate : patchmodel::SpheroidKind::Oblate;
        const double xi0 = prolate ? std::get<geometry::ProlateSpheroid>(g).xi0
                                   : std::get<geometry::OblateSpheroid>(g).xi0;
        ctx.c_m0 = std::make_shared<patchmodel::CoefficientTable>(
            patchmodel::build_coefficient_table(kind, 0, xi0, l_max, edge_delta));
        ctx.c_m1 = std::make_shared<patchmodel::CoefficientTable>(
            patchmodel::build_coefficient_table(kind, 1, xi0, l_max, edge_delta));
    }
    return ctx;
}

LambdaResult lambda_closed(const Geometry& g, FieldMode k, const PatchModel& patch, double D,
                           const EvalOptions& opt) {
    return closed_impl(g, k, patch, D, opt);
}

LambdaResult lambda_spectral(const SpectralContext& ctx, FieldMode k, const PatchModel& patch,
                             double D, const EvalOptions& opt) {
    require_unit_scale(ctx.g);
    require_positive_distance(D);
    if (std::holds_alternative<geometry::Sphere>(ctx.g)) return sphere_spectral(ctx.g, k, patch, D, opt);
    if (std::holds_alternative<geometry::ProlateSpheroid>(ctx.g) ||
        std::holds_alternative<geometry::OblateSpheroid>(ctx.g))
        return spheroid_spectral(ctx, k, patch, D, opt);
    throw std::invalid_argument("lambda: the spectral backend covers the sphere and spheroids");
}

LambdaResult lambda_quadrature(const Geometry& g, FieldMode k, const PatchModel& patch, double D,
                               const EvalOptions& opt) {
    return quad_impl(g, k, patch, D, opt);
}

LambdaResult evaluate(const Geometry& g, FieldMode k, const PatchModel& patch, double D,
                      Backend backend, const EvalOptions& opt, const SpectralContext* ctx) {
    switch (backend) {
        case Backend::Closed: return lambda_closed(g, k, patch, D, opt);
        case Backend::Quadrature: return lambda_quadrature(g, k, patch, D, opt);
        case Backend::Spectral: {
            if (ctx) return lambda_spectral(*ctx, k, patch, D, opt);
            const int need = (patch.regime == Regime::Truncated) ? std::max(opt.l_max, 2 * patch.l0)
                                                                 : opt.l_max;
            const SpectralContext local = make_spectral_context(g, need, opt.edge_delta);
            return lambda_spectral(local, k, patch, D, opt);
        }
        case Backend::Auto: {
            const bool spheroid = std::holds_alternative<geometry::ProlateSpheroid>(g) ||
                                  std::holds_alternative<geometry::OblateSpheroid>(g);
            const bool sphere = std::holds_alternative<geometry::Sphere>(g);
            if (patch.regime == Regime::Truncated) {
                if (!sphere && !spheroid)
                    throw std::invalid_argument(
                        "lambda: truncated patch models exist for the sphere and spheroids");
                return evaluate(g, k, patch, D, Backend::Spectral, opt, ctx);
            }
            if (spheroid && patch.regime == Regime::PointPatch)
                return evaluate(g, k, patch, D, Backend::Spectral, opt, ctx);
            return lambda_closed(g, k, patch, D, opt);
        }
    }
    throw std::logic_error("lambda: unknown backend");
}

} // namespace patchnoise::lambda
