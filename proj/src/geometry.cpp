#include "patchnoise/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace patchnoise::geometry {

namespace {

using specfun::LegendreQFamily;

constexpr double pi = std::numbers::pi;
constexpr double axis_eps = 1e-12;

double sq(double x) { return x * x; }

double geometry_scale(const Geometry& g) {
    return std::visit(
        [](const auto& gg) -> double {
            using T = std::decay_t<decltype(gg)>;
            if constexpr (std::is_same_v<T, InfinitePlane>) return 1.0;
            else if constexpr (std::is_same_v<T, HolePlane>) return gg.hole_radius;
            else if constexpr (std::is_same_v<T, Sphere>) return gg.radius;
            else return gg.a;
        },
        g);
}

void check_proximity(const Geometry& g, const FieldPoint& r, const SourcePoint& rp) {
    const auto a = to_cartesian(g, r);
    const auto b = source_to_cartesian(g, rp);
    const double dist = std::sqrt(sq(a[0] - b[0]) + sq(a[1] - b[1]) + sq(a[2] - b[2]));
    if (dist < 1e-9 * geometry_scale(g))
        throw std::domain_error("geometry: field point within the proximity floor of the source point");
}

void require_on_axis(double eta) {
    if (std::abs(eta - 1.0) > axis_eps)
        throw std::invalid_argument("geometry: spheroid evaluation is supported on the axis (eta = 1)");
}

// ---- hole trap internals (top face z = 0+, s' > d) ----

struct HoleAux {
    double gamma0;  // |r - r'| with the source on the sheet
    double psi0;
};

HoleAux hole_aux(double d, double s, double z, double sp, double dphi) {
    HoleAux h;
    h.gamma0 = std::sqrt(sq(s) + sq(sp) - 2.0 * s * sp * std::cos(dphi) + sq(z));
    const double big_r = std::sqrt((sq(z) + sq(s - d)) * (sq(z) + sq(s + d)));
    const double w = sq(s) + sq(z) - sq(d);
    // w + R cancels catastrophically near the sheet plane inside the hole;
    // R^2 - w^2 = 4 d^2 z^2 exactly, so divide instead of subtracting
    const double wr = (w >= 0.0) ? w + big_r : 4.0 * sq(d) * sq(z) / (big_r - w);
    h.psi0 = std::sqrt((sq(sp) - sq(d)) * wr) / (std::sqrt(2.0) * d);
    return h;
}

double hole_surface_green(double d, double s, double z, double sp, double dphi) {
    if (sp <= d) throw std::domain_error("geometry: hole-trap source lies off the sheet (s' <= d)");
    if (z < 0.0) throw std::invalid_argument("geometry: hole-trap field point must be on the source side (z >= 0)");
    if (z == 0.0) {
        if (s >= d) throw std::domain_error("geometry: in-plane hole-trap field point must lie inside the hole");
        const double g2 = sq(s) + sq(sp) - 2.0 * s * sp * std::cos(dphi);
        return std::sqrt((sq(d) - sq(s)) / (sq(sp) - sq(d))) / (2.0 * pi * pi * g2);
    }
    const HoleAux h = hole_aux(d, s, z, sp, dphi);
    const double t = std::atan(h.psi0 / h.gamma0);
    return (z / (4.0 * pi)) * ((1.0 + (2.0 / pi) * t) / (h.gamma0 * h.gamma0 * h.gamma0) +
                               (2.0 / pi) / (h.psi0 * h.gamma0 * h.gamma0));
}

// ---- spheroid series assembly on the axis ----

struct SpheroidSum {
    double value = 0.0;
    int l_used = 0;
    double residual = 0.0;
    bool converged = false;
};

// sums pref * sum_l w_l * rho_l(xi)/rho_l(xi0) * Pbar_lm(eta'), where the
// per-l weight and the Q families are supplied by the caller
template <class WeightFn>
SpheroidSum spheroid_series(const LegendreQFamily& fam_xi, const LegendreQFamily& fam_xi0,
                            int m, double eta_p, int l_max, double rel_tol, double pref,
                            WeightFn&& weight) {
    std::vector<double> pb;
    specfun::legendre_p_norm_column(l_max, m, eta_p, pb);
    SpheroidSum out;
    double sum = 0.0;
    double last = 0.0;
    for (int l = m; l <= l_max; ++l) {
        const double rho = std::exp(fam_xi.log_value(l) - fam_xi0.log_value(l));
        last = weight(l) * rho * pb[static_cast<size_t>(l - m)];
        sum += last;
    }
    // geometric tail bound from the exact per-step decay of the Q ratio
    double step = std::exp(fam_xi.log_value(l_max) - fam_xi.log_value(l_max - 1) -
                           fam_xi0.log_value(l_max) + fam_xi0.log_value(l_max - 1));
    step = std::min(step, 0.999999);
    const double rho_last = std::exp(fam_xi.log_value(l_max) - fam_xi0.log_value(l_max));
    const double env = std::abs(weight(l_max)) * std::sqrt((2.0 * l_max + 3.0) / std::max(2.0 * l_max + 1.0, 1.0));
    const double tail = env * rho_last * step / sq(1.0 - step);
    out.value = pref * sum;
    out.l_used = l_max;
    out.residual = std::abs(pref) * tail;
    out.converged = out.residual <= rel_tol * std::abs(out.value) || out.residual <= 1e-300;
    return out;
}

} // namespace

void validate(const Geometry& g) {
    std::visit(
        [](const auto& gg) {
            using T = std::decay_t<decltype(gg)>;
            if constexpr (std::is_same_v<T, HolePlane>) {
                if (!(gg.hole_radius > 0.0)) throw std::invalid_argument("geometry: hole radius must be positive");
            } else if constexpr (std::is_same_v<T, Sphere>) {
                if (!(gg.radius > 0.0)) throw std::invalid_argument("geometry: sphere radius must be positive");
            } else if constexpr (std::is_same_v<T, ProlateSpheroid>) {
                if (!(gg.a > 0.0)) throw std::invalid_argument("geometry: focal scale must be positive");
                if (!(gg.xi0 > 1.0)) throw std::invalid_argument("geometry: prolate spheroid needs xi0 > 1");
            } else if constexpr (std::is_same_v<T, OblateSpheroid>) {
                if (!(gg.a > 0.0)) throw std::invalid_argument("geometry: focal scale must be positive");
                if (gg.xi0 < 0.0) throw std::invalid_argument("geometry: oblate spheroid needs xi0 >= 0");
            }
        },
        g);
}

std::string mode_label(const Geometry& g, FieldMode k) {
    const bool n = (k == FieldMode::Normal);
    if (std::holds_alternative<InfinitePlane>(g)) return n ? "z" : "x";
    if (std::holds_alternative<HolePlane>(g)) return n ? "z" : "s";
    if (std::holds_alternative<Sphere>(g)) return n ? "r" : "theta";
    return n ? "xi" : "eta";
}

std::array<double, 3> to_cartesian(const Geometry& g, const FieldPoint& p) {
    return std::visit(
        [&](const auto& gg) -> std::array<double, 3> {
            using T = std::decay_t<decltype(gg)>;
            if constexpr (std::is_same_v<T, InfinitePlane> || std::is_same_v<T, HolePlane>) {
                return {p.c1, p.c2, p.c3};
            } else if constexpr (std::is_same_v<T, Sphere>) {
                const double r = p.c1, th = p.c2, ph = p.c3;
                return {r * std::sin(th) * std::cos(ph), r * std::sin(th) * std::sin(ph), r * std::cos(th)};
            } else if constexpr (std::is_same_v<T, ProlateSpheroid>) {
                const double xi = p.c1, eta = p.c2, ph = p.c3;
                const double rho = gg.a * std::sqrt(std::max(0.0, (xi * xi - 1.0) * (1.0 - eta * eta)));
                return {rho * std::cos(ph), rho * std::sin(ph), gg.a * xi * eta};
            } else {
                const double xi = p.c1, eta = p.c2, ph = p.c3;
                const double rho = gg.a * std::sqrt(std::max(0.0, (1.0 + xi * xi) * (1.0 - eta * eta)));
                return {rho * std::cos(ph), rho * std::sin(ph), gg.a * xi * eta};
            }
        },
        g);
}

std::array<double, 3> source_to_cartesian(const Geometry& g, const SourcePoint& p) {
    return std::visit(
        [&](const auto& gg) -> std::array<double, 3> {
            using T = std::decay_t<decltype(gg)>;
            if constexpr (std::is_same_v<T, InfinitePlane> || std::is_same_v<T, HolePlane>) {
                return {p.u * std::cos(p.v), p.u * std::sin(p.v), 0.0};
            } else if constexpr (std::is_same_v<T, Sphere>) {
                return to_cartesian(g, FieldPoint{gg.radius, p.u, p.v});
            } else if constexpr (std::is_same_v<T, ProlateSpheroid>) {
                return to_cartesian(g, FieldPoint{gg.xi0, p.u, p.v});
            } else {
                return to_cartesian(g, FieldPoint{gg.xi0, p.u, p.v});
            }
        },
        g);
}

FieldPoint field_from_cartesian(const Geometry& g, const std::array<double, 3>& xyz) {
    const double x = xyz[0], y = xyz[1], z = xyz[2];
    return std::visit(
        [&](const auto& gg) -> FieldPoint {
            using T = std::decay_t<decltype(gg)>;
            if constexpr (std::is_same_v<T, InfinitePlane> || std::is_same_v<T, HolePlane>) {
                return {x, y, z};
            } else if constexpr (std::is_same_v<T, Sphere>) {
                const double r = std::sqrt(x * x + y * y + z * z);
                return {r, std::atan2(std::hypot(x, y), z), std::atan2(y, x)};
            } else if constexpr (std::is_same_v<T, ProlateSpheroid>) {
                const double r1 = std::sqrt(x * x + y * y + sq(z - gg.a));
                const double r2 = std::sqrt(x * x + y * y + sq(z + gg.a));
                return {(r1 + r2) / (2.0 * gg.a), (r2 - r1) / (2.0 * gg.a), std::atan2(y, x)};
            } else {
                const double rho = std::hypot(x, y);
                const double p = std::sqrt(sq(rho + gg.a) + z * z);
                const double q = std::sqrt(sq(rho - gg.a) + z * z);
                const double u = (p + q) / (2.0 * gg.a);
                const double v = (p - q) / (2.0 * gg.a);
                const double xi = std::sqrt(std::max(0.0, u * u - 1.0));
                double eta = std::sqrt(std::max(0.0, 1.0 - v * v));
                if (z < 0.0) eta = -eta;
                return {xi, eta, std::atan2(y, x)};
            }
        },
        g);
}

bool is_exterior(const Geometry& g, const FieldPoint& p) {
    return std::visit(
        [&](const auto& gg) -> bool {
            using T = std::decay_t<decltype(gg)>;
            if constexpr (std::is_same_v<T, InfinitePlane>) return p.c3 > 0.0;
            else if constexpr (std::is_same_v<T, HolePlane>)
                return p.c3 != 0.0 || std::hypot(p.c1, p.c2) < gg.hole_radius;
            else if constexpr (std::is_same_v<T, Sphere>) return p.c1 > gg.radius;
            else return p.c1 > gg.xi0;
        },
        g);
}

double surface_element(const Geometry& g, const SourcePoint& p) {
    return std::visit(
        [&](const auto& gg) -> double {
            using T = std::decay_t<decltype(gg)>;
            if constexpr (std::is_same_v<T, InfinitePlane> || std::is_same_v<T, HolePlane>) {
                return p.u;
            } else if constexpr (std::is_same_v<T, Sphere>) {
                return sq(gg.radius) * std::sin(p.u);
            } else if constexpr (std::is_same_v<T, ProlateSpheroid>) {
                return sq(gg.a) * std::sqrt((sq(gg.xi0) - sq(p.u)) * (sq(gg.xi0) - 1.0));
            } else {
                return sq(gg.a) * std::sqrt((sq(gg.xi0) + sq(p.u)) * (1.0 + sq(gg.xi0)));
            }
        },
        g);
}

SeriesValue surface_green(const Geometry& g, const FieldPoint& r, const SourcePoint& rp,
                          const SeriesSpec& spec) {
    validate(g);
    check_proximity(g, r, rp);
    return std::visit(
        [&](const auto& gg) -> SeriesValue {
            using T = std::decay_t<decltype(gg)>;
            if constexpr (std::is_same_v<T, InfinitePlane>) {
                const double z = r.c3;
                if (z <= 0.0) throw std::domain_error("geometry: plane field point must have z > 0");
                const auto s = source_to_cartesian(g, rp);
                const double rho2 = sq(r.c1 - s[0]) + sq(r.c2 - s[1]) + z * z;
                return {z / (2.0 * pi * std::pow(rho2, 1.5)), 0, 0.0, true};
            } else if constexpr (std::is_same_v<T, HolePlane>) {
                const double s = std::hypot(r.c1, r.c2);
                const double phi = std::atan2(r.c2, r.c1);
                return {hole_surface_green(gg.hole_radius, s, r.c3, rp.u, phi - rp.v), 0, 0.0, true};
            } else if constexpr (std::is_same_v<T, Sphere>) {
                const double rr = r.c1, R = gg.radius;
                if (rr <= R) throw std::domain_error("geometry: sphere field point must be exterior");
                const double cg = std::cos(r.c2) * std::cos(rp.u) +
                                  std::sin(r.c2) * std::sin(rp.u) * std::cos(r.c3 - rp.v);
                const double u = rr * rr - 2.0 * rr * R * cg + R * R;
                return {(rr * rr - R * R) / (4.0 * pi * R * std::pow(u, 1.5)), 0, 0.0, true};
            } else if constexpr (std::is_same_v<T, ProlateSpheroid>) {
                require_on_axis(r.c2);
                const double xi = r.c1, xi0 = gg.xi0;
                if (xi <= xi0) throw std::domain_error("geometry: spheroid field point must be exterior (xi > xi0)");
                const auto fam_xi = specfun::legendre_q_family(spec.l_max, xi);
                const auto fam_xi0 = specfun::legendre_q_family(spec.l_max, xi0);
                const double pref = 1.0 / (2.0 * pi * sq(gg.a) *
                                           std::sqrt((sq(xi0) - 1.0) * (sq(xi0) - sq(rp.u))));
                auto out = spheroid_series(fam_xi, fam_xi0, 0, rp.u, spec.l_max, spec.rel_tol, pref,
                                           [](int l) { return specfun::legendre_p_norm_at_one(l); });
                return {out.value, out.l_used, out.residual, out.converged};
            } else {
                require_on_axis(r.c2);
                const double xi = r.c1, xi0 = gg.xi0;
                if (xi <= xi0) throw std::domain_error("geometry: spheroid field point must be exterior (xi > xi0)");
                const auto fam_xi = specfun::legendre_q_imag_family(spec.l_max, xi);
                const auto fam_xi0 = specfun::legendre_q_imag_family(spec.l_max, xi0);
                const double pref = 1.0 / (2.0 * pi * sq(gg.a) *
                                           std::sqrt((1.0 + sq(xi0)) * (sq(xi0) + sq(rp.u))));
                auto out = spheroid_series(fam_xi, fam_xi0, 0, rp.u, spec.l_max, spec.rel_tol, pref,
                                           [](int l) { return specfun::legendre_p_norm_at_one(l); });
                return {out.value, out.l_used, out.residual, out.converged};
            }
        },
        g);
}

SeriesValue grad_surface_green(const Geometry& g, FieldMode k, const FieldPoint& r,
                               const SourcePoint& rp, const SeriesSpec& spec) {
    validate(g);
    check_proximity(g, r, rp);
    return std::visit(
        [&](const auto& gg) -> SeriesValue {
            using T = std::decay_t<decltype(gg)>;
            if constexpr (std::is_same_v<T, InfinitePlane>) {
                const double z = r.c3;
                if (z <= 0.0) throw std::domain_error("geometry: plane field point must have z > 0");
                const auto s = source_to_cartesian(g, rp);
                const double dx = r.c1 - s[0], dy = r.c2 - s[1];
                const double rho2 = dx * dx + dy * dy + z * z;
                if (k == FieldMode::Normal)
                    return {(rho2 - 3.0 * z * z) / (2.0 * pi * std::pow(rho2, 2.5)), 0, 0.0, true};
                return {-3.0 * z * dx / (2.0 * pi * std::pow(rho2, 2.5)), 0, 0.0, true};
            } else if constexpr (std::is_same_v<T, HolePlane>) {
                // gradients are taken in the hole plane (z = 0, s < d)
                if (r.c3 != 0.0)
                    throw std::invalid_argument("geometry: hole-trap gradients are evaluated at z = 0");
                const double d = gg.hole_radius;
                const double s = std::hypot(r.c1, r.c2);
                if (s >= d) throw std::domain_error("geometry: hole-trap field point must lie inside the hole");
                const double dphi = std::atan2(r.c2, r.c1) - rp.v;
                const double sp = rp.u;
                if (sp <= d) throw std::domain_error("geometry: hole-trap source lies off the sheet (s' <= d)");
                const double g2 = sq(s) + sq(sp) - 2.0 * s * sp * std::cos(dphi);
                if (k == FieldMode::Normal)
                    return {1.0 / (4.0 * pi * std::pow(g2, 1.5)), 0, 0.0, true};
                const double root = std::sqrt((sq(d) - sq(s)) / (sq(sp) - sq(d)));
                const double droot = -s / std::sqrt((sq(d) - sq(s)) * (sq(sp) - sq(d)));
                const double dg2 = 2.0 * s - 2.0 * sp * std::cos(dphi);
                return {(droot / g2 - root * dg2 / sq(g2)) / (2.0 * pi * pi), 0, 0.0, true};
            } else if constexpr (std::is_same_v<T, Sphere>) {
                const double rr = r.c1, R = gg.radius;
                if (rr <= R) throw std::domain_error("geometry: sphere field point must be exterior");
                const double cg = std::cos(r.c2) * std::cos(rp.u) +
                                  std::sin(r.c2) * std::sin(rp.u) * std::cos(r.c3 - rp.v);
                const double u = rr * rr - 2.0 * rr * R * cg + R * R;
                if (k == FieldMode::Normal) {
                    const double v = (2.0 * rr * u - 3.0 * (rr * rr - R * R) * (rr - R * cg)) /
                                     (4.0 * pi * R * std::pow(u, 2.5));
                    return {v, 0, 0.0, true};
                }
                const double dcg = std::cos(r.c2) * std::sin(rp.u) * std::cos(r.c3 - rp.v) -
                                   std::sin(r.c2) * std::cos(rp.u);
                return {3.0 * (rr * rr - R * R) * dcg / (4.0 * pi * std::pow(u, 2.5)), 0, 0.0, true};
            } else if constexpr (std::is_same_v<T, ProlateSpheroid>) {
                require_on_axis(r.c2);
                const double xi = r.c1, xi0 = gg.xi0;
                if (xi <= xi0) throw std::domain_error("geometry: spheroid field point must be exterior (xi > xi0)");
                const double pref = 1.0 / (2.0 * pi * sq(gg.a) * gg.a *
                                           std::sqrt((sq(xi0) - 1.0) * (sq(xi0) - sq(rp.u))));
                if (k == FieldMode::Normal) {
                    const auto fam_xi = specfun::legendre_q_family(spec.l_max, xi);
                    const auto fam_xi0 = specfun::legendre_q_family(spec.l_max, xi0);
                    auto out = spheroid_series(fam_xi, fam_xi0, 0, rp.u, spec.l_max, spec.rel_tol, pref,
                                               [&](int l) {
                                                   return specfun::legendre_p_norm_at_one(l) *
                                                          fam_xi.deriv_over_value(l);
                                               });
                    return {out.value, out.l_used, out.residual, out.converged};
                }
                const auto fam_xi = specfun::legendre_q1_family(spec.l_max, xi);
                const auto fam_xi0 = specfun::legendre_q1_family(spec.l_max, xi0);
                const double tpref = pref * 2.0 * std::cos(r.c3 - rp.v) / std::sqrt(sq(xi) - 1.0);
                auto out = spheroid_series(fam_xi, fam_xi0, 1, rp.u, spec.l_max, spec.rel_tol, tpref,
                                           [](int l) { return specfun::transverse_axis_slope(l); });
                return {out.value, out.l_used, out.residual, out.converged};
            } else {
                require_on_axis(r.c2);
                const double xi = r.c1, xi0 = gg.xi0;
                if (xi <= xi0) throw std::domain_error("geometry: spheroid field point must be exterior (xi > xi0)");
                const double pref = 1.0 / (2.0 * pi * sq(gg.a) * gg.a *
                                           std::sqrt((1.0 + sq(xi0)) * (sq(xi0) + sq(rp.u))));
                if (k == FieldMode::Normal) {
                    const auto fam_xi = specfun::legendre_q_imag_family(spec.l_max, xi);
                    const auto fam_xi0 = specfun::legendre_q_imag_family(spec.l_max, xi0);
                    auto out = spheroid_series(fam_xi, fam_xi0, 0, rp.u, spec.l_max, spec.rel_tol, pref,
                                               [&](int l) {
                                                   return specfun::legendre_p_norm_at_one(l) *
                                                          fam_xi.deriv_over_value(l);
                                               });
                    return {out.value, out.l_used, out.residual, out.converged};
                }
                const auto fam_xi = specfun::legendre_q1_imag_family(spec.l_max, xi);
                const auto fam_xi0 = specfun::legendre_q1_imag_family(spec.l_max, xi0);
                const double tpref = pref * 2.0 * std::cos(r.c3 - rp.v) / std::sqrt(sq(xi) + 1.0);
                auto out = spheroid_series(fam_xi, fam_xi0, 1, rp.u, spec.l_max, spec.rel_tol, tpref,
                                           [](int l) { return specfun::transverse_axis_slope(l); });
                return {out.value, out.l_used, out.residual, out.converged};
            }
        },
        g);
}

SeriesValue sphere_surface_green_series(const Sphere& g, const FieldPoint& r,
                                        const SourcePoint& rp, const SeriesSpec& spec) {
    const double rr = r.c1, R = g.radius;
    if (rr <= R) throw std::domain_error("geometry: sphere field point must be exterior");
    const double cg = std::cos(r.c2) * std::cos(rp.u) +
                      std::sin(r.c2) * std::sin(rp.u) * std::cos(r.c3 - rp.v);
    const double q = R / rr;
    double sum = 0.0;
    double p0 = 1.0, p1 = cg;
    for (int l = 0; l <= spec.l_max; ++l) {
        double pl;
        if (l == 0) pl = 1.0;
        else if (l == 1) pl = cg;
        else {
            pl = ((2.0 * l - 1.0) * cg * p1 - (l - 1.0) * p0) / l;
            p0 = p1;
            p1 = pl;
        }
        sum += (2.0 * l + 1.0) * std::pow(q, l + 1) * pl;
    }
    SeriesValue out;
    out.value = sum / (4.0 * pi * R * R);
    out.l_used = spec.l_max;
    const double tail = (2.0 * spec.l_max + 3.0) * std::pow(q, spec.l_max + 2) / sq(1.0 - q);
    out.residual = tail / (4.0 * pi * R * R);
    out.converged = out.residual <= spec.rel_tol * std::abs(out.value);
    return out;
}

double greens_function(const Geometry& g, const std::array<double, 3>& r,
                       const std::array<double, 3>& rp) {
    validate(g);
    return std::visit(
        [&](const auto& gg) -> double {
            using T = std::decay_t<decltype(gg)>;
            if constexpr (std::is_same_v<T, InfinitePlane>) {
                const double direct = std::sqrt(sq(r[0] - rp[0]) + sq(r[1] - rp[1]) + sq(r[2] - rp[2]));
                const double image = std::sqrt(sq(r[0] - rp[0]) + sq(r[1] - rp[1]) + sq(r[2] + rp[2]));
                return (1.0 / direct - 1.0 / image) / (4.0 * pi);
            } else if constexpr (std::is_same_v<T, Sphere>) {
                const double a = gg.radius;
                const double rpn = std::sqrt(sq(rp[0]) + sq(rp[1]) + sq(rp[2]));
                const double direct = std::sqrt(sq(r[0] - rp[0]) + sq(r[1] - rp[1]) + sq(r[2] - rp[2]));
                const double f = sq(a) / sq(rpn);
                const double image = std::sqrt(sq(r[0] - f * rp[0]) + sq(r[1] - f * rp[1]) + sq(r[2] - f * rp[2]));
                return (1.0 / direct - a / (rpn * image)) / (4.0 * pi);
            } else if constexpr (std::is_same_v<T, HolePlane>) {
                const double d = gg.hole_radius;
                const double s = std::hypot(r[0], r[1]), sp = std::hypot(rp[0], rp[1]);
                const double z = r[2], zp = rp[2];
                const double cd = std::cos(std::atan2(r[1], r[0]) - std::atan2(rp[1], rp[0]));
                const double gm = std::sqrt(sq(s) + sq(sp) - 2.0 * s * sp * cd + sq(z - zp));
                const double gp = std::sqrt(sq(s) + sq(sp) - 2.0 * s * sp * cd + sq(z + zp));
                const double big_r = std::sqrt((sq(z) + sq(s - d)) * (sq(z) + sq(s + d)));
                const double big_rp = std::sqrt((sq(zp) + sq(sp - d)) * (sq(zp) + sq(sp + d)));
                const double base = (sq(s) + sq(z) - sq(d)) * (sq(sp) + sq(zp) - sq(d));
                const double pm = std::sqrt(base + 4.0 * sq(d) * z * zp + big_r * big_rp) / (std::sqrt(2.0) * d);
                const double pp = std::sqrt(base - 4.0 * sq(d) * z * zp + big_r * big_rp) / (std::sqrt(2.0) * d);
                const double eps = (z * (sq(sp) + sq(zp) - sq(d)) + zp * (sq(s) + sq(z) - sq(d)) >= 0.0) ? 1.0 : -1.0;
                return ((1.0 + (2.0 / pi) * std::atan(pm / gm)) / gm -
                        (1.0 + eps * (2.0 / pi) * std::atan(pp / gp)) / gp) /
                       (8.0 * pi);
            } else {
                throw std::invalid_argument("geometry: no closed-form Green's function for spheroids");
            }
        },
        g);
}

} // namespace patchnoise::geometry
