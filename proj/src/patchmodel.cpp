#include "patchnoise/patchmodel.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "patchnoise/parallel.hpp"
#include "patchnoise/quadrature.hpp"

namespace patchnoise::patchmodel {

namespace {

constexpr double pi = std::numbers::pi;

int nodes_for(int l_max) { return (5 * l_max) / 4 + 80; }

// accumulates C[l][l'] = sum_i w_i Pbar_l(x_i) Pbar_l'(x_i) over given nodes
void accumulate(const std::vector<double>& x, const std::vector<double>& w, int m, int l_max,
                std::vector<double>& out) {
    const size_t n = x.size();
    const size_t dim = static_cast<size_t>(l_max) + 1;
    std::vector<double> p(n * dim, 0.0);
    std::vector<double> col;
    for (size_t i = 0; i < n; ++i) {
        specfun::legendre_p_norm_column(l_max, m, x[i], col);
        for (int l = m; l <= l_max; ++l) p[i * dim + l] = col[static_cast<size_t>(l - m)];
    }
    out.assign(dim * dim, 0.0);
    parallel::parallel_for(dim, [&](size_t l) {
        for (size_t lp = 0; lp < dim; ++lp) {
            double acc = 0.0;
            for (size_t i = 0; i < n; ++i) acc += w[i] * (p[i * dim + l] * p[i * dim + lp]);
            out[l * dim + lp] = acc;
        }
    });
}

// quadrature nodes in eta with the surface weight absorbed by substitution
void spheroid_nodes(SpheroidKind kind, double xi0, double edge_delta, int n,
                    std::vector<double>& eta, std::vector<double>& w) {
    std::vector<double> t, wt;
    quadrature::gauss_legendre(n, t, wt);
    eta.clear();
    w.clear();
    if (kind == SpheroidKind::Prolate) {
        if (!(xi0 > 1.0)) throw std::invalid_argument("patchmodel: prolate coefficients need xi0 > 1");
        const double t1 = std::asin(1.0 / xi0); // eta = xi0 sin t cancels 1/sqrt(xi0^2 - eta^2)
        for (int i = 0; i < n; ++i) {
            eta.push_back(xi0 * std::sin(t1 * t[static_cast<size_t>(i)]));
            w.push_back(t1 * wt[static_cast<size_t>(i)]);
        }
        return;
    }
    if (xi0 > 0.0) {
        const double t1 = std::asinh(1.0 / xi0); // eta = xi0 sinh t cancels 1/sqrt(xi0^2 + eta^2)
        for (int i = 0; i < n; ++i) {
            eta.push_back(xi0 * std::sinh(t1 * t[static_cast<size_t>(i)]));
            w.push_back(t1 * wt[static_cast<size_t>(i)]);
        }
        return;
    }
    // disc: weight 1/|eta| on (-1,-delta) u (delta,1); eta = +-exp(-u)
    if (!(edge_delta > 0.0) || edge_delta >= 0.5)
        throw std::invalid_argument("patchmodel: disc coefficients need an edge delta in (0, 0.5)");
    const double umax = std::log(1.0 / edge_delta);
    for (int i = 0; i < n; ++i) {
        const double u = 0.5 * umax * (t[static_cast<size_t>(i)] + 1.0);
        const double wu = 0.5 * umax * wt[static_cast<size_t>(i)];
        eta.push_back(std::exp(-u));
        w.push_back(wu);
        eta.push_back(-std::exp(-u));
        w.push_back(wu);
    }
}

} // namespace

PatchModel PatchModel::sphere_patch_size(double theta_zeta, double a_over_n) {
    if (!(theta_zeta > 0.0)) throw std::invalid_argument("patchmodel: patch size must be positive");
    return truncated(static_cast<int>(std::lround(2.0 / theta_zeta)), a_over_n);
}

PatchModel PatchModel::spheroid_patch_size(double theta_zeta, double a_over_n) {
    if (!(theta_zeta > 0.0)) throw std::invalid_argument("patchmodel: patch size must be positive");
    return truncated(static_cast<int>(std::lround(2.0 / theta_zeta)), a_over_n);
}

std::string PatchModel::label() const {
    switch (regime) {
        case Regime::InfinitePatch: return "ip";
        case Regime::PointPatch: return "pp";
        case Regime::Truncated: return "trunc" + std::to_string(l0);
    }
    return "?";
}

double correlation(const PatchModel& p, const geometry::SourcePoint&, const geometry::SourcePoint&) {
    switch (p.regime) {
        case PatchModel::Regime::InfinitePatch:
            return 1.0;
        case PatchModel::Regime::PointPatch:
            throw std::logic_error(
                "patchmodel: the point-patch correlation is a surface delta; it has no pointwise "
                "value and is consumed only via reduction of the double surface integral");
        case PatchModel::Regime::Truncated:
            throw std::logic_error("patchmodel: truncated correlations are defined in the eigenfunction basis");
    }
    throw std::logic_error("patchmodel: unknown regime");
}

double coeff_sphere(PatchModel::Regime regime, specfun::DegreeOrder i, specfun::DegreeOrder j,
                    double a_over_n) {
    specfun::validate(i);
    specfun::validate(j);
    if (regime == PatchModel::Regime::Truncated)
        throw std::invalid_argument("patchmodel: sphere weights exist for the IP and PP regimes");

    std::vector<double> x, w;
    const int n = std::max(i.l, j.l) + 24;
    quadrature::gauss_legendre(n, x, w);
    const int nphi = 4 * (std::abs(i.m) + std::abs(j.m)) + 8;

    auto moment = [&](specfun::DegreeOrder lo) { // real and imaginary parts of the surface integral of Y
        std::complex<double> acc = 0.0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < nphi; ++b) {
                const double phi = 2.0 * pi * b / nphi;
                acc += w[static_cast<size_t>(a)] * (2.0 * pi / nphi) *
                       specfun::sph_harm(lo, std::acos(x[static_cast<size_t>(a)]), phi);
            }
        return acc;
    };

    if (regime == PatchModel::Regime::InfinitePatch) {
        const std::complex<double> v = moment(i) * std::conj(moment(j));
        return v.real();
    }
    std::complex<double> acc = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < nphi; ++b) {
            const double phi = 2.0 * pi * b / nphi;
            const double th = std::acos(x[static_cast<size_t>(a)]);
            acc += w[static_cast<size_t>(a)] * (2.0 * pi / nphi) * specfun::sph_harm(i, th, phi) *
                   std::conj(specfun::sph_harm(j, th, phi));
        }
    return a_over_n * acc.real();
}

CoeffValue coeff_spheroid(SpheroidKind kind, int l, int lp, int m, double xi0, double edge_delta,
                          double a_over_n) {
    if (m < 0 || l < m || lp < m) throw std::invalid_argument("patchmodel: need 0 <= m <= l, l'");
    const int l_max = std::max(l, lp);
    auto eval = [&](int n) {
        std::vector<double> eta, w, cl, clp;
        spheroid_nodes(kind, xi0, edge_delta, n, eta, w);
        double acc = 0.0;
        for (size_t idx = 0; idx < eta.size(); ++idx) {
            specfun::legendre_p_norm_column(l_max, m, eta[idx], cl);
            acc += w[idx] * cl[static_cast<size_t>(l - m)] * cl[static_cast<size_t>(lp - m)];
        }
        return acc;
    };
    const int n = nodes_for(l_max);
    const double v1 = eval(n);
    const double v2 = eval(2 * n);
    return {a_over_n * v2, std::abs(a_over_n) * std::abs(v2 - v1)};
}

CoefficientTable build_coefficient_table(SpheroidKind kind, int m, double xi0, int l_max,
                                         double edge_delta, double a_over_n) {
    if (m < 0 || l_max < m) throw std::invalid_argument("patchmodel: need 0 <= m <= l_max");
    CoefficientTable t;
    t.kind = kind;
    t.m = m;
    t.xi0 = xi0;
    t.edge_delta = edge_delta;
    t.a_over_n = a_over_n;
    t.l_max = l_max;

    const int n = nodes_for(l_max);
    std::vector<double> eta, w, coarse;
    spheroid_nodes(kind, xi0, edge_delta, n, eta, w);
    accumulate(eta, w, m, l_max, coarse);
    spheroid_nodes(kind, xi0, edge_delta, 2 * n, eta, w);
    accumulate(eta, w, m, l_max, t.values);

    double worst = 0.0;
    for (size_t k = 0; k < t.values.size(); ++k)
        worst = std::max(worst, std::abs(t.values[k] - coarse[k]));
    t.residual = worst * std::abs(a_over_n);
    if (a_over_n != 1.0)
        for (double& v : t.values) v *= a_over_n;
    return t;
}

void write_csv(const CoefficientTable& table, std::ostream& os) {
    os << "l,lp,m,value,residual\n";
    char buf[64];
    for (int l = table.m; l <= table.l_max; ++l)
        for (int lp = table.m; lp <= table.l_max; ++lp) {
            std::snprintf(buf, sizeof buf, "%d,%d,%d,%.9g,%.3g\n", l, lp, table.m,
                          table.at(l, lp), table.residual);
            os << buf;
        }
}

DecayFit coeff_decay_check(const CoefficientTable& table, int sum_ll, int max_separation) {
    const double floor = std::max(table.residual * 10.0, 1e-280);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (int d = 0; d <= max_separation; d += 2) {
        const int l = (sum_ll + d) / 2, lp = (sum_ll - d) / 2;
        if ((sum_ll + d) % 2 != 0) continue;
        if (lp < table.m || l > table.l_max) continue;
        const double v = std::abs(table.at(l, lp));
        if (v < floor) continue;
        const double x = d, y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 3) throw std::invalid_argument("patchmodel: insufficient nonzero samples for a decay fit");
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return {-slope, n};
}

} // namespace patchnoise::patchmodel
