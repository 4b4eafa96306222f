#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "patchnoise/geometry.hpp"

// Patch correlation functions in the fully-correlated (infinite patch, IP)
// and uncorrelated (point patch, PP) limits, the finite-patch truncation
// scheme, and the spheroid expansion coefficients c(l, l', m).

namespace patchnoise::patchmodel {

struct PatchModel {
    enum class Regime { InfinitePatch, PointPatch, Truncated };

    Regime regime = Regime::PointPatch;
    int l0 = 0;             // truncation degree, Truncated only
    double a_over_n = 1.0;  // patch area ratio A/N (measured in units of scale^2)

    // optional alternative to the sharp cutoff: a nonnegative per-degree
    // attenuation of the correlation spectrum, applied by the spectral
    // backend as sqrt(w(l) w(l')) on each term; empty means no attenuation
    std::function<double(int)> spectral_weight;

    static PatchModel ip(double a_over_n = 1.0) { return {Regime::InfinitePatch, 0, a_over_n}; }
    static PatchModel pp(double a_over_n = 1.0) { return {Regime::PointPatch, 0, a_over_n}; }
    static PatchModel truncated(int l0, double a_over_n = 1.0) {
        return {Regime::Truncated, l0, a_over_n};
    }
    // angular patch size theta maps to l0 = 2/theta on the sphere and to the
    // pair rule l + l' <= 2 l0 = 4/theta on spheroids
    static PatchModel sphere_patch_size(double theta_zeta, double a_over_n = 1.0);
    static PatchModel spheroid_patch_size(double theta_zeta, double a_over_n = 1.0);

    std::string label() const; // "ip", "pp", "trunc<l0>"
};

// pointwise correlation C(r1, r2). The IP regime is the constant 1.
// The PP regime is a surface delta and has no pointwise value: it is consumed
// only through reduction of the double surface integral to a single one, so
// pointwise evaluation throws std::logic_error. Truncated regimes live in the
// eigenfunction basis and also have no pointwise form here. Both closed
// regimes satisfy the same normalization, int int C dS dS' = A^2/N,
// analytically: the IP case with N = 1, the PP case because the reduced
// single integral carries the weight A/N.
double correlation(const PatchModel& p, const geometry::SourcePoint& r1,
                   const geometry::SourcePoint& r2);

// expansion weights for the unit sphere, computed by direct quadrature of the
// defining surface integrals (IP: product of monopole projections; PP:
// (A/N) x orthonormality)
double coeff_sphere(PatchModel::Regime regime, specfun::DegreeOrder i, specfun::DegreeOrder j,
                    double a_over_n = 1.0);

enum class SpheroidKind { Prolate, Oblate };

struct CoeffValue {
    double value = 0.0;
    double residual = 0.0; // |change| under quadrature-node doubling
};

// c_{l l' m} = (A/N) * int Pbar_lm(eta) Pbar_l'm(eta) / sqrt(xi0^2 -+ eta^2) deta
// (minus: prolate, plus: oblate). For the disc (oblate, xi0 = 0) the eta range
// is restricted to (-1,-delta) u (delta,1); edge_delta is required there.
CoeffValue coeff_spheroid(SpheroidKind kind, int l, int lp, int m, double xi0,
                          double edge_delta = 0.0, double a_over_n = 1.0);

struct CoefficientTable {
    SpheroidKind kind = SpheroidKind::Prolate;
    int m = 0;
    double xi0 = 0.0;
    double edge_delta = 0.0;
    double a_over_n = 1.0;
    int l_max = 0;
    std::vector<double> values; // (l_max+1)^2, row-major in (l, l')
    double residual = 0.0;      // worst entry change under node doubling

    double at(int l, int lp) const { return values[static_cast<size_t>(l) * (l_max + 1) + lp]; }
};

CoefficientTable build_coefficient_table(SpheroidKind kind, int m, double xi0, int l_max,
                                         double edge_delta = 0.0, double a_over_n = 1.0);

// columns: l, l', m, value, residual
void write_csv(const CoefficientTable& table, std::ostream& os);

struct DecayFit {
    double rate = 0.0;  // least-squares exponential decay rate of |c| vs |l - l'|
    int samples = 0;
};

// fits |c_{l l' m}| ~ exp(-rate |l-l'|) at fixed l + l' = sum_ll (even
// separations only; odd ones vanish by parity). Throws std::invalid_argument
// if fewer than three usable samples remain.
DecayFit coeff_decay_check(const CoefficientTable& table, int sum_ll, int max_separation);

} // namespace patchnoise::patchmodel
