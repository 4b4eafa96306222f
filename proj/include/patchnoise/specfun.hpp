#pragma once

#include <complex>
#include <vector>

// Orthonormalized associated Legendre functions of the first and second kind,
// spherical harmonics, and their derivatives.
//
// Conventions:
//   - Pbar_lm(x): first kind on (-1,1), normalized so that
//     int_{-1}^{1} Pbar_lm Pbar_l'm dx = delta_ll' (no Condon-Shortley phase).
//   - Q_lm(xi): second kind on (1,inf), Hobson convention
//     Q_l^m(x) = (x^2-1)^{m/2} d^m/dx^m Q_l(x); only ratios of Q at two
//     arguments are ever physical here, so the constant convention cancels.
//   - On the imaginary axis, Q_lm(i*xi) carries a constant phase i*(-i)^l
//     (m=1) or (-i)^{l+1} (m=0); the phase-stripped real remainder q_lm(xi)
//     is positive and is what this module computes. Asymptotically
//     Q_lm(xi) ~ xi^{-(l+1)} as xi -> inf.

namespace patchnoise::specfun {

struct DegreeOrder {
    int l = 0;
    int m = 0;
};

// throws std::invalid_argument unless l >= 0 and |m| <= l
void validate(DegreeOrder lo);

// ---- first kind, normalized ----

// Pbar_lm(x), |x| <= 1, m >= 0 (negative m maps to (-1)^m Pbar_l|m|)
double legendre_p_norm(DegreeOrder lo, double x);

// fills out[0..l_max-m] with Pbar_mm(x) .. Pbar_{l_max,m}(x)
void legendre_p_norm_column(int l_max, int m, double x, std::vector<double>& out);

// d/dx Pbar_lm(x); endpoints allowed only for m = 0 (analytic limit);
// for m != 0 arguments within 1e-12 of +-1 are rejected
double d_dx_legendre_p_norm(DegreeOrder lo, double x);

// |d/dchi Pbar_l1(cos chi)| at chi = 0, i.e. sqrt((2l+1) l (l+1) / 8).
// This is the on-axis slope of every transverse (m = +-1) eigenfunction.
double transverse_axis_slope(int l);

// Pbar_l0(1) = sqrt((2l+1)/2)
double legendre_p_norm_at_one(int l);

// ---- second kind ----

// Family of Q_lm at a fixed argument, stored as log|Q| plus a common sign.
// Built by a backward (Gautschi-style) ratio recurrence seeded with the
// continued-fraction tail, which stays stable to arbitrary degree where the
// forward recurrence loses all digits.
struct LegendreQFamily {
    int l_max = 0;
    int m = 0;
    double xi = 0.0;
    bool imaginary_axis = false;
    double sign = 1.0;              // common sign of all members
    std::vector<double> log_abs;    // log|Q_lm|, index l = 0..l_max (m=0) or value index l
    std::vector<double> ratio;      // Q_{l+1}/Q_l magnitude ratios, m = 0 family only

    double log_value(int l) const;
    double value(int l) const;      // sign * exp(log|Q|); may underflow to 0 for large l*xi
    // (d/dxi Q_lm) / Q_lm; implemented for m = 0 families
    double deriv_over_value(int l) const;
};

// Q_l0 family on the real ray xi > 1
LegendreQFamily legendre_q_family(int l_max, double xi);
// |Q_l1| family on the real ray, from the m=0 family via
// Q_l^1 = l (x Q_l - Q_{l-1}) / sqrt(x^2-1)
LegendreQFamily legendre_q1_family(int l_max, double xi);
// phase-stripped q_l0(xi) with Q_l(i xi) = (-i)^{l+1} q_l0(xi), xi >= 0
LegendreQFamily legendre_q_imag_family(int l_max, double xi);
// phase-stripped q_l1(xi) = l (q_{l-1,0} - xi q_l0) / sqrt(1+xi^2)
LegendreQFamily legendre_q1_imag_family(int l_max, double xi);

// single-value forms of the above (m in {0,1})
double legendre_q(DegreeOrder lo, double xi);
double d_dxi_legendre_q(DegreeOrder lo, double xi);

// real ratio Q_lm(i xi) / Q_lm(i xi0) for xi, xi0 >= 0 (m in {0,1})
double legendre_q_ratio_imag(DegreeOrder lo, double xi, double xi0);

// ---- spherical harmonics ----

// Y_lm(theta, phi) with the physics (Condon-Shortley) phase,
// orthonormal over the sphere
std::complex<double> sph_harm(DegreeOrder lo, double theta, double phi);

} // namespace patchnoise::specfun
