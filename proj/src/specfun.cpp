#include "patchnoise/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace patchnoise::specfun {

namespace {

constexpr double endpoint_guard = 1e-12;

[[noreturn]] void domain_fail(const std::string& what) {
    throw std::domain_error("specfun: " + what);
}

// number of extra backward-recurrence levels needed so the contamination of
// the dominant solution decays below machine precision; the contraction per
// level is exp(-2*mu) with mu the log of the one-step ratio separation
int tail_margin(double mu) {
    double m = 18.0 / (2.0 * std::max(mu, 1e-6));
    return static_cast<int>(std::min(m, 2.0e6)) + 64;
}

} // namespace

void validate(DegreeOrder lo) {
    if (lo.l < 0 || std::abs(lo.m) > lo.l)
        throw std::invalid_argument("specfun: invalid degree/order (need l >= 0, |m| <= l)");
}

void legendre_p_norm_column(int l_max, int m, double x, std::vector<double>& out) {
    if (m < 0 || l_max < m) throw std::invalid_argument("specfun: need 0 <= m <= l_max");
    if (std::abs(x) > 1.0) domain_fail("Pbar argument outside [-1,1]");
    out.resize(static_cast<size_t>(l_max - m) + 1);

    const double omx2 = (1.0 - x) * (1.0 + x);
    double pmm = 1.0;
    double fact = 1.0;
    for (int k = 1; k <= m; ++k) {
        pmm *= omx2 * fact / (fact + 1.0);
        fact += 2.0;
    }
    pmm = std::sqrt((2.0 * m + 1.0) / 2.0 * pmm);
    out[0] = pmm;
    if (l_max == m) return;

    double f_prev = std::sqrt(2.0 * m + 3.0);
    out[1] = f_prev * x * pmm;
    for (int l = m + 2; l <= l_max; ++l) {
        const double f = std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(m) * m));
        out[l - m] = f * (x * out[l - m - 1] - out[l - m - 2] / f_prev);
        f_prev = f;
    }
}

double legendre_p_norm(DegreeOrder lo, double x) {
    validate(lo);
    const int m = std::abs(lo.m);
    std::vector<double> col;
    legendre_p_norm_column(lo.l, m, x, col);
    double v = col[lo.l - m];
    if (lo.m < 0 && (m & 1)) v = -v;
    return v;
}

double d_dx_legendre_p_norm(DegreeOrder lo, double x) {
    validate(lo);
    const int m = std::abs(lo.m);
    const int l = lo.l;
    const double sign = (lo.m < 0 && (m & 1)) ? -1.0 : 1.0;
    if (std::abs(x) > 1.0) domain_fail("Pbar argument outside [-1,1]");
    if (1.0 - std::abs(x) < endpoint_guard) {
        if (m != 0) domain_fail("Pbar derivative at |x|=1 requested with m != 0");
        // P_l'(+-1) = (+-1)^{l+1} l(l+1)/2 under unit normalization
        const double mag = std::sqrt((2.0 * l + 1.0) / 2.0) * 0.5 * l * (l + 1.0);
        return (x > 0.0 ? mag : mag * ((l % 2 == 0) ? -1.0 : 1.0));
    }
    std::vector<double> col;
    legendre_p_norm_column(l, m, x, col);
    const double plm = col[l - m];
    if (l == m) {
        // Pbar_mm ~ (1-x^2)^{m/2}: logarithmic derivative is -m x/(1-x^2)
        return sign * (-m * x / ((1.0 - x) * (1.0 + x))) * plm;
    }
    const double plm1 = col[l - m - 1];
    const double a = std::sqrt((2.0 * l + 1.0) / (2.0 * l - 1.0) * (double(l) * l - double(m) * m));
    return sign * (-l * x * plm + a * plm1) / ((1.0 - x) * (1.0 + x));
}

double transverse_axis_slope(int l) {
    if (l < 1) throw std::invalid_argument("specfun: transverse slope needs l >= 1");
    return std::sqrt((2.0 * l + 1.0) * l * (l + 1.0) / 8.0);
}

double legendre_p_norm_at_one(int l) {
    return std::sqrt((2.0 * l + 1.0) / 2.0);
}

double LegendreQFamily::log_value(int l) const {
    return log_abs.at(static_cast<size_t>(l));
}

double LegendreQFamily::value(int l) const {
    return sign * std::exp(log_value(l));
}

double LegendreQFamily::deriv_over_value(int l) const {
    if (m != 0) throw std::invalid_argument("specfun: deriv_over_value implemented for m = 0");
    if (!imaginary_axis) {
        const double den = (xi - 1.0) * (xi + 1.0);
        if (l == 0) return -1.0 / (den * std::exp(log_abs[0]));
        return l * (xi - 1.0 / ratio[static_cast<size_t>(l) - 1]) / den;
    }
    const double den = 1.0 + xi * xi;
    if (l == 0) return -1.0 / (den * std::exp(log_abs[0]));
    return l * (xi - 1.0 / ratio[static_cast<size_t>(l) - 1]) / den;
}

LegendreQFamily legendre_q_family(int l_max, double xi) {
    if (l_max < 0) throw std::invalid_argument("specfun: l_max < 0");
    if (!(xi > 1.0 + endpoint_guard)) domain_fail("Q_lm needs xi > 1 (logarithmic singularity at 1)");

    LegendreQFamily f;
    f.l_max = l_max;
    f.m = 0;
    f.xi = xi;
    f.sign = 1.0;

    const double em = xi - 1.0;
    const double mu = std::log1p(em + std::sqrt(em * (xi + 1.0))); // arccosh(xi)
    const int N = l_max + tail_margin(mu);
    f.ratio.resize(static_cast<size_t>(l_max) + 1);
    double r = 1.0 / (xi + std::sqrt((xi - 1.0) * (xi + 1.0)));
    for (int l = N; l >= 1; --l) {
        r = l / ((2.0 * l + 1.0) * xi - (l + 1.0) * r);
        if (l - 1 <= l_max) f.ratio[static_cast<size_t>(l) - 1] = r;
    }
    f.log_abs.resize(static_cast<size_t>(l_max) + 1);
    f.log_abs[0] = std::log(0.5 * std::log1p(2.0 / em));
    for (int l = 1; l <= l_max; ++l)
        f.log_abs[static_cast<size_t>(l)] = f.log_abs[static_cast<size_t>(l) - 1] + std::log(f.ratio[static_cast<size_t>(l) - 1]);
    return f;
}

LegendreQFamily legendre_q1_family(int l_max, double xi) {
    const LegendreQFamily q0 = legendre_q_family(std::max(l_max, 1), xi);
    LegendreQFamily f;
    f.l_max = l_max;
    f.m = 1;
    f.xi = xi;
    f.sign = -1.0; // Q_l is decreasing on (1,inf), so Q_l^1 < 0 for every l
    f.log_abs.resize(static_cast<size_t>(l_max) + 1);
    const double half_log = 0.5 * std::log((xi - 1.0) * (xi + 1.0));
    f.log_abs[0] = -half_log; // Q_0^1 = -(x^2-1)^{-1/2}
    for (int l = 1; l <= l_max; ++l) {
        const double excess = 1.0 / q0.ratio[static_cast<size_t>(l) - 1] - xi; // Q_{l-1}/Q_l - xi > 0
        f.log_abs[static_cast<size_t>(l)] = q0.log_abs[static_cast<size_t>(l)] + std::log(l * excess) - half_log;
    }
    return f;
}

LegendreQFamily legendre_q_imag_family(int l_max, double xi) {
    if (l_max < 0) throw std::invalid_argument("specfun: l_max < 0");
    if (xi < 0.0) domain_fail("imaginary-axis Q needs xi >= 0");

    LegendreQFamily f;
    f.l_max = l_max;
    f.m = 0;
    f.xi = xi;
    f.imaginary_axis = true;
    f.sign = 1.0;
    f.log_abs.resize(static_cast<size_t>(l_max) + 1);
    f.ratio.resize(static_cast<size_t>(l_max) + 1);

    if (xi == 0.0) {
        // on the disc itself the recurrence degenerates to exact products:
        // q_{l+1}(0) = l q_{l-1}(0) / (l+1), q_0 = pi/2, q_1 = 1
        std::vector<double> q(static_cast<size_t>(l_max) + 2);
        q[0] = std::numbers::pi / 2.0;
        q[1] = 1.0;
        for (int l = 1; l <= l_max; ++l)
            q[static_cast<size_t>(l) + 1] = l * q[static_cast<size_t>(l) - 1] / (l + 1.0);
        for (int l = 0; l <= l_max; ++l) {
            f.log_abs[static_cast<size_t>(l)] = std::log(q[static_cast<size_t>(l)]);
            f.ratio[static_cast<size_t>(l)] = q[static_cast<size_t>(l) + 1] / q[static_cast<size_t>(l)];
        }
        return f;
    }

    const double mu = std::asinh(xi);
    const int N = l_max + tail_margin(mu);
    double s = 1.0 / (xi + std::sqrt(1.0 + xi * xi));
    for (int l = N; l >= 1; --l) {
        s = l / ((2.0 * l + 1.0) * xi + (l + 1.0) * s);
        if (l - 1 <= l_max) f.ratio[static_cast<size_t>(l) - 1] = s;
    }
    f.log_abs[0] = std::log(std::atan2(1.0, xi)); // arccot(xi)
    for (int l = 1; l <= l_max; ++l)
        f.log_abs[static_cast<size_t>(l)] = f.log_abs[static_cast<size_t>(l) - 1] + std::log(f.ratio[static_cast<size_t>(l) - 1]);
    return f;
}

LegendreQFamily legendre_q1_imag_family(int l_max, double xi) {
    const LegendreQFamily q0 = legendre_q_imag_family(std::max(l_max, 1), xi);
    LegendreQFamily f;
    f.l_max = l_max;
    f.m = 1;
    f.xi = xi;
    f.imaginary_axis = true;
    f.sign = 1.0;
    f.log_abs.resize(static_cast<size_t>(l_max) + 1);
    const double half_log = 0.5 * std::log1p(xi * xi);
    f.log_abs[0] = -half_log; // q_01 = 1/sqrt(1+xi^2)
    for (int l = 1; l <= l_max; ++l) {
        double excess; // q_{l-1,0}/q_l0 - xi > 0
        if (q0.xi == 0.0)
            excess = std::exp(q0.log_abs[static_cast<size_t>(l) - 1] - q0.log_abs[static_cast<size_t>(l)]);
        else
            excess = 1.0 / q0.ratio[static_cast<size_t>(l) - 1] - xi;
        f.log_abs[static_cast<size_t>(l)] = q0.log_abs[static_cast<size_t>(l)] + std::log(l * excess) - half_log;
    }
    return f;
}

double legendre_q(DegreeOrder lo, double xi) {
    validate(lo);
    const int m = std::abs(lo.m);
    if (m > 1) throw std::invalid_argument("specfun: legendre_q supports m in {0,1}");
    const LegendreQFamily f = (m == 0) ? legendre_q_family(lo.l, xi) : legendre_q1_family(lo.l, xi);
    return f.value(lo.l);
}

double d_dxi_legendre_q(DegreeOrder lo, double xi) {
    validate(lo);
    const int m = std::abs(lo.m);
    if (m == 0) {
        const LegendreQFamily f = legendre_q_family(lo.l, xi);
        return f.deriv_over_value(lo.l) * f.value(lo.l);
    }
    if (m == 1) {
        // (x^2-1) dQ_l^1/dx = l(l+1) sqrt(x^2-1) Q_l - x Q_l^1
        const LegendreQFamily q0 = legendre_q_family(lo.l, xi);
        const LegendreQFamily q1 = legendre_q1_family(lo.l, xi);
        const double den = (xi - 1.0) * (xi + 1.0);
        return (lo.l * (lo.l + 1.0) * std::sqrt(den) * q0.value(lo.l) - xi * q1.value(lo.l)) / den;
    }
    throw std::invalid_argument("specfun: d_dxi_legendre_q supports m in {0,1}");
}

double legendre_q_ratio_imag(DegreeOrder lo, double xi, double xi0) {
    validate(lo);
    const int m = std::abs(lo.m);
    if (m > 1) throw std::invalid_argument("specfun: legendre_q_ratio_imag supports m in {0,1}");
    if (xi < 0.0 || xi0 < 0.0) domain_fail("imaginary-axis ratio needs xi, xi0 >= 0");
    auto fam = (m == 0) ? legendre_q_imag_family : legendre_q1_imag_family;
    const LegendreQFamily a = fam(lo.l, xi);
    const LegendreQFamily b = fam(lo.l, xi0);
    return std::exp(a.log_value(lo.l) - b.log_value(lo.l));
}

std::complex<double> sph_harm(DegreeOrder lo, double theta, double phi) {
    validate(lo);
    const int m = std::abs(lo.m);
    std::vector<double> col;
    legendre_p_norm_column(lo.l, m, std::cos(theta), col);
    // Y_lm = (-1)^m Pbar_lm(cos th) e^{i m phi} / sqrt(2 pi) for m >= 0
    double mag = col[lo.l - m] / std::sqrt(2.0 * std::numbers::pi);
    if (m & 1) mag = -mag;
    std::complex<double> y = mag * std::exp(std::complex<double>(0.0, m * phi));
    if (lo.m < 0) {
        y = std::conj(y);
        if (m & 1) y = -y;
    }
    return y;
}

} // namespace patchnoise::specfun
