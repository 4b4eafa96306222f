#pragma once

// Test-only oracles, deliberately independent of the library's evaluation
// paths: plain composite Simpson plus the Neumann integral representation of
// the second-kind Legendre functions.

#include <cmath>
#include <functional>

namespace oracles {

inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
    return s * h / 3.0;
}

// Q_l(xi) = int_0^inf dt (xi + sqrt(xi^2-1) cosh t)^{-(l+1)}, xi > 1,
// mapped to (0,1) by t = u/(1-u)
inline double legendre_q_integral(int l, double xi) {
    const double c = std::sqrt(xi * xi - 1.0);
    auto f = [&](double u) {
        if (u >= 1.0) return 0.0;
        const double t = u / (1.0 - u);
        const double base = xi + c * std::cosh(t);
        const double v = std::pow(base, -(l + 1.0)) / ((1.0 - u) * (1.0 - u));
        return std::isfinite(v) ? v : 0.0;
    };
    return simpson(f, 0.0, 1.0, 40000);
}

// the same integral continued to the imaginary axis: the phase-stripped part
// of Q_l(i xi) is proportional to int_0^inf (xi + sqrt(1+xi^2) cosh t)^{-(l+1)} dt,
// so ratios across arguments are directly comparable
inline double legendre_q_imag_integral(int l, double xi) {
    const double c = std::sqrt(1.0 + xi * xi);
    auto f = [&](double u) {
        if (u >= 1.0) return 0.0;
        const double t = u / (1.0 - u);
        const double base = xi + c * std::cosh(t);
        const double v = std::pow(base, -(l + 1.0)) / ((1.0 - u) * (1.0 - u));
        return std::isfinite(v) ? v : 0.0;
    };
    return simpson(f, 0.0, 1.0, 40000);
}

} // namespace oracles
