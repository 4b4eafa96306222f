#pragma once

#include <functional>
#include <vector>

namespace patchnoise::quadrature {

struct Result {
    double value = 0.0;
    double error = 0.0; // absolute error estimate
    bool converged = false;
    int evaluations = 0;
};

struct Tolerance {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_intervals = 4000;
};

// adaptive Gauss(7)-Kronrod(15) on a finite interval
Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Tolerance& tol = {});

// integral over [a, inf) via the rational stretch s = a + scale*t/(1-t)
Result integrate_semi_infinite(const std::function<double(double)>& f, double a,
                               double scale, const Tolerance& tol = {});

// Gauss-Legendre nodes and weights on [-1, 1] (Newton on the recurrence)
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace patchnoise::quadrature
