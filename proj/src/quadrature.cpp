#include "patchnoise/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace patchnoise::quadrature {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK constants)
constexpr double xgk[8] = {
    0.9914553711208126392068547, 0.9491079123427585245261897,
    0.8648644233597690727897128, 0.7415311855993944398638648,
    0.5860872354676911302941448, 0.4058451513773971669066064,
    0.2077849550078984676006894, 0.0};
constexpr double wgk[8] = {
    0.0229353220105292249637320, 0.0630920926299785532907007,
    0.1047900103222501838398763, 0.1406532597155259187451896,
    0.1690047266392679028265834, 0.1903505780647854099132564,
    0.2044329400752988924141620, 0.2094821410847278280129992};
constexpr double wg[4] = {
    0.1294849661688696932706114, 0.2797053914892766679014678,
    0.3818300505051189449503698, 0.4179591836734693877551020};

struct Panel {
    double a, b, value, error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = wgk[7] * fc;
    double gauss = wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * xgk[i];
        const double fsum = f(c - dx) + f(c + dx);
        kron += wgk[i] * fsum;
        if (i % 2 == 1) gauss += wg[i / 2] * fsum;
    }
    kron *= h;
    gauss *= h;
    return {a, b, kron, std::abs(kron - gauss)};
}

} // namespace

Result integrate(const std::function<double(double)>& f, double a, double b, const Tolerance& tol) {
    Result res;
    if (a == b) {
        res.converged = true;
        return res;
    }
    std::vector<Panel> heap;
    heap.push_back(gk15(f, a, b));
    res.evaluations = 15;
    auto cmp = [](const Panel& x, const Panel& y) { return x.error < y.error; };
    std::make_heap(heap.begin(), heap.end(), cmp);

    while (true) {
        double total = 0.0, err = 0.0;
        for (const Panel& p : heap) {
            total += p.value;
            err += p.error;
        }
        if (err <= tol.abs_tol || err <= tol.rel_tol * std::abs(total)) {
            res.value = total;
            res.error = err;
            res.converged = true;
            return res;
        }
        if (static_cast<int>(heap.size()) >= tol.max_intervals) {
            res.value = total;
            res.error = err;
            res.converged = false;
            return res;
        }
        std::pop_heap(heap.begin(), heap.end(), cmp);
        const Panel worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        heap.push_back(gk15(f, worst.a, mid));
        std::push_heap(heap.begin(), heap.end(), cmp);
        heap.push_back(gk15(f, mid, worst.b));
        std::push_heap(heap.begin(), heap.end(), cmp);
        res.evaluations += 30;
    }
}

Result integrate_semi_infinite(const std::function<double(double)>& f, double a,
                               double scale, const Tolerance& tol) {
    if (scale <= 0.0) throw std::invalid_argument("quadrature: stretch scale must be positive");
    auto g = [&](double t) {
        const double u = 1.0 - t;
        const double s = a + scale * t / u;
        return f(s) * scale / (u * u);
    };
    return integrate(g, 0.0, 1.0, tol);
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("quadrature: need n >= 1 nodes");
    nodes.assign(static_cast<size_t>(n), 0.0);
    weights.assign(static_cast<size_t>(n), 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi initial guess, then Newton on P_n
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[static_cast<size_t>(i)] = -x;
        nodes[static_cast<size_t>(n - 1 - i)] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[static_cast<size_t>(i)] = w;
        weights[static_cast<size_t>(n - 1 - i)] = w;
    }
}

} // namespace patchnoise::quadrature
