#pragma once

#include "bvpcorr/errors.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace bvpcorr {

/// Gauss-Legendre rule on the reference interval (-1, 1).
struct QuadratureRule {
    std::vector<double> points;
    std::vector<double> weights;
    int order = 0;  ///< number of points
};

namespace detail {

/// Legendre P_n(x) and its derivative via the three-term recurrence.
inline std::pair<double, double> legendre_with_derivative(int n, double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    const double dp = n * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

}  // namespace detail

/// Nodes and weights of the npoints-point Gauss-Legendre rule,
/// found by Newton iteration on the Legendre polynomial.
inline QuadratureRule gauss_rule(int npoints) {
    if (npoints < 1 || npoints > 64)
        throw UnsupportedOrder("gauss_rule: npoints must lie in [1, 64], got " +
                               std::to_string(npoints));
    QuadratureRule rule;
    rule.order = npoints;
    rule.points.assign(npoints, 0.0);
    rule.weights.assign(npoints, 0.0);
    if (npoints == 1) {
        rule.points[0] = 0.0;
        rule.weights[0] = 2.0;
        return rule;
    }
    const int half = (npoints + 1) / 2;
    for (int k = 0; k < half; ++k) {
        // Tricomi initial guess for the k-th root in descending order.
        double x = std::cos(std::numbers::pi * (k + 0.75) / (npoints + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            auto [p, d] = detail::legendre_with_derivative(npoints, x);
            dp = d;
            const double dx = p / d;
            x -= dx;
            if (std::abs(dx) <= 1e-14) break;
        }
        auto [p, d] = detail::legendre_with_derivative(npoints, x);
        dp = d;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.points[npoints - 1 - k] = x;
        rule.weights[npoints - 1 - k] = w;
        rule.points[k] = -x;
        rule.weights[k] = w;
    }
    if (npoints % 2 == 1) rule.points[npoints / 2] = 0.0;
    return rule;
}

/// Integrates f over [a, b] with the rule mapped affinely from (-1, 1).
/// Exact for polynomials of degree <= 2 * order - 1.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        const QuadratureRule& rule) {
    if (!(a < b)) throw InvalidArgument("integrate: requires a < b");
    const double mid = 0.5 * (a + b);
    const double halfwidth = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
        const double x = mid + halfwidth * rule.points[q];
        const double v = f(x);
        if (!std::isfinite(v))
            throw NonFiniteIntegrand("integrate: integrand not finite at x = " + std::to_string(x));
        acc += rule.weights[q] * v;
    }
    return halfwidth * acc;
}

}  // namespace bvpcorr
