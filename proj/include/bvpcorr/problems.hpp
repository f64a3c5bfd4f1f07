#pragma once

#include "bvpcorr/errors.hpp"
#include "bvpcorr/problem.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

namespace bvpcorr {

/// Largest parameter for which the exponential-nonlinearity benchmark has a
/// (lower-branch) solution.
inline constexpr double bratu_lambda_critical = 3.513830719;

namespace detail {

inline std::string lambda_critical_string() {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", bratu_lambda_critical);
    return buf;
}

}  // namespace detail

/// True when lambda sits close enough to the critical value that the
/// shape-parameter root is nearly double and poorly conditioned.
inline bool bratu_near_critical(double lambda) {
    return std::abs(lambda - bratu_lambda_critical) < 1e-6;
}

/// Lower-branch root beta of  sqrt(2 lambda) cosh(beta / 4) = beta.
///
/// phi(beta) = beta - sqrt(2 lambda) cosh(beta / 4) is negative at
/// sqrt(2 lambda), rises to its maximum at beta_m = 4 asinh(4 / sqrt(2 lambda))
/// and falls again; the lower root is bracketed by those two points.
/// Bisection is followed by a Newton polish, skipped near the tangency where
/// phi'(beta) vanishes.
inline double bratu_beta(double lambda) {
    if (!(lambda > 0.0) || lambda > bratu_lambda_critical)
        throw LambdaOutOfRange("bratu_beta: lambda must lie in (0, " +
                               detail::lambda_critical_string() + "], got " +
                               std::to_string(lambda));
    const double s = std::sqrt(2.0 * lambda);
    auto phi = [s](double b) { return b - s * std::cosh(0.25 * b); };
    auto dphi = [s](double b) { return 1.0 - 0.25 * s * std::sinh(0.25 * b); };

    const double bmax = 4.0 * std::asinh(4.0 / s);
    const double top = phi(bmax);
    if (top <= 1e-12 * (1.0 + bmax)) return bmax;  // double root at the tangency

    double lo = s, hi = bmax;
    for (int it = 0; it < 200 && (hi - lo) > 1e-15 * bmax; ++it) {
        const double mid = 0.5 * (lo + hi);
        (phi(mid) < 0.0 ? lo : hi) = mid;
    }
    double b = 0.5 * (lo + hi);
    for (int it = 0; it < 30; ++it) {
        const double d = dphi(b);
        if (std::abs(d) < 1e-8) break;
        const double step = phi(b) / d;
        b -= step;
        if (std::abs(step) <= 1e-13 * (1.0 + b)) break;
    }
    return b;
}

/// Closed-form solution of  f'' + lambda e^f = 0, f(0) = f(1) = 0:
///   f(x) = -2 ln( cosh((x - 1/2) beta / 2) / cosh(beta / 4) ).
inline double bratu_exact(double lambda, double x) {
    const double beta = bratu_beta(lambda);
    return -2.0 * std::log(std::cosh((x - 0.5) * 0.5 * beta) / std::cosh(0.25 * beta));
}

/// A registered benchmark: problem definition plus reference solution.
struct BenchmarkProblem {
    std::string id;
    std::string description;
    ProblemDefinition definition;
    ScalarFn exact;                ///< same function as definition.exact
    std::optional<double> lambda;  ///< set for the parameterized benchmark
};

/// Ids shown by the CLI listing. "p2-raw" (the untransformed variant of p2 on
/// [1, 3]) is also accepted by get_problem but not listed.
inline const std::vector<std::string>& listed_problem_ids() {
    static const std::vector<std::string> ids = {"p1", "p2", "p3", "bratu"};
    return ids;
}

inline BenchmarkProblem get_problem(const std::string& id,
                                    std::optional<double> lambda = std::nullopt) {
    if (id == "p1") {
        // f'' + f = -1 with derivative data at both ends.
        const double k = (1.0 - std::cos(1.0)) / std::sin(1.0);
        ProblemDefinition def;
        def.lower = 0.0;
        def.upper = 1.0;
        def.rhs = [](double, double f, double) { return -1.0 - f; };
        def.rhs_df = [](double, double, double) { return -1.0; };
        def.rhs_dfp = [](double, double, double) { return 0.0; };
        def.left = {0.0, 1.0, k};
        def.right = {0.0, 1.0, -k};
        def.exact = [k](double x) { return std::cos(x) + k * std::sin(x) - 1.0; };
        return {"p1", "linear, f'' + f = -1, Neumann", def, def.exact, std::nullopt};
    }
    if (id == "p2") {
        // f'' + (1/4) f f' = 16 + (2x+1)^3 on [0, 1]; the [1, 3] problem
        // x^2 + 16/x mapped by x -> 2x + 1.
        ProblemDefinition def;
        def.lower = 0.0;
        def.upper = 1.0;
        def.rhs = [](double x, double f, double fp) {
            const double t = 2.0 * x + 1.0;
            return 16.0 + t * t * t - 0.25 * f * fp;
        };
        def.rhs_df = [](double, double, double fp) { return -0.25 * fp; };
        def.rhs_dfp = [](double, double f, double) { return -0.25 * f; };
        def.left = {1.0, 0.0, 17.0};
        def.right = {1.0, 0.0, 43.0 / 3.0};
        def.exact = [](double x) {
            const double t = 2.0 * x + 1.0;
            return t * t + 16.0 / t;
        };
        return {"p2", "nonlinear, f'' + f f'/4 = 16 + (2x+1)^3, Dirichlet", def, def.exact,
                std::nullopt};
    }
    if (id == "p2-raw") {
        ProblemDefinition def;
        def.lower = 1.0;
        def.upper = 3.0;
        def.rhs = [](double x, double f, double fp) {
            return 4.0 + 0.25 * x * x * x - 0.125 * f * fp;
        };
        def.rhs_df = [](double, double, double fp) { return -0.125 * fp; };
        def.rhs_dfp = [](double, double f, double) { return -0.125 * f; };
        def.left = {1.0, 0.0, 17.0};
        def.right = {1.0, 0.0, 43.0 / 3.0};
        def.exact = [](double x) { return x * x + 16.0 / x; };
        return {"p2-raw", "p2 before the [1,3] -> [0,1] change of variable, Dirichlet", def,
                def.exact, std::nullopt};
    }
    if (id == "p3") {
        // f'' = (1 + x + f)^3 / 2 with Robin data at both ends.
        ProblemDefinition def;
        def.lower = 0.0;
        def.upper = 1.0;
        def.rhs = [](double x, double f, double) {
            const double t = 1.0 + x + f;
            return 0.5 * t * t * t;
        };
        def.rhs_df = [](double x, double f, double) {
            const double t = 1.0 + x + f;
            return 1.5 * t * t;
        };
        def.rhs_dfp = [](double, double, double) { return 0.0; };
        def.left = {-1.0, 1.0, -0.5};
        def.right = {1.0, 1.0, 1.0};
        def.exact = [](double x) { return 2.0 / (2.0 - x) - x - 1.0; };
        return {"p3", "nonlinear, f'' = (1+x+f)^3/2, Robin", def, def.exact, std::nullopt};
    }
    if (id == "bratu") {
        const double lam = lambda.value_or(1.0);
        const double beta = bratu_beta(lam);  // validates the range
        ProblemDefinition def;
        def.lower = 0.0;
        def.upper = 1.0;
        def.rhs = [lam](double, double f, double) { return -lam * std::exp(f); };
        def.rhs_df = [lam](double, double f, double) { return -lam * std::exp(f); };
        def.rhs_dfp = [](double, double, double) { return 0.0; };
        def.left = {1.0, 0.0, 0.0};
        def.right = {1.0, 0.0, 0.0};
        def.exact = [lam, beta](double x) {
            return -2.0 * std::log(std::cosh((x - 0.5) * 0.5 * beta) / std::cosh(0.25 * beta));
        };
        return {"bratu",
                "strongly nonlinear, f'' + lambda e^f = 0, Dirichlet, lambda in (0, " +
                    detail::lambda_critical_string() + "]",
                def, def.exact, lam};
    }
    throw UnknownProblem("get_problem: no benchmark named '" + id + "'");
}

}  // namespace bvpcorr
