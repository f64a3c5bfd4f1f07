#pragma once

#include "bvpcorr/basis.hpp"
#include "bvpcorr/linalg.hpp"
#include "bvpcorr/problem.hpp"
#include "bvpcorr/quadrature.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace bvpcorr {

/// First-stage approximation: coefficients of the trial expansion.
struct GalerkinSolution {
    TrialSpace trial;
    std::vector<double> alpha;
    bool converged = false;
    int newton_iterations = 0;
};

namespace detail {

inline double eval_bernstein_sum(const BernsteinBasis& basis, std::span<const double> coeff,
                                 double x, int order) {
    double acc = 0.0;
    for (int i = 0; i <= basis.degree(); ++i) {
        const double b = order == 0 ? basis.value(i, x) : basis.derivative(i, x, order);
        acc += coeff[i] * b;
    }
    return acc;
}

/// First-derivative boundary data of the trial solution as used by the
/// weak-form boundary term. For Neumann it is the prescribed data; for Robin
/// it is derived from the trial's endpoint values through the condition.
struct BoundaryDerivatives {
    double at_lower = 0.0, at_upper = 0.0;
};

inline BoundaryDerivatives weak_boundary_derivatives(const ProblemDefinition& problem,
                                                     const TrialSpace& trial,
                                                     std::span<const double> total) {
    BoundaryDerivatives d;
    if (trial.kind == BcKind::neumann) {
        d.at_lower = problem.left.data / problem.left.deriv_coef;
        d.at_upper = problem.right.data / problem.right.deriv_coef;
    } else if (trial.kind == BcKind::robin) {
        // Endpoint values of a Bernstein expansion are its first and last
        // coefficients.
        const double fa = total.front();
        const double fb = total.back();
        d.at_lower = (problem.left.data - problem.left.value_coef * fa) / problem.left.deriv_coef;
        d.at_upper = (problem.right.data - problem.right.value_coef * fb) / problem.right.deriv_coef;
    }
    return d;
}

}  // namespace detail

/// Weighted-residual vector R_i = [f' N_i]_a^b - int_a^b (f' N_i' + g N_i) dx
/// for each active index i, with the boundary term handled per BC kind:
/// it vanishes for Dirichlet (the active N_i are zero at the endpoints), and
/// otherwise uses the derivative data from the boundary conditions.
inline std::vector<double> galerkin_residual(const ProblemDefinition& problem,
                                             const TrialSpace& trial,
                                             std::span<const double> alpha,
                                             const QuadratureRule& rule) {
    const BernsteinBasis& basis = trial.basis;
    const int p = basis.degree();
    const std::vector<double> total = trial.total_coefficients(alpha);
    const std::size_t m = trial.active.size();
    std::vector<double> r(m, 0.0);

    if (trial.kind != BcKind::dirichlet) {
        const auto bd = detail::weak_boundary_derivatives(problem, trial, total);
        for (std::size_t k = 0; k < m; ++k) {
            const int i = trial.active[k];
            // B_{p,i}(a) = [i == 0], B_{p,i}(b) = [i == p].
            if (i == p) r[k] += bd.at_upper;
            if (i == 0) r[k] -= bd.at_lower;
        }
    }

    const double mid = 0.5 * (problem.lower + problem.upper);
    const double halfwidth = 0.5 * (problem.upper - problem.lower);
    std::vector<double> bval(p + 1), bder(p + 1);
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
        const double x = mid + halfwidth * rule.points[q];
        const double w = halfwidth * rule.weights[q];
        double f = 0.0, fp = 0.0;
        for (int i = 0; i <= p; ++i) {
            bval[i] = basis.value(i, x);
            bder[i] = basis.derivative(i, x, 1);
            f += total[i] * bval[i];
            fp += total[i] * bder[i];
        }
        const double gval = problem.g(x, f, fp);
        if (!std::isfinite(gval))
            throw NonFiniteIntegrand("galerkin_residual: g not finite at x = " + std::to_string(x));
        for (std::size_t k = 0; k < m; ++k) {
            const int i = trial.active[k];
            r[k] -= w * (fp * bder[i] + gval * bval[i]);
        }
    }
    return r;
}

/// Exact derivative of galerkin_residual with respect to alpha, including the
/// Robin boundary-term coupling through the endpoint values.
inline DenseMatrix galerkin_jacobian(const ProblemDefinition& problem, const TrialSpace& trial,
                                     std::span<const double> alpha, const QuadratureRule& rule) {
    const BernsteinBasis& basis = trial.basis;
    const int p = basis.degree();
    const std::vector<double> total = trial.total_coefficients(alpha);
    const std::size_t m = trial.active.size();
    DenseMatrix jac(m, m);

    if (trial.kind == BcKind::robin) {
        // d f'(a) / d alpha_j = -(a1/b1) [j == 0],  d f'(b) / d alpha_j = -(a2/b2) [j == p]
        const double slope_lo = -problem.left.value_coef / problem.left.deriv_coef;
        const double slope_hi = -problem.right.value_coef / problem.right.deriv_coef;
        for (std::size_t k = 0; k < m; ++k) {
            for (std::size_t l = 0; l < m; ++l) {
                const int i = trial.active[k];
                const int j = trial.active[l];
                if (i == p && j == p) jac(k, l) += slope_hi;
                if (i == 0 && j == 0) jac(k, l) -= slope_lo;
            }
        }
    }

    const double mid = 0.5 * (problem.lower + problem.upper);
    const double halfwidth = 0.5 * (problem.upper - problem.lower);
    std::vector<double> bval(p + 1), bder(p + 1);
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
        const double x = mid + halfwidth * rule.points[q];
        const double w = halfwidth * rule.weights[q];
        double f = 0.0, fp = 0.0;
        for (int i = 0; i <= p; ++i) {
            bval[i] = basis.value(i, x);
            bder[i] = basis.derivative(i, x, 1);
            f += total[i] * bval[i];
            fp += total[i] * bder[i];
        }
        const double gf = problem.g_f(x, f, fp);
        const double gfp = problem.g_fp(x, f, fp);
        for (std::size_t k = 0; k < m; ++k) {
            const int i = trial.active[k];
            for (std::size_t l = 0; l < m; ++l) {
                const int j = trial.active[l];
                jac(k, l) -= w * (bder[j] * bder[i] + (gf * bval[j] + gfp * bder[j]) * bval[i]);
            }
        }
    }
    return jac;
}

/// Solves the weighted-residual system by damped Newton from alpha = 0.
/// Problems affine in (f, f') converge in a single iteration.
inline GalerkinSolution solve_galerkin(const ProblemDefinition& problem, int degree,
                                       const QuadratureRule& rule,
                                       const NewtonSettings& settings = {}) {
    TrialSpace trial = build_trial_space(problem, degree);
    const std::size_t m = trial.active.size();
    auto residual = [&](const std::vector<double>& a) {
        return galerkin_residual(problem, trial, a, rule);
    };
    auto jacobian = [&](const std::vector<double>& a) {
        return galerkin_jacobian(problem, trial, a, rule);
    };
    NewtonResult result = newton_solve(residual, jacobian, std::vector<double>(m, 0.0), settings);
    return GalerkinSolution{std::move(trial), std::move(result.x), true, result.iterations};
}

/// Convenience overload with the default 2p-point Gauss rule.
inline GalerkinSolution solve_galerkin(const ProblemDefinition& problem, int degree = 4,
                                       const NewtonSettings& settings = {}) {
    return solve_galerkin(problem, degree, gauss_rule(2 * degree), settings);
}

/// Trial-solution value (deriv_order 0) or derivative (1, 2) at x.
inline double evaluate(const GalerkinSolution& solution, double x, int deriv_order = 0) {
    const std::vector<double> total = solution.trial.total_coefficients(solution.alpha);
    return detail::eval_bernstein_sum(solution.trial.basis, total, x, deriv_order);
}

}  // namespace bvpcorr
