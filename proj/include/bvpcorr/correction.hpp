#pragma once

#include "bvpcorr/compact_fd.hpp"
#include "bvpcorr/galerkin.hpp"
#include "bvpcorr/problem.hpp"

#include <cmath>
#include <memory>
#include <utility>
#include <vector>

namespace bvpcorr {

/// Nodal solution of the error problem: theta_i ~ f(x_i) - ftilde(x_i).
struct ErrorGrid {
    Grid grid;
    std::vector<double> theta;
    std::vector<double> theta_p;
};

/// Base approximation plus the nodal error values.
struct CorrectedSolution {
    GalerkinSolution base;
    ErrorGrid error;
    std::vector<double> corrected_values;  ///< evaluate(base, x_i) + theta_i

    struct Sample {
        double value;
        bool nodal;  ///< false: off-node query answered by the base alone
    };

    /// Corrected value at a grid node; between nodes the error values do not
    /// interpolate, so the query falls back to the base approximation and is
    /// flagged nodal = false.
    Sample value_at(double x) const {
        const Grid& g = error.grid;
        const double tol = 1e-12 * (g.upper() - g.lower());
        const double t = (x - g.lower()) / (g.upper() - g.lower()) * g.n();
        const int i = static_cast<int>(std::lround(t));
        if (i >= 0 && i <= g.n() && std::abs(x - g.node(i)) <= tol)
            return {corrected_values[i], true};
        return {evaluate(base, x), false};
    }
};

/// Error problem of a converged base approximation: with ftilde the base and
/// theta the unknown error,
///     theta'' = g(x, ftilde + theta, ftilde' + theta') - ftilde''
/// under the same boundary-condition coefficients. The boundary data is the
/// residual of the base in the original conditions; for Dirichlet bases it is
/// identically zero (the trial space interpolates the data), for Neumann and
/// Robin it is the small defect left by the weak-form treatment, which the
/// error solve must reproduce for the correction to converge.
inline ProblemDefinition build_error_problem(const ProblemDefinition& problem,
                                             const GalerkinSolution& base) {
    if (!base.converged) throw BaseNotConverged("build_error_problem: base has not converged");

    const auto shared = std::make_shared<const GalerkinSolution>(base);
    const auto orig = std::make_shared<const ProblemDefinition>(problem);

    ProblemDefinition err;
    err.lower = problem.lower;
    err.upper = problem.upper;
    err.rhs = [shared, orig](double x, double th, double thp) {
        return orig->g(x, evaluate(*shared, x) + th, evaluate(*shared, x, 1) + thp) -
               evaluate(*shared, x, 2);
    };
    err.rhs_df = [shared, orig](double x, double th, double thp) {
        return orig->g_f(x, evaluate(*shared, x) + th, evaluate(*shared, x, 1) + thp);
    };
    err.rhs_dfp = [shared, orig](double x, double th, double thp) {
        return orig->g_fp(x, evaluate(*shared, x) + th, evaluate(*shared, x, 1) + thp);
    };

    const double fa = evaluate(base, problem.lower);
    const double fpa = evaluate(base, problem.lower, 1);
    const double fb = evaluate(base, problem.upper);
    const double fpb = evaluate(base, problem.upper, 1);
    err.left = problem.left;
    err.right = problem.right;
    err.left.data = problem.left.data -
                    (problem.left.value_coef * fa + problem.left.deriv_coef * fpa);
    err.right.data = problem.right.data -
                     (problem.right.value_coef * fb + problem.right.deriv_coef * fpb);
    return err;
}

/// Solves the error problem on n subintervals (theta = theta' = 0 start) and
/// adds the nodal error values to the base.
inline CorrectedSolution correct(const ProblemDefinition& problem, const GalerkinSolution& base,
                                 int n, const NewtonSettings& settings = {}) {
    const ProblemDefinition err = build_error_problem(problem, base);
    GridSolution theta = solve_compact_fd(err, n, settings);
    std::vector<double> corrected(n + 1);
    for (int i = 0; i <= n; ++i) corrected[i] = evaluate(base, theta.grid.node(i)) + theta.f[i];
    return CorrectedSolution{base,
                             ErrorGrid{theta.grid, std::move(theta.f), std::move(theta.fp)},
                             std::move(corrected)};
}

}  // namespace bvpcorr
