#pragma once

#include "bvpcorr/linalg.hpp"
#include "bvpcorr/problem.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bvpcorr {

/// Coefficients of the implicit fourth-order scheme relating nodal first
/// derivatives to nodal values on a three-point stencil.
struct SchemeCoefficients {
    static constexpr double derivative_weight = 0.25;  // weight of f'_{i-1}, f'_{i+1}
    static constexpr double value_weight = 1.5;        // multiplies (f_{i+1} - f_{i-1}) / (2h)
};

/// Uniform grid x_i = a + i h, i = 0..n.
class Grid {
public:
    Grid(double lower, double upper, int n) : lower_(lower), upper_(upper), n_(n) {
        if (!(lower < upper)) throw InvalidArgument("Grid: requires lower < upper");
        if (n < 4)
            throw GridTooCoarse("Grid: need at least 4 subintervals, got " + std::to_string(n));
    }

    double lower() const { return lower_; }
    double upper() const { return upper_; }
    int n() const { return n_; }
    double h() const { return (upper_ - lower_) / n_; }
    double node(int i) const { return lower_ + (upper_ - lower_) * i / n_; }

private:
    double lower_, upper_;
    int n_;
};

/// Paired nodal values and first derivatives, both of length n + 1.
struct GridSolution {
    Grid grid;
    std::vector<double> f;
    std::vector<double> fp;
};

namespace detail {

/// Mapping between the 2n free unknowns and the full (f, f') arrays after
/// boundary-condition elimination, blocked as [free f | free f'].
///   Dirichlet: f_0, f_n fixed; free = (f_1..f_{n-1}, f'_0..f'_n)
///   Neumann:   f'_0, f'_n fixed; free = (f_0..f_n, f'_1..f'_{n-1})
///   Robin:     f'_0, f'_n expressed through f_0, f_n; free as for Neumann
struct FreeMap {
    BcKind kind;
    int n;
    BoundaryCondition left, right;

    int size() const { return 2 * n; }

    int col_f(int i) const {
        if (kind == BcKind::dirichlet) return (i == 0 || i == n) ? -1 : i - 1;
        return i;
    }

    int col_fp(int i) const {
        if (kind == BcKind::dirichlet) return (n - 1) + i;
        return (i == 0 || i == n) ? -1 : (n + 1) + (i - 1);
    }

    /// Overwrites the eliminated entries of u from the boundary data (and,
    /// for Robin, from the current endpoint values).
    void enforce(GridSolution& u) const {
        switch (kind) {
            case BcKind::dirichlet:
                u.f[0] = left.data / left.value_coef;
                u.f[n] = right.data / right.value_coef;
                break;
            case BcKind::neumann:
                u.fp[0] = left.data / left.deriv_coef;
                u.fp[n] = right.data / right.deriv_coef;
                break;
            case BcKind::robin:
                u.fp[0] = (left.data - left.value_coef * u.f[0]) / left.deriv_coef;
                u.fp[n] = (right.data - right.value_coef * u.f[n]) / right.deriv_coef;
                break;
        }
    }

    std::vector<double> pack(const GridSolution& u) const {
        std::vector<double> x(size());
        for (int i = 0; i <= n; ++i) {
            if (col_f(i) >= 0) x[col_f(i)] = u.f[i];
            if (col_fp(i) >= 0) x[col_fp(i)] = u.fp[i];
        }
        return x;
    }

    GridSolution unpack(const Grid& grid, std::span<const double> x) const {
        GridSolution u{grid, std::vector<double>(n + 1, 0.0), std::vector<double>(n + 1, 0.0)};
        for (int i = 0; i <= n; ++i) {
            if (col_f(i) >= 0) u.f[i] = x[col_f(i)];
            if (col_fp(i) >= 0) u.fp[i] = x[col_fp(i)];
        }
        enforce(u);
        return u;
    }
};

inline FreeMap make_free_map(const ProblemDefinition& problem, const Grid& grid) {
    return FreeMap{problem.bc_kind(), grid.n(), problem.left, problem.right};
}

/// Stacks the 2n scheme equations for full (f, f') arrays, in the order:
/// derivative relations (i = 1..n-1), interior ODE rows (i = 1..n-1),
/// left boundary closure, right boundary closure.
inline std::vector<double> stack_equations(const ProblemDefinition& problem, const Grid& grid,
                                           std::span<const double> f,
                                           std::span<const double> fp) {
    const int n = grid.n();
    const double h = grid.h();
    std::vector<double> r(2 * n);
    constexpr double A = SchemeCoefficients::derivative_weight;
    const double c = SchemeCoefficients::value_weight / (2.0 * h);  // 3 / (4h)
    for (int i = 1; i < n; ++i)
        r[i - 1] = c * f[i - 1] - c * f[i + 1] + A * fp[i - 1] + fp[i] + A * fp[i + 1];
    for (int i = 1; i < n; ++i)
        r[(n - 1) + (i - 1)] = 2.0 / (h * h) * (f[i + 1] - 2.0 * f[i] + f[i - 1]) -
                               0.5 / h * (fp[i + 1] - fp[i - 1]) -
                               problem.g(grid.node(i), f[i], fp[i]);
    r[2 * n - 2] = 0.5 / (h * h) * (-23.0 * f[0] + 16.0 * f[1] + 7.0 * f[2]) -
                   1.0 / h * (6.0 * fp[0] + 8.0 * fp[1] + fp[2]) -
                   problem.g(grid.node(0), f[0], fp[0]);
    r[2 * n - 1] = 0.5 / (h * h) * (7.0 * f[n - 2] + 16.0 * f[n - 1] - 23.0 * f[n]) +
                   1.0 / h * (fp[n - 2] + 8.0 * fp[n - 1] + 6.0 * fp[n]) -
                   problem.g(grid.node(n), f[n], fp[n]);
    return r;
}

}  // namespace detail

/// Residual of the 2n-equation compact scheme at u, after enforcing the
/// boundary-condition elimination on a copy of u.
inline std::vector<double> assemble_residual(const ProblemDefinition& problem, const Grid& grid,
                                             const GridSolution& u) {
    const int n = grid.n();
    if (static_cast<int>(u.f.size()) != n + 1 || static_cast<int>(u.fp.size()) != n + 1)
        throw LengthMismatch("assemble_residual: solution arrays must have length n + 1");
    GridSolution v = u;
    detail::make_free_map(problem, grid).enforce(v);
    return detail::stack_equations(problem, grid, v.f, v.fp);
}

/// Exact Jacobian of the stacked residual with respect to the 2n free
/// unknowns, including the Robin elimination chain d f'_0 / d f_0 = -a1/b1
/// (and likewise at the right end).
inline DenseMatrix assemble_jacobian(const ProblemDefinition& problem, const Grid& grid,
                                     const GridSolution& u) {
    const int n = grid.n();
    if (static_cast<int>(u.f.size()) != n + 1 || static_cast<int>(u.fp.size()) != n + 1)
        throw LengthMismatch("assemble_jacobian: solution arrays must have length n + 1");
    const double h = grid.h();
    const detail::FreeMap map = detail::make_free_map(problem, grid);
    GridSolution v = u;
    map.enforce(v);

    DenseMatrix jac(2 * n, 2 * n);
    auto add_f = [&](int row, int i, double coef) {
        const int col = map.col_f(i);
        if (col >= 0) jac(row, col) += coef;
    };
    auto add_fp = [&](int row, int i, double coef) {
        const int col = map.col_fp(i);
        if (col >= 0) {
            jac(row, col) += coef;
        } else if (map.kind == BcKind::robin) {
            if (i == 0)
                jac(row, map.col_f(0)) += coef * (-problem.left.value_coef / problem.left.deriv_coef);
            else if (i == n)
                jac(row, map.col_f(n)) +=
                    coef * (-problem.right.value_coef / problem.right.deriv_coef);
        }
    };

    constexpr double A = SchemeCoefficients::derivative_weight;
    const double c = SchemeCoefficients::value_weight / (2.0 * h);
    for (int i = 1; i < n; ++i) {
        const int row = i - 1;
        add_f(row, i - 1, c);
        add_f(row, i + 1, -c);
        add_fp(row, i - 1, A);
        add_fp(row, i, 1.0);
        add_fp(row, i + 1, A);
    }
    for (int i = 1; i < n; ++i) {
        const int row = (n - 1) + (i - 1);
        const double x = grid.node(i);
        add_f(row, i - 1, 2.0 / (h * h));
        add_f(row, i, -4.0 / (h * h) - problem.g_f(x, v.f[i], v.fp[i]));
        add_f(row, i + 1, 2.0 / (h * h));
        add_fp(row, i - 1, 0.5 / h);
        add_fp(row, i, -problem.g_fp(x, v.f[i], v.fp[i]));
        add_fp(row, i + 1, -0.5 / h);
    }
    {
        const int row = 2 * n - 2;
        const double x = grid.node(0);
        add_f(row, 0, -11.5 / (h * h) - problem.g_f(x, v.f[0], v.fp[0]));
        add_f(row, 1, 8.0 / (h * h));
        add_f(row, 2, 3.5 / (h * h));
        add_fp(row, 0, -6.0 / h - problem.g_fp(x, v.f[0], v.fp[0]));
        add_fp(row, 1, -8.0 / h);
        add_fp(row, 2, -1.0 / h);
    }
    {
        const int row = 2 * n - 1;
        const double x = grid.node(n);
        add_f(row, n - 2, 3.5 / (h * h));
        add_f(row, n - 1, 8.0 / (h * h));
        add_f(row, n, -11.5 / (h * h) - problem.g_f(x, v.f[n], v.fp[n]));
        add_fp(row, n - 2, 1.0 / h);
        add_fp(row, n - 1, 8.0 / h);
        add_fp(row, n, 6.0 / h - problem.g_fp(x, v.f[n], v.fp[n]));
    }
    return jac;
}

/// Newton solve of the compact scheme on n subintervals. The default initial
/// guess is zero with the eliminated entries set from the boundary data.
// TODO: exploit the banded structure of the Jacobian instead of dense LU.
inline GridSolution solve_compact_fd(const ProblemDefinition& problem, int n,
                                     const NewtonSettings& settings = {},
                                     const GridSolution* initial = nullptr) {
    const Grid grid(problem.lower, problem.upper, n);
    const detail::FreeMap map = detail::make_free_map(problem, grid);

    std::vector<double> x0(map.size(), 0.0);
    if (initial != nullptr) {
        if (static_cast<int>(initial->f.size()) != n + 1 ||
            static_cast<int>(initial->fp.size()) != n + 1)
            throw LengthMismatch("solve_compact_fd: initial guess has wrong length");
        x0 = map.pack(*initial);
    }

    auto residual = [&](const std::vector<double>& x) {
        const GridSolution u = map.unpack(grid, x);
        return detail::stack_equations(problem, grid, u.f, u.fp);
    };
    auto jacobian = [&](const std::vector<double>& x) {
        return assemble_jacobian(problem, grid, map.unpack(grid, x));
    };
    NewtonResult result = newton_solve(residual, jacobian, std::move(x0), settings);
    return map.unpack(grid, result.x);
}

}  // namespace bvpcorr
