#pragma once

#include "bvpcorr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace bvpcorr {

/// Dense row-major matrix. Plain value type; no view semantics.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), entries_(rows * cols, fill) {}

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    double max_abs() const {
        double m = 0.0;
        for (double v : entries_) m = std::max(m, std::abs(v));
        return m;
    }

    bool all_finite() const {
        return std::all_of(entries_.begin(), entries_.end(),
                           [](double v) { return std::isfinite(v); });
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> entries_;
};

inline double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline bool all_finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

/// Solves Ax = b by LU factorization with partial pivoting.
/// A pivot below 1e-14 * max|A| is treated as singular.
inline std::vector<double> lu_solve(DenseMatrix a, std::vector<double> b) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw InvalidArgument("lu_solve: matrix must be square");
    if (b.size() != n) throw LengthMismatch("lu_solve: rhs length does not match matrix");
    const double pivot_floor = 1e-14 * a.max_abs();

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(a(k, k));
        for (std::size_t r = k + 1; r < n; ++r) {
            if (std::abs(a(r, k)) > best) {
                best = std::abs(a(r, k));
                piv = r;
            }
        }
        if (!(best > pivot_floor)) {
            throw SingularMatrix("lu_solve: pivot " + std::to_string(best) +
                                 " below threshold at column " + std::to_string(k));
        }
        if (piv != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(piv, c));
            std::swap(b[k], b[piv]);
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            const double m = a(r, k) / a(k, k);
            if (m == 0.0) continue;
            a(r, k) = 0.0;
            for (std::size_t c = k + 1; c < n; ++c) a(r, c) -= m * a(k, c);
            b[r] -= m * b[k];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= a(i, c) * b[c];
        b[i] = s / a(i, i);
    }
    return b;
}

struct NewtonSettings {
    double abs_tolerance = 1e-12;  ///< convergence threshold on the residual inf-norm
    int max_iterations = 50;
    double damping_min = 1.0 / 64.0;  ///< smallest backtracking step fraction
    /// Residual level accepted when backtracking can no longer reduce the norm.
    /// Assembled residuals of fine-grid systems bottom out above abs_tolerance
    /// because of the 1/h^2 row scaling; stopping there is the attainable answer.
    double stagnation_tolerance = 1e-9;
};

struct NewtonResult {
    std::vector<double> x;
    int iterations = 0;
};

using VectorFn = std::function<std::vector<double>(const std::vector<double>&)>;
using MatrixFn = std::function<DenseMatrix(const std::vector<double>&)>;

/// Damped Newton iteration: full step first, halved while the residual
/// inf-norm fails to decrease, down to damping_min.
inline NewtonResult newton_solve(const VectorFn& residual, const MatrixFn& jacobian,
                                 std::vector<double> x0, const NewtonSettings& settings = {}) {
    if (!(settings.abs_tolerance > 0.0)) throw InvalidArgument("newton_solve: abs_tolerance must be positive");
    if (settings.max_iterations < 1) throw InvalidArgument("newton_solve: max_iterations must be >= 1");
    if (!(settings.damping_min > 0.0 && settings.damping_min <= 1.0))
        throw InvalidArgument("newton_solve: damping_min must lie in (0, 1]");

    std::vector<double> x = std::move(x0);
    std::vector<double> r = residual(x);
    if (!all_finite(r)) throw DivergedToNonFinite("newton_solve: residual not finite at initial guess");
    double rnorm = inf_norm(r);

    for (int iter = 1; iter <= settings.max_iterations; ++iter) {
        if (rnorm <= settings.abs_tolerance) return {std::move(x), iter - 1};

        DenseMatrix jac = jacobian(x);
        std::vector<double> neg_r(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) neg_r[i] = -r[i];
        std::vector<double> step;
        try {
            step = lu_solve(std::move(jac), std::move(neg_r));
        } catch (const SingularMatrix&) {
            throw NoConvergence("newton_solve: singular jacobian at residual norm " +
                                    std::to_string(rnorm),
                                rnorm);
        }
        if (!all_finite(step)) throw DivergedToNonFinite("newton_solve: step not finite");

        bool accepted = false;
        bool saw_finite_candidate = false;
        for (double s = 1.0; s >= settings.damping_min; s *= 0.5) {
            std::vector<double> xc(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) xc[i] = x[i] + s * step[i];
            std::vector<double> rc = residual(xc);
            if (!all_finite(rc)) continue;
            saw_finite_candidate = true;
            const double rcnorm = inf_norm(rc);
            if (rcnorm < rnorm) {
                x = std::move(xc);
                r = std::move(rc);
                rnorm = rcnorm;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            if (!saw_finite_candidate)
                throw DivergedToNonFinite("newton_solve: all damped candidates non-finite");
            if (rnorm <= settings.stagnation_tolerance) return {std::move(x), iter - 1};
            throw NoConvergence("newton_solve: line search stalled at residual norm " +
                                    std::to_string(rnorm),
                                rnorm);
        }
    }
    if (rnorm <= settings.abs_tolerance) return {std::move(x), settings.max_iterations};
    throw NoConvergence("newton_solve: max iterations reached, residual norm " +
                            std::to_string(rnorm),
                        rnorm);
}

}  // namespace bvpcorr
