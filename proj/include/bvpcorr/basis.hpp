#pragma once

#include "bvpcorr/errors.hpp"
#include "bvpcorr/problem.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bvpcorr {

namespace detail {

inline constexpr int kMaxBernsteinDegree = 20;

/// Pascal triangle of binomial coefficients, exact integers up to degree 20.
inline constexpr auto kBinomial = [] {
    std::array<std::array<std::uint64_t, kMaxBernsteinDegree + 1>, kMaxBernsteinDegree + 1> c{};
    for (int n = 0; n <= kMaxBernsteinDegree; ++n) {
        c[n][0] = 1;
        for (int k = 1; k <= n; ++k)
            c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
    }
    return c;
}();

/// x^k for small non-negative k; 0^0 = 1 so endpoint values come out exact.
inline double ipow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

}  // namespace detail

/// Bernstein polynomials  B_{p,i}(x) = C(p,i) (xn-x)^{p-i} (x-x0)^i / (xn-x0)^p
/// over an arbitrary interval [x0, xn].
class BernsteinBasis {
public:
    BernsteinBasis(int degree, double lower, double upper)
        : degree_(degree), lower_(lower), upper_(upper) {
        if (degree < 1) throw DegreeTooSmall("BernsteinBasis: degree must be >= 1");
        if (degree > detail::kMaxBernsteinDegree)
            throw DegreeTooLarge("BernsteinBasis: degree must be <= " +
                                 std::to_string(detail::kMaxBernsteinDegree));
        if (!(lower < upper)) throw InvalidArgument("BernsteinBasis: requires lower < upper");
    }

    int degree() const { return degree_; }
    double lower() const { return lower_; }
    double upper() const { return upper_; }
    double length() const { return upper_ - lower_; }

    double value(int i, double x) const {
        check_index(i);
        return raw(degree_, i, checked(x));
    }

    /// Analytic derivative of the requested order (1 or 2), via the degree
    /// reduction  B'_{p,i} = p (B_{p-1,i-1} - B_{p-1,i}) / (xn - x0).
    double derivative(int i, double x, int order) const {
        check_index(i);
        const double xv = checked(x);
        const int p = degree_;
        const double len = length();
        if (order == 1) {
            return p / len * (raw(p - 1, i - 1, xv) - raw(p - 1, i, xv));
        }
        if (order == 2) {
            if (p < 2) return 0.0;
            return p * (p - 1) / (len * len) *
                   (raw(p - 2, i - 2, xv) - 2.0 * raw(p - 2, i - 1, xv) + raw(p - 2, i, xv));
        }
        throw InvalidArgument("BernsteinBasis::derivative: order must be 1 or 2");
    }

private:
    void check_index(int i) const {
        if (i < 0 || i > degree_)
            throw IndexOutOfRange("BernsteinBasis: index " + std::to_string(i) +
                                  " outside [0, " + std::to_string(degree_) + "]");
    }

    double checked(double x) const {
        const double slack = 1e-12 * length();
        if (x < lower_ - slack || x > upper_ + slack)
            throw PointOutsideInterval("BernsteinBasis: x = " + std::to_string(x) +
                                       " outside [" + std::to_string(lower_) + ", " +
                                       std::to_string(upper_) + "]");
        return std::min(std::max(x, lower_), upper_);
    }

    /// B_{p,i}(x) with out-of-range indices treated as zero.
    double raw(int p, int i, double x) const {
        if (i < 0 || i > p) return 0.0;
        const double u = x - lower_;
        const double v = upper_ - x;
        return static_cast<double>(detail::kBinomial[p][i]) * detail::ipow(v, p - i) *
               detail::ipow(u, i) / detail::ipow(length(), p);
    }

    int degree_;
    double lower_, upper_;
};

/// Trial space for the weighted-residual stage: the affine family
/// N0 + span{ N_j : j in active }, expressed in the Bernstein basis.
///
/// Dirichlet problems keep the interior polynomials (which vanish at both
/// endpoints) and put the boundary data into N0, the linear interpolant of
/// the two boundary values. Neumann and Robin problems keep the full index
/// set with N0 = 0; their boundary data enters through the weak-form
/// boundary term instead.
struct TrialSpace {
    BernsteinBasis basis;
    BcKind kind;
    std::vector<int> active;
    std::vector<double> n0;  ///< Bernstein coefficients of N0, size degree + 1

    /// Bernstein coefficients of N0 + sum alpha_j N_j.
    std::vector<double> total_coefficients(std::span<const double> alpha) const {
        if (alpha.size() != active.size())
            throw LengthMismatch("TrialSpace: alpha length does not match active set");
        std::vector<double> t = n0;
        for (std::size_t k = 0; k < active.size(); ++k) t[active[k]] += alpha[k];
        return t;
    }
};

inline TrialSpace build_trial_space(const ProblemDefinition& problem, int degree) {
    const BcKind kind = problem.bc_kind();
    if (kind == BcKind::dirichlet && degree < 2)
        throw DegreeTooSmall("build_trial_space: Dirichlet problems need degree >= 2");
    if (degree < 1) throw DegreeTooSmall("build_trial_space: degree must be >= 1");

    TrialSpace space{BernsteinBasis(degree, problem.lower, problem.upper), kind, {}, {}};
    space.n0.assign(degree + 1, 0.0);
    if (kind == BcKind::dirichlet) {
        for (int j = 1; j < degree; ++j) space.active.push_back(j);
        const double va = problem.left.data / problem.left.value_coef;
        const double vb = problem.right.data / problem.right.value_coef;
        // Linear precision: coefficients of a linear function are its values
        // at the uniformly spaced Greville points.
        for (int i = 0; i <= degree; ++i)
            space.n0[i] = va + (vb - va) * static_cast<double>(i) / degree;
    } else {
        for (int j = 0; j <= degree; ++j) space.active.push_back(j);
    }
    return space;
}

}  // namespace bvpcorr
