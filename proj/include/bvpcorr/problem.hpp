#pragma once

#include "bvpcorr/errors.hpp"

#include <cmath>
#include <functional>
#include <string>

namespace bvpcorr {

enum class BcKind { dirichlet, neumann, robin };

inline std::string to_string(BcKind k) {
    switch (k) {
        case BcKind::dirichlet: return "Dirichlet";
        case BcKind::neumann: return "Neumann";
        case BcKind::robin: return "Robin";
    }
    return "?";
}

/// One endpoint condition  value_coef * f + deriv_coef * f' = data.
struct BoundaryCondition {
    double value_coef = 1.0;
    double deriv_coef = 0.0;
    double data = 0.0;
};

using RhsFn = std::function<double(double, double, double)>;  // (x, f, f')
using ScalarFn = std::function<double(double)>;

/// Two-point boundary value problem  f'' = g(x, f, f')  on [lower, upper].
///
/// rhs_df / rhs_dfp are the partial derivatives of g with respect to f and
/// f'. They may be left empty; g_f / g_fp then fall back to central
/// differences with step 1e-7 * (1 + |argument|).
struct ProblemDefinition {
    double lower = 0.0;
    double upper = 1.0;
    RhsFn rhs;
    RhsFn rhs_df;
    RhsFn rhs_dfp;
    BoundaryCondition left;
    BoundaryCondition right;
    ScalarFn exact;  ///< optional reference solution

    BcKind bc_kind() const {
        const bool a1 = left.value_coef != 0.0, b1 = left.deriv_coef != 0.0;
        const bool a2 = right.value_coef != 0.0, b2 = right.deriv_coef != 0.0;
        if (!a1 && !b1) throw InvalidArgument("ProblemDefinition: left condition is identically zero");
        if (!a2 && !b2) throw InvalidArgument("ProblemDefinition: right condition is identically zero");
        if (!b1 && !b2) return BcKind::dirichlet;
        if (!a1 && !a2) return BcKind::neumann;
        if (!b1 || !b2)
            throw InvalidArgument(
                "ProblemDefinition: mixed Dirichlet/Robin conditions are not supported");
        return BcKind::robin;
    }

    double g(double x, double f, double fp) const { return rhs(x, f, fp); }

    double g_f(double x, double f, double fp) const {
        if (rhs_df) return rhs_df(x, f, fp);
        const double e = 1e-7 * (1.0 + std::abs(f));
        return (rhs(x, f + e, fp) - rhs(x, f - e, fp)) / (2.0 * e);
    }

    double g_fp(double x, double f, double fp) const {
        if (rhs_dfp) return rhs_dfp(x, f, fp);
        const double e = 1e-7 * (1.0 + std::abs(fp));
        return (rhs(x, f, fp + e) - rhs(x, f, fp - e)) / (2.0 * e);
    }
};

}  // namespace bvpcorr
