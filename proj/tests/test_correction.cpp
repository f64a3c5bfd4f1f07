#include "bvpcorr/correction.hpp"
#include "bvpcorr/metrics.hpp"
#include "bvpcorr/problems.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

using namespace bvpcorr;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ProblemDefinition quadratic_problem() {
    ProblemDefinition def;
    def.rhs = [](double, double, double) { return 2.0; };
    def.rhs_df = [](double, double, double) { return 0.0; };
    def.rhs_dfp = [](double, double, double) { return 0.0; };
    def.left = {1.0, 0.0, 0.0};
    def.right = {1.0, 0.0, 1.0};
    def.exact = [](double x) { return x * x; };
    return def;
}

std::vector<double> exact_nodes(const Grid& grid, const ScalarFn& f) {
    std::vector<double> v(grid.n() + 1);
    for (int i = 0; i <= grid.n(); ++i) v[i] = f(grid.node(i));
    return v;
}

}  // namespace

TEST_CASE("error right-hand side vanishes when the base is exact") {
    const auto def = quadratic_problem();
    const auto base = solve_galerkin(def, 4);
    const auto err = build_error_problem(def, base);
    for (double x : {0.0, 0.21, 0.5, 0.77, 1.0}) CHECK_THAT(err.g(x, 0.0, 0.0), WithinAbs(0.0, 1e-11));
    CHECK(err.left.data == 0.0);
    CHECK(err.right.data == 0.0);
}

TEST_CASE("error right-hand side at zero equals minus the strong residual of the base") {
    const auto def = get_problem("bratu", 1.0).definition;
    const auto base = solve_galerkin(def, 4);
    const auto err = build_error_problem(def, base);
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int k = 0; k < 20; ++k) {
        const double x = uni(rng);
        const double strong =
            evaluate(base, x, 2) - def.g(x, evaluate(base, x), evaluate(base, x, 1));
        CHECK_THAT(err.g(x, 0.0, 0.0) + strong, WithinAbs(0.0, 1e-12));
    }
}

TEST_CASE("error boundary data is the base's boundary defect") {
    // Dirichlet bases interpolate the data, so the defect is exactly zero.
    for (const char* id : {"p2", "bratu"}) {
        const auto def = get_problem(id, 1.0).definition;
        const auto base = solve_galerkin(def, 4);
        const auto err = build_error_problem(def, base);
        CHECK(err.left.data == 0.0);
        CHECK(err.right.data == 0.0);
        CHECK(err.left.value_coef == def.left.value_coef);
        CHECK(err.right.value_coef == def.right.value_coef);
    }
    // Robin bases satisfy the conditions only weakly; the error problem must
    // carry the (small) defect for the correction to converge.
    const auto def = get_problem("p3").definition;
    const auto base = solve_galerkin(def, 4);
    const auto err = build_error_problem(def, base);
    const double defect_left =
        def.left.data - (def.left.value_coef * evaluate(base, 0.0) +
                         def.left.deriv_coef * evaluate(base, 0.0, 1));
    CHECK_THAT(err.left.data, WithinAbs(defect_left, 1e-15));
    CHECK(std::abs(err.left.data) < 0.05);
    CHECK(std::abs(err.left.data) > 0.0);
}

TEST_CASE("hand-expanded error equations agree with the generic composition") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> x01(0.0, 1.0);
    std::uniform_real_distribution<double> small(-0.1, 0.1);

    SECTION("quadratic first-derivative coupling") {
        const auto def = get_problem("p2").definition;
        const auto base = solve_galerkin(def, 4);
        const auto err = build_error_problem(def, base);
        for (int k = 0; k < 20; ++k) {
            const double x = x01(rng), th = small(rng), thp = small(rng);
            const double f = evaluate(base, x), fp = evaluate(base, x, 1);
            const double t = 2.0 * x + 1.0;
            const double by_hand = 16.0 + t * t * t -
                                   0.25 * (f * fp + f * thp + th * fp + th * thp) -
                                   evaluate(base, x, 2);
            CHECK_THAT(err.g(x, th, thp), WithinAbs(by_hand, 1e-10));
        }
    }

    SECTION("cubic nonlinearity") {
        const auto def = get_problem("p3").definition;
        const auto base = solve_galerkin(def, 4);
        const auto err = build_error_problem(def, base);
        for (int k = 0; k < 20; ++k) {
            const double x = x01(rng), th = small(rng), thp = small(rng);
            const double f = evaluate(base, x);
            const double w = 1.0 + x + f;
            const double by_hand = 0.5 * w * w * w + 1.5 * w * w * th + 1.5 * w * th * th +
                                   0.5 * th * th * th - evaluate(base, x, 2);
            CHECK_THAT(err.g(x, th, thp), WithinAbs(by_hand, 1e-10));
        }
    }

    SECTION("exponential nonlinearity") {
        const double lambda = 1.0;
        const auto def = get_problem("bratu", lambda).definition;
        const auto base = solve_galerkin(def, 4);
        const auto err = build_error_problem(def, base);
        for (int k = 0; k < 20; ++k) {
            const double x = x01(rng), th = small(rng), thp = small(rng);
            const double by_hand =
                -lambda * std::exp(evaluate(base, x)) * std::exp(th) - evaluate(base, x, 2);
            CHECK_THAT(err.g(x, th, thp), WithinAbs(by_hand, 1e-10));
        }
    }
}

TEST_CASE("correcting an exact base leaves it unchanged") {
    const auto def = quadratic_problem();
    const auto base = solve_galerkin(def, 4);
    const auto corrected = correct(def, base, 10);
    CHECK(inf_norm(corrected.error.theta) <= 1e-10);
    for (int i = 0; i <= 10; ++i)
        CHECK_THAT(corrected.corrected_values[i],
                   WithinAbs(evaluate(base, corrected.error.grid.node(i)), 1e-10));
}

TEST_CASE("corrected solution error levels") {
    SECTION("nonlinear Dirichlet benchmark, h = 0.1") {
        const auto problem = get_problem("p2");
        const auto base = solve_galerkin(problem.definition, 4);
        const auto corrected = correct(problem.definition, base, 10);
        const double err =
            linf_error(corrected.corrected_values, exact_nodes(corrected.error.grid, problem.exact));
        CHECK_THAT(err, WithinRel(5.145824e-04, 1e-3));
    }
    SECTION("linear Neumann benchmark, h = 0.1") {
        const auto problem = get_problem("p1");
        const auto base = solve_galerkin(problem.definition, 4);
        const auto corrected = correct(problem.definition, base, 10);
        const double err =
            linf_error(corrected.corrected_values, exact_nodes(corrected.error.grid, problem.exact));
        CHECK_THAT(err, WithinRel(2.254657e-06, 1e-3));
    }
}

TEST_CASE("solved error grid satisfies its boundary conditions") {
    for (const char* id : {"p1", "p2", "p3"}) {
        const auto problem = get_problem(id);
        const auto& def = problem.definition;
        const auto base = solve_galerkin(def, 4);
        const auto err = build_error_problem(def, base);
        const auto corrected = correct(def, base, 10);
        const auto& eg = corrected.error;
        const double left = def.left.value_coef * eg.theta[0] + def.left.deriv_coef * eg.theta_p[0];
        const double right =
            def.right.value_coef * eg.theta[10] + def.right.deriv_coef * eg.theta_p[10];
        CHECK_THAT(left, WithinAbs(err.left.data, 1e-10));
        CHECK_THAT(right, WithinAbs(err.right.data, 1e-10));
    }
}

TEST_CASE("correction improves on the first stage") {
    for (const char* id : {"p2", "p3"}) {
        const auto problem = get_problem(id);
        const auto& def = problem.definition;
        const auto base = solve_galerkin(def, 4);
        for (int n : {20, 40}) {
            const Grid grid(def.lower, def.upper, n);
            std::vector<double> base_nodes(n + 1);
            for (int i = 0; i <= n; ++i) base_nodes[i] = evaluate(base, grid.node(i));
            const auto exact = exact_nodes(grid, problem.exact);
            const double base_err = linf_error(base_nodes, exact);
            const auto corrected = correct(def, base, n);
            const double corr_err = linf_error(corrected.corrected_values, exact);
            CHECK(corr_err * 10.0 <= base_err);
        }
    }
}

TEST_CASE("off-node queries fall back to the base") {
    const auto problem = get_problem("bratu", 1.0);
    const auto base = solve_galerkin(problem.definition, 4);
    const auto corrected = correct(problem.definition, base, 10);
    const auto nodal = corrected.value_at(0.3);
    CHECK(nodal.nodal);
    CHECK(nodal.value == corrected.corrected_values[3]);
    const auto off = corrected.value_at(0.314);
    CHECK_FALSE(off.nodal);
    CHECK(off.value == evaluate(base, 0.314));
}

TEST_CASE("an unconverged base is rejected") {
    const auto def = get_problem("p2").definition;
    GalerkinSolution bogus{build_trial_space(def, 4), {0.0, 0.0, 0.0}, false, 0};
    CHECK_THROWS_AS(build_error_problem(def, bogus), BaseNotConverged);
}

// Characterization of the published reference values for the derivative-type
// benchmarks: they match an error solve whose boundary conditions are
// *Dirichlet data computed from the reference solution* (theta pinned to the
// true endpoint errors), not the error conditions of the problem's own kind.
// Such a solve needs the answer to run, so the library does not offer it; the
// test documents why the corrected accuracy for p1/p3 sits above those
// published values (see the acceptance suite).
TEST_CASE("diagnostic: published p1/p3 values correspond to exact-data error conditions") {
    struct Case {
        const char* id;
        double reference_linf;  // published value at h = 0.1
    };
    for (const Case c : {Case{"p1", 2.0797e-8}, Case{"p3", 7.1799e-6}}) {
        const auto problem = get_problem(c.id);
        const auto& def = problem.definition;
        const auto base = solve_galerkin(def, 4);
        ProblemDefinition err = build_error_problem(def, base);
        err.left = {1.0, 0.0, problem.exact(def.lower) - evaluate(base, def.lower)};
        err.right = {1.0, 0.0, problem.exact(def.upper) - evaluate(base, def.upper)};
        const auto theta = solve_compact_fd(err, 10);
        std::vector<double> corrected(11);
        for (int i = 0; i <= 10; ++i)
            corrected[i] = evaluate(base, theta.grid.node(i)) + theta.f[i];
        const double linf =
            linf_error(corrected, exact_nodes(theta.grid, problem.exact));
        CHECK_THAT(linf, WithinRel(c.reference_linf, 1e-3));
    }
}
