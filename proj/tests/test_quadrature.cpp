#include "bvpcorr/quadrature.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

using namespace bvpcorr;
using Catch::Matchers::WithinAbs;

TEST_CASE("one-point rule is the midpoint rule") {
    const auto rule = gauss_rule(1);
    REQUIRE(rule.points.size() == 1);
    CHECK(rule.points[0] == 0.0);
    CHECK(rule.weights[0] == 2.0);
}

TEST_CASE("two-point rule has the classical nodes") {
    const auto rule = gauss_rule(2);
    CHECK_THAT(rule.points[0], WithinAbs(-1.0 / std::sqrt(3.0), 1e-15));
    CHECK_THAT(rule.points[1], WithinAbs(1.0 / std::sqrt(3.0), 1e-15));
    CHECK_THAT(rule.weights[0], WithinAbs(1.0, 1e-15));
    CHECK_THAT(rule.weights[1], WithinAbs(1.0, 1e-15));
}

TEST_CASE("weights sum to 2 and nodes are symmetric and increasing") {
    for (int n : {1, 2, 3, 5, 8, 16, 32, 64}) {
        const auto rule = gauss_rule(n);
        double sum = 0.0;
        for (double w : rule.weights) {
            CHECK(w > 0.0);
            sum += w;
        }
        CHECK_THAT(sum, WithinAbs(2.0, 1e-13));
        for (int i = 1; i < n; ++i) CHECK(rule.points[i] > rule.points[i - 1]);
        for (int i = 0; i < n; ++i)
            CHECK_THAT(rule.points[i] + rule.points[n - 1 - i], WithinAbs(0.0, 1e-14));
    }
}

TEST_CASE("rule size limits") {
    CHECK_THROWS_AS(gauss_rule(0), UnsupportedOrder);
    CHECK_THROWS_AS(gauss_rule(65), UnsupportedOrder);
}

TEST_CASE("basic integrals") {
    const auto two = gauss_rule(2);
    CHECK_THAT(integrate([](double x) { return x * x; }, 0.0, 1.0, two),
               WithinAbs(1.0 / 3.0, 1e-14));
    CHECK_THAT(integrate([](double) { return 1.0; }, 0.0, 1.0, two), WithinAbs(1.0, 1e-15));
}

TEST_CASE("integral with a closed-form antiderivative") {
    // d/dx (x^3/3 + 16 ln x) = x^2 + 16/x
    const double expected = 26.0 / 3.0 + 16.0 * std::log(3.0);
    const double got =
        integrate([](double x) { return x * x + 16.0 / x; }, 1.0, 3.0, gauss_rule(16));
    CHECK_THAT(got, WithinAbs(expected, 1e-9));
}

TEST_CASE("polynomial exactness up to degree 2n - 1") {
    std::mt19937 rng(7031);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int n : {1, 2, 3, 5, 8, 13}) {
        const auto rule = gauss_rule(n);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<double> coeff(2 * n);  // degree 2n - 1
            for (double& c : coeff) c = uni(rng);
            auto poly = [&](double x) {
                double acc = 0.0;
                for (std::size_t k = coeff.size(); k-- > 0;) acc = acc * x + coeff[k];
                return acc;
            };
            // unit-scale interval so the integrals stay O(1)
            const double a = -0.6 + 0.4 * uni(rng), b = 0.6 + 0.4 * uni(rng);
            double exact = 0.0;
            for (std::size_t k = 0; k < coeff.size(); ++k)
                exact += coeff[k] * (std::pow(b, k + 1.0) - std::pow(a, k + 1.0)) / (k + 1.0);
            CHECK_THAT(integrate(poly, a, b, rule), WithinAbs(exact, 1e-11));
        }
    }
}

TEST_CASE("interval additivity for a smooth integrand") {
    const auto rule = gauss_rule(20);
    auto f = [](double x) { return std::exp(-x) * std::sin(3.0 * x); };
    const double whole = integrate(f, 0.0, 2.0, rule);
    const double split = integrate(f, 0.0, 0.7, rule) + integrate(f, 0.7, 2.0, rule);
    CHECK_THAT(whole, WithinAbs(split, 1e-9));
}

TEST_CASE("integrate input validation") {
    const auto rule = gauss_rule(1);
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 1.0, 1.0, rule), InvalidArgument);
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 2.0, 1.0, rule), InvalidArgument);
    // the midpoint of [-1, 1] is 0, where 1/x blows up
    CHECK_THROWS_AS(integrate([](double x) { return 1.0 / x; }, -1.0, 1.0, rule),
                    NonFiniteIntegrand);
}
