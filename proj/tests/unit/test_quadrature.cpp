#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "gausscrit/errors.hpp"
#include "gausscrit/quadrature.hpp"

using namespace gausscrit;

TEST(GaussLegendre, SinglePoint) {
    const auto rule = gauss_legendre(1);
    ASSERT_EQ(rule.order(), 1u);
    EXPECT_EQ(rule.nodes[0], 0.0);
    EXPECT_DOUBLE_EQ(rule.weights[0], 2.0);
}

TEST(GaussLegendre, TwoPoints) {
    const auto rule = gauss_legendre(2);
    EXPECT_NEAR(rule.nodes[0], -1.0 / std::sqrt(3.0), 2e-16);
    EXPECT_NEAR(rule.nodes[1], 1.0 / std::sqrt(3.0), 2e-16);
    EXPECT_NEAR(rule.weights[0], 1.0, 1e-15);
}

TEST(GaussLegendre, FivePoints) {
    const auto rule = gauss_legendre(5);
    const double outer = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
    EXPECT_NEAR(rule.nodes[4], outer, 1e-15);
    EXPECT_NEAR(rule.nodes[2], 0.0, 1e-16);
    EXPECT_NEAR(rule.weights[2], 128.0 / 225.0, 1e-15);
    EXPECT_NEAR(rule.weights[4], (322.0 - 13.0 * std::sqrt(70.0)) / 900.0, 1e-15);
}

TEST(GaussLegendre, WeightsSumToTwoAndNodesAscend) {
    for (int n : {3, 8, 48, 64, 200}) {
        const auto rule = gauss_legendre(n);
        EXPECT_NEAR(std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0), 2.0, 1e-13) << n;
        for (int i = 1; i < n; ++i) {
            EXPECT_LT(rule.nodes[i - 1], rule.nodes[i]);
            EXPECT_NEAR(rule.nodes[i - 1], -rule.nodes[n - i], 1e-15);
        }
    }
}

TEST(GaussLegendre, ExactForPolynomials) {
    const int n = 12;
    const auto rule = gauss_legendre(n);
    for (int k = 0; k < 2 * n; ++k) {
        const double got = integrate(rule, 0.0, 1.0, [k](double x) { return std::pow(x, k); });
        EXPECT_NEAR(got, 1.0 / (k + 1), 1e-14) << k;
    }
}

TEST(GaussLegendre, SmoothIntegrand) {
    const auto rule = gauss_legendre(20);
    EXPECT_NEAR(integrate(rule, -1.0, 2.0, [](double x) { return std::exp(x); }), std::exp(2.0) - std::exp(-1.0), 1e-13);
}

TEST(GaussLegendre, RejectsNonPositiveOrder) {
    EXPECT_THROW(gauss_legendre(0), ValidationError);
    EXPECT_THROW(gauss_legendre(-3), ValidationError);
}
