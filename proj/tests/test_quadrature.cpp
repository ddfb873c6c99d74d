#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lattice/quadrature.hpp"

using namespace lattice;

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
    for (int points : {4, 8, 12}) {
        const auto& rule = gauss_rule(points);
        double wsum = 0.0;
        for (double w : rule.weight) wsum += w;
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
        // x^(2G-1) integrates to zero on [-1, 1], x^(2G-2) to 2/(2G-1)
        double odd = 0.0, even = 0.0;
        for (int i = 0; i < points; ++i) {
            odd += rule.weight[i] * std::pow(rule.node[i], 2 * points - 1);
            even += rule.weight[i] * std::pow(rule.node[i], 2 * points - 2);
        }
        CHECK(std::abs(odd) <= 1e-14);
        CHECK(even == doctest::Approx(2.0 / (2.0 * points - 1.0)).epsilon(1e-12));
    }
}

TEST_CASE("oscillatory panels resolve fast cosines") {
    const double omega = 4000.0;
    const double got = oscillatory_integrate(
        [&](double x) { return std::cos(omega * x); }, 0.0, 1.0, omega);
    CHECK(got == doctest::Approx(std::sin(omega) / omega).epsilon(1e-12));

    const double gotsin = oscillatory_integrate(
        [&](double x) { return std::sin(omega * x); }, 0.0, 1.0, omega);
    CHECK(gotsin ==
          doctest::Approx((1.0 - std::cos(omega)) / omega).epsilon(1e-12));
}

TEST_CASE("panel cap raises QuadratureNonConvergence") {
    CHECK_THROWS_AS(oscillatory_integrate([](double) { return 1.0; }, 0.0, 1.0,
                                          1e12, 16, 2'000'000),
                    QuadratureNonConvergence);
}
