#include <doctest.h>

#include <cmath>

#include "octoport/common.hpp"
#include "octoport/quadrature.hpp"
#include "oracles.hpp"

using namespace octoport;

TEST_CASE("gauss-legendre rule sanity") {
    const GaussRule& r8 = gauss_legendre(8);
    double wsum = 0.0;
    for (double w : r8.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    // order-8 rule integrates x^14 on [-1,1] exactly
    double got = 0.0;
    for (int i = 0; i < 8; ++i)
        got += r8.weights[i] * std::pow(r8.nodes[i], 14);
    CHECK(got == doctest::Approx(2.0 / 15.0).epsilon(1e-13));
}

TEST_CASE("adaptive 1d integration") {
    double got = integrate_adaptive(
        [](double x) { return std::exp(-x * x) / std::sqrt(oracles::kPi); },
        -0.5, 0.5, 1e-10);
    CHECK(got == doctest::Approx(0.5204998778130465).epsilon(1e-9));
}

TEST_CASE("rectangle integration") {
    // product Gaussian over [-1,1)^2
    double got = integrate_rectangle(
        [](double q, double p) { return oracles::vacuum_husimi(q, p); },
        {-1.0, 1.0, -1.0, 1.0}, 1e-8);
    double want = oracles::gauss_mass(0, 1, -1, 1) *
                  oracles::gauss_mass(0, 1, -1, 1);
    CHECK(got == doctest::Approx(want).epsilon(1e-8));

    CHECK_THROWS_AS(
        integrate_rectangle([](double q, double p) {
            // rapidly oscillating integrand cannot converge at capped depth
            return std::sin(500.0 * q * p) * 1e6;
        },
                            {-1.0, 1.0, -1.0, 1.0}, 1e-12, 0.25, 8, 1),
        ToleranceError);
}
