#include <doctest.h>

#include <cmath>

#include "bohm/metric.hpp"
#include "bohm/stats.hpp"

using namespace bohm;

TEST_SUITE_BEGIN("metric");

TEST_CASE("lightlike motion is flat") {
    CHECK(shift_from_current({1.0, 1.0}).vs == doctest::Approx(0.0));
    CHECK(shift_from_current({1.0, -1.0}).vs == doctest::Approx(0.0));
    CHECK(shift_from_current({2.0, 3.0}).vs == doctest::Approx(0.5));
}

TEST_CASE("line element reconstructs from the sample") {
    const MetricSample ms{0.5};
    CHECK(ms.g_tt() == doctest::Approx(-(1.0 - 0.25)));
    CHECK(ms.g_tx() == doctest::Approx(-0.5));
    CHECK(ms.g_xx() == 1.0);
}

TEST_CASE("null coordinate velocity") {
    CHECK(coordinate_velocity(MetricSample{0.0}, +1) == doctest::Approx(1.0));
    CHECK(coordinate_velocity(MetricSample{0.0}, -1) == doctest::Approx(-1.0));
    CHECK(coordinate_velocity(MetricSample{0.5}, +1) == doctest::Approx(1.5));
    CHECK(coordinate_velocity(CurrentDensity{1.0, 1.5}) == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("round trip returns j/rho for random currents") {
    Rng rng(21u);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        double rho;
        do {
            rho = -4.0 + 8.0 * rng.uniform01();
        } while (std::abs(rho) <= 1e-6);
        const double j = -6.0 + 12.0 * rng.uniform01();
        const double v = coordinate_velocity(CurrentDensity{rho, j});
        const double expect = j / rho;
        worst = std::max(worst, std::abs(v - expect) / std::max(1.0, std::abs(expect)));
    }
    CHECK(worst < 1e-14);
}

TEST_CASE("vs is continuous across sign changes of j away from nodes") {
    const double eps = 1e-9;
    const double a = shift_from_current({1.0, eps}).vs;
    const double b = shift_from_current({1.0, -eps}).vs;
    CHECK(std::abs(a - b) < 3e-9);
    CHECK(a == doctest::Approx(-1.0 + eps).epsilon(1e-12));  // subluminal branch dips to -1
}

TEST_CASE("node guard") {
    CHECK_THROWS_AS(shift_from_current({0.0, 1.0}), NodeSingularity);
    CHECK_THROWS_AS(shift_from_current({1e-9, 1.0}, 1e-6), NodeSingularity);
}

TEST_SUITE_END();
