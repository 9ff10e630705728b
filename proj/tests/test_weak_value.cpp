#include <doctest.h>

#include <cmath>

#include "bohm/kg_dynamics.hpp"
#include "bohm/stats.hpp"
#include "bohm/weak_value.hpp"

using namespace bohm;

TEST_SUITE_BEGIN("weak_value");

TEST_CASE("psi_m is symmetric under exchanging the detector positions") {
    const TwoPhotonConfig cfg = symmetric_config(20.0, 1.0);
    Rng rng(3u);
    for (int i = 0; i < 30; ++i) {
        const double t = -2.0 + 4.0 * rng.uniform01();
        const double x1 = -3.0 + 6.0 * rng.uniform01();
        const double x2 = -3.0 + 6.0 * rng.uniform01();
        CHECK(psi_m(cfg, {t, x1, x2}) == psi_m(cfg, {t, x2, x1}));
    }
}

TEST_CASE("detector relabeling: hA(x1, x2) = hB(x2, x1)") {
    const TwoPhotonConfig cfg{right_packet(18.0, 0.9), left_packet(22.0, 1.1)};
    const WvNumerators n1 = wv_numerators(cfg, {-0.5, -0.8, 0.6});
    const WvNumerators n2 = wv_numerators(cfg, {-0.5, 0.6, -0.8});
    CHECK(n1.hA == n2.hB);
    CHECK(n1.hB == n2.hA);
    CHECK(n1.kA == n2.kB);
    CHECK(n1.kB == n2.kA);
}

TEST_CASE("far separated photons: momentum over energy approaches +-1") {
    const TwoPhotonConfig cfg = symmetric_config(20.0, 1.0);
    const EqualTimePoint p{-6.0, -6.0, 6.0};
    const WvNumerators n = wv_numerators(cfg, p);
    CHECK(std::abs(n.kA / n.hA - 1.0) < 1e-6);
    CHECK(std::abs(n.kB / n.hB + 1.0) < 1e-6);
    // And the product limit of psi_m itself.
    const Amplitude direct = psi1(cfg.right, {p.t, p.x1}) * psi2(cfg.left, {p.t, p.x2});
    CHECK(std::norm(psi_m(cfg, p)) == doctest::Approx(0.5 * std::norm(direct)).epsilon(1e-25));
}

TEST_CASE("brackets reproduce the KG current components on the timeslice") {
    const TwoPhotonConfig cfg = symmetric_config(20.0, 1.0);
    Rng rng(11u);
    const double scale = peak_density_estimate(cfg);
    for (int i = 0; i < 100; ++i) {
        const double t = -2.0 + 4.0 * rng.uniform01();
        const double x1 = -4.0 + 8.0 * rng.uniform01();
        const double x2 = -4.0 + 8.0 * rng.uniform01();
        const auto [c1, c2] = currents_kg(cfg, equal_time_point(t, x1, x2));
        const Amplitude pm = psi_m(cfg, {t, x1, x2});
        const WvNumerators n = wv_numerators(cfg, {t, x1, x2});
        CHECK(std::abs(c1.rho - 2 * std::real(std::conj(pm) * n.hA)) < 1e-12 * scale);
        CHECK(std::abs(c2.rho - 2 * std::real(std::conj(pm) * n.hB)) < 1e-12 * scale);
        CHECK(std::abs(c1.j - 2 * std::real(std::conj(pm) * n.kA)) < 1e-12 * scale);
        CHECK(std::abs(c2.j - 2 * std::real(std::conj(pm) * n.kB)) < 1e-12 * scale);
    }
}

TEST_CASE("velocity_m equals velocity_kg on the equal timeslice") {
    const TwoPhotonConfig cfg = symmetric_config(20.0, 1.0);
    Rng rng(17u);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double t = -2.0 + 4.0 * rng.uniform01();
        const double x1 = -4.0 + 8.0 * rng.uniform01();
        const double x2 = -4.0 + 8.0 * rng.uniform01();
        try {
            const auto [m1, m2] = velocity_m(cfg, {t, x1, x2});
            const auto [k1, k2] = velocity_kg(cfg, equal_time_point(t, x1, x2));
            worst = std::max({worst, std::abs(m1 - k1), std::abs(m2 - k2)});
        } catch (const NodeSingularity&) {
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("mirror antisymmetry of the measured velocities") {
    const TwoPhotonConfig cfg = symmetric_config(20.0, 1.0);
    const auto [v1, v2] = velocity_m(cfg, {-0.6, -1.1, 1.1});
    CHECK(v1 == doctest::Approx(-v2).epsilon(1e-14));
}

TEST_SUITE_END();
