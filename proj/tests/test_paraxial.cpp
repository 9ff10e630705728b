#include <doctest.h>

#include <cmath>

#include "bohm/paraxial.hpp"
#include "bohm/wavepacket.hpp"

using namespace bohm;

TEST_SUITE_BEGIN("paraxial");

TEST_CASE("at t = 0 the paraxial and relativistic profiles coincide") {
    const Packet p = right_packet(20.0, 1.0);
    for (double x : {-1.2, 0.0, 0.7}) {
        const Amplitude a = psi_paraxial(p, 2000.0, {0.0, x});
        const Amplitude b = psi1(p, {0.0, x});
        CHECK(a.real() == doctest::Approx(b.real()).epsilon(1e-12));
        CHECK(a.imag() == doctest::Approx(b.imag()).epsilon(1e-12));
    }
}

TEST_CASE("closed form matches quadrature") {
    const Packet pr = right_packet(20.0, 1.0);
    const Packet pl = left_packet(20.0, 1.0);
    for (double t : {0.0, 5.0, -12.0})
        for (double x : {0.0, 0.4, -1.0}) {
            for (const Packet& p : {pr, pl}) {
                const Amplitude a = psi_paraxial(p, 2000.0, {t, x});
                const Amplitude q = psi_paraxial_quad(p, 2000.0, {t, x}, 1e-12);
                CHECK(std::abs(a - q) <= 1e-8 * std::abs(q) + 1e-11);
            }
        }
    CHECK_THROWS_AS(psi_paraxial(pr, -1.0, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("the longitudinal phase is global") {
    const Packet p = right_packet(20.0, 1.0);
    // |psi|^2 must not depend on the kz-induced global phase: compare two kz
    // values after undoing the dispersive spreading by evaluating at t where
    // t/kz matches.
    const double t1 = 100.0, kz1 = 1000.0;
    const double t2 = 200.0, kz2 = 2000.0;  // same t/kz
    for (double x : {0.0, 1.4}) {
        const double d1 = std::norm(psi_paraxial(p, kz1, {t1, x + 20.0 / kz1 * t1}));
        const double d2 = std::norm(psi_paraxial(p, kz2, {t2, x + 20.0 / kz2 * t2}));
        CHECK(d1 == doctest::Approx(d2).epsilon(1e-12));
    }
}

TEST_CASE("single-packet velocity approaches k0/kz") {
    // Long before focus the packets are disjoint; each photon rides its own
    // packet at the classical drift k0/kz.
    const TwoPhotonConfig cfg = symmetric_config(20.0, 1.0);
    const double kz = 2000.0;
    const EqualTimePoint p{-200.0, -2.0, 2.0};  // on the two packet centers
    const auto [v1, v2] = velocity_paraxial(cfg, kz, p);
    CHECK(v1 == doctest::Approx(20.0 / kz).epsilon(1e-3));
    CHECK(v2 == doctest::Approx(-20.0 / kz).epsilon(1e-3));
    CHECK(std::abs(v1) < 1.0);  // timelike in this regime
}

TEST_CASE("mirror antisymmetry") {
    const TwoPhotonConfig cfg = symmetric_config(20.0, 1.0);
    for (double a : {0.1, 0.35}) {
        const auto [v1, v2] = velocity_paraxial(cfg, 2000.0, {30.0, -a, a});
        CHECK(v1 == doctest::Approx(-v2).epsilon(1e-13));
    }
}

TEST_CASE("velocity matches a phase-gradient finite-difference oracle") {
    const TwoPhotonConfig cfg = symmetric_config(20.0, 1.0);
    const double kz = 2000.0;
    const double h = 1e-6;
    for (double t : {0.0, 40.0})
        for (double x1 : {-0.4, 0.1})
            for (double x2 : {0.3, 0.8}) {
                const auto [v1, v2] = velocity_paraxial(cfg, kz, {t, x1, x2});
                const Amplitude c = psi_m_paraxial(cfg, kz, {t, x1, x2});
                const Amplitude dp1 = (psi_m_paraxial(cfg, kz, {t, x1 + h, x2}) -
                                       psi_m_paraxial(cfg, kz, {t, x1 - h, x2})) /
                                      (2.0 * h);
                const Amplitude dp2 = (psi_m_paraxial(cfg, kz, {t, x1, x2 + h}) -
                                       psi_m_paraxial(cfg, kz, {t, x1, x2 - h})) /
                                      (2.0 * h);
                const double f1 = std::imag(std::conj(c) * dp1) / (kz * std::norm(c));
                const double f2 = std::imag(std::conj(c) * dp2) / (kz * std::norm(c));
                CHECK(std::abs(v1 - f1) < 1e-6);
                CHECK(std::abs(v2 - f2) < 1e-6);
            }
}

TEST_CASE("density reduces to 2 kz |psi|^2 as kz grows") {
    const TwoPhotonConfig cfg = symmetric_config(20.0, 1.0);
    double prev = 1e300;
    for (double ratio : {10.0, 100.0, 1000.0}) {
        const double kz = 20.0 * ratio;
        double worst = 0.0;
        for (double x1 : {-0.3, 0.2})
            for (double x2 : {0.5, 1.0}) {
                const ParaxialDensityTerms terms =
                    paraxial_density_terms(cfg, kz, {0.1 * kz / 2000.0, x1, x2});
                worst = std::max(worst, std::abs(terms.rho_over_leading() - 1.0));
                CHECK(std::abs(terms.correction) < std::abs(terms.leading) / ratio);
            }
        CHECK(worst < prev);
        prev = worst;
    }
    CHECK(prev < 1e-5);
}

TEST_CASE("paraxial sampler tracks the spread packets") {
    const TwoPhotonConfig cfg = symmetric_config(20.0, 1.0);
    const double kz = 2000.0;
    const auto pts = sample_initial_paraxial(cfg, kz, -200.0, 5000, 31u);
    double mean1 = 0.0, mean2 = 0.0;
    for (const auto& [x1, x2] : pts) {
        CHECK(x1 < x2);
        mean1 += x1;
        mean2 += x2;
    }
    mean1 /= static_cast<double>(pts.size());
    mean2 /= static_cast<double>(pts.size());
    // Drift centers at -+ (k0/kz) t0 = -+ 2.
    CHECK(mean1 == doctest::Approx(-2.0).epsilon(0.05));
    CHECK(mean2 == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("paraxial transport: snapshot density stays faithful") {
    // Integrate a small paraxial ensemble and compare first/second moments of
    // the snapshot against the analytic density (full GOF runs in the
    // relativistic acceptance suite).
    const TwoPhotonConfig cfg = symmetric_config(20.0, 1.0);
    const double kz = 2000.0;
    const double t0 = -200.0, t1 = 0.0;
    const auto ics = sample_initial_paraxial(cfg, kz, t0, 4000, 8u);
    IntegratorOptions opts;
    opts.sample_dt = 20.0;
    opts.max_step = 10.0;
    const Ensemble ens =
        integrate_ensemble(cfg, make_paraxial_field(cfg, kz), ics, t0, t1, opts, 8u);
    REQUIRE(ens.aborted == 0);
    const auto snap = snapshot(ens, 0.0);
    double m1 = 0.0, m2 = 0.0;
    for (const auto& [x1, x2] : snap) {
        m1 += x1 + x2;
        m2 += (x1 + x2) * (x1 + x2);
    }
    m1 /= static_cast<double>(snap.size());
    m2 /= static_cast<double>(snap.size());
    // At t = 0 the packets overlap at the origin: sum centered on 0 with the
    // analytic spread of the two-blob density.
    CHECK(std::abs(m1) < 0.05);
    const double sd0 = 0.5;  // per-packet position sd at focus (sigma = 1)
    CHECK(m2 == doctest::Approx(2 * sd0 * sd0).epsilon(0.15));
}

TEST_SUITE_END();
