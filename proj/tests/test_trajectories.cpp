#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "bohm/stats.hpp"
#include "bohm/trajectories.hpp"
#include "bohm/weak_value.hpp"

using namespace bohm;

namespace {
const TwoPhotonConfig kCfg = symmetric_config(20.0, 1.0);
}

TEST_SUITE_BEGIN("trajectories");

TEST_CASE("argument validation") {
    const VelocityField f = make_kg_field(kCfg);
    IntegratorOptions opts;
    CHECK_THROWS_AS(integrate_pair(kCfg, f, -1.0, 1.0, 2.0, -2.0, opts), std::invalid_argument);
    CHECK_THROWS_AS(integrate_pair(kCfg, f, 1.0, 1.0, -2.0, 2.0, opts), std::invalid_argument);
}

TEST_CASE("free flight before the packets meet") {
    const VelocityField f = make_kg_field(kCfg);
    IntegratorOptions opts;
    opts.sample_dt = 0.05;
    const TrajectoryPair tp = integrate_pair(kCfg, f, -10.0, 10.0, -10.0, -8.0, opts);
    for (const auto& s : tp.samples) {
        CHECK(std::abs(s.x1 - (-10.0 + (s.t + 10.0))) < 1e-6);
        CHECK(std::abs(s.x2 - (10.0 - (s.t + 10.0))) < 1e-6);
    }
}

TEST_CASE("mirror-symmetric initial conditions stay mirror symmetric") {
    const VelocityField f = make_kg_field(kCfg);
    IntegratorOptions opts;
    const TrajectoryPair tp = integrate_pair(kCfg, f, -2.0, 2.0, -2.0, 2.0, opts);
    REQUIRE(tp.samples.size() == 401);
    for (const auto& s : tp.samples) {
        CHECK(s.x1 == -s.x2);  // bit-exact: the field evaluates antisymmetrically
        CHECK(s.v1 == -s.v2);
    }
    // Samples land on the dt grid.
    CHECK(tp.samples[1].t == doctest::Approx(-1.99).epsilon(1e-15));
    CHECK(tp.samples.back().t == 2.0);
    // Temporal ordering is strict.
    for (std::size_t i = 1; i < tp.samples.size(); ++i)
        CHECK(tp.samples[i].t > tp.samples[i - 1].t);
}

TEST_CASE("tolerance halving moves the endpoint less than 10x the tolerance") {
    const VelocityField f = make_kg_field(kCfg);
    IntegratorOptions loose;
    loose.abs_tol = 2e-9;
    loose.rel_tol = 2e-9;
    IntegratorOptions tight;
    tight.abs_tol = 1e-9;
    tight.rel_tol = 1e-9;
    const TrajectoryPair a = integrate_pair(kCfg, f, -1.8, 1.3, -2.0, 2.0, loose);
    const TrajectoryPair b = integrate_pair(kCfg, f, -1.8, 1.3, -2.0, 2.0, tight);
    const double d = std::max(std::abs(a.samples.back().x1 - b.samples.back().x1),
                              std::abs(a.samples.back().x2 - b.samples.back().x2));
    CHECK(d < 10.0 * 2e-9 * 100);  // generous global-error budget over 400 steps
    CHECK(d < 1e-5);
}

TEST_CASE("non-crossing for a handful of pairs") {
    const VelocityField f = make_kg_field(kCfg);
    IntegratorOptions opts;
    for (double d0 : {0.4, 1.0, 2.0, 3.0}) {
        const TrajectoryPair tp = integrate_pair(kCfg, f, -d0, d0, -2.0, 2.0, opts);
        double min_sep = 1e300;
        for (const auto& s : tp.samples) min_sep = std::min(min_sep, s.x2 - s.x1);
        CHECK(min_sep > 0.0);
    }
}

TEST_CASE("weak-route field reproduces the KG-route trajectory") {
    IntegratorOptions opts;
    const TrajectoryPair a =
        integrate_pair(kCfg, make_kg_field(kCfg), -1.5, 1.1, -2.0, 0.0, opts);
    const TrajectoryPair b =
        integrate_pair(kCfg, make_weak_field(kCfg), -1.5, 1.1, -2.0, 0.0, opts);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        CHECK(std::abs(a.samples[i].x1 - b.samples[i].x1) < 1e-7);
        CHECK(std::abs(a.samples[i].x2 - b.samples[i].x2) < 1e-7);
    }
}

TEST_CASE("positions_at interpolates and guards the span") {
    const VelocityField f = make_kg_field(kCfg);
    IntegratorOptions opts;
    opts.sample_dt = 0.1;
    const TrajectoryPair tp = integrate_pair(kCfg, f, -2.0, 1.7, -2.0, 0.0, opts);
    const auto [a, b] = tp.positions_at(-2.0);
    CHECK(a == -2.0);
    CHECK(b == 1.7);
    // Interpolated point sits between neighbours.
    const auto [m1, m2] = tp.positions_at(-1.234);
    CHECK(std::isfinite(m1));
    CHECK(m1 > -2.0);
    CHECK(m2 < 1.8);
    CHECK_THROWS_AS(tp.positions_at(0.5), OutOfSpan);
    CHECK_THROWS_AS(tp.positions_at(-2.5), OutOfSpan);
}

TEST_CASE("initial sampling is deterministic and well placed") {
    const auto one = sample_initial(kCfg, -2.0, 1, 77u);
    const auto again = sample_initial(kCfg, -2.0, 1, 77u);
    REQUIRE(one.size() == 1);
    CHECK(one[0].first == again[0].first);
    CHECK(one[0].second == again[0].second);

    const auto pts = sample_initial(kCfg, -2.0, 20000, 1234u);
    double mean1 = 0.0, mean2 = 0.0;
    for (const auto& [x1, x2] : pts) {
        CHECK(x1 < x2);
        mean1 += x1;
        mean2 += x2;
    }
    mean1 /= static_cast<double>(pts.size());
    mean2 /= static_cast<double>(pts.size());
    // Marginals peak at the free-flight packet centers -2 and +2 (sd 0.25).
    CHECK(mean1 == doctest::Approx(-2.0).epsilon(0.01));
    CHECK(mean2 == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("sampled initial conditions follow the two-photon density") {
    const double t0 = -2.0;
    const long n = 40000;
    const auto pts = sample_initial(kCfg, t0, n, 2024u);
    // Chi-square in the sum/difference coordinates against the analytic
    // density, 30 bins each over +-4 sd.
    const int bins = 30;
    auto gof = [&](bool use_sum) {
        std::vector<long> counts(bins, 0);
        long outside = 0;
        const double lo = use_sum ? -1.5 : 2.5;
        const double hi = use_sum ? 1.5 : 5.5;
        for (const auto& [x1, x2] : pts) {
            const double v = use_sum ? (x1 + x2) : (x2 - x1);
            if (v < lo || v >= hi) {
                ++outside;
                continue;
            }
            ++counts[static_cast<int>((v - lo) / (hi - lo) * bins)];
        }
        // Expected probabilities by integrating the sampled density over the
        // band (numerically, fine trapezoid in both coordinates).
        std::vector<double> probs(bins, 0.0);
        const int sub = 8, perp_n = 240;
        const double dperp = 16.0 / perp_n;
        double norm = 0.0;
        std::vector<double> densities(static_cast<std::size_t>(bins) * sub, 0.0);
        for (int bi = 0; bi < bins; ++bi)
            for (int si = 0; si < sub; ++si) {
                const double v = lo + (hi - lo) * (bi + (si + 0.5) / sub) / bins;
                double mass = 0.0;
                for (int pi = 0; pi < perp_n; ++pi) {
                    const double w = -8.0 + (pi + 0.5) * dperp;
                    // v = x1 + x2, w = x2 - x1 (or swapped); Jacobian 1/2.
                    const double s = use_sum ? v : w;
                    const double d = use_sum ? w : v;
                    const double x1 = 0.5 * (s - d), x2 = 0.5 * (s + d);
                    if (x1 >= x2) continue;  // ordered pairs only
                    mass += std::norm(psi_m(kCfg, {t0, x1, x2}));
                }
                densities[static_cast<std::size_t>(bi) * sub + si] = mass;
            }
        for (int bi = 0; bi < bins; ++bi)
            for (int si = 0; si < sub; ++si) norm += densities[static_cast<std::size_t>(bi) * sub + si];
        // Ordered pairs carry double density: normalisation handles it.
        const double total_inside = static_cast<double>(n - outside);
        for (int bi = 0; bi < bins; ++bi) {
            double m = 0.0;
            for (int si = 0; si < sub; ++si) m += densities[static_cast<std::size_t>(bi) * sub + si];
            probs[bi] = m / norm * total_inside / static_cast<double>(n);
        }
        return chi_square_binned(counts, probs, n, outside);
    };
    const ChiSquareResult sum_test = gof(true);
    const ChiSquareResult diff_test = gof(false);
    CHECK(sum_test.pvalue > 0.01);
    CHECK(diff_test.pvalue > 0.01);
}

TEST_CASE("rejection sampler guards a broken envelope") {
    // Density wildly above the envelope triggers the violation guard.
    auto density = [](double, double) { return 1e6; };
    CHECK_THROWS_AS(sample_density_2d(density, {{0.0, 1.0, 0.0, 1.0}}, 1.0, 10, 1u),
                    RejectionStall);
}

TEST_CASE("ensemble integration is reproducible and ordered") {
    const auto ics = sample_initial(kCfg, -2.0, 24, 5u);
    IntegratorOptions opts;
    opts.sample_dt = 0.25;
    const VelocityField f = make_kg_field(kCfg);
    const Ensemble a = integrate_ensemble(kCfg, f, ics, -2.0, 0.0, opts, 5u);
    const Ensemble b = integrate_ensemble(kCfg, f, ics, -2.0, 0.0, opts, 5u);
    REQUIRE(a.pairs.size() == 24);
    REQUIRE(b.pairs.size() == 24);
    for (std::size_t i = 0; i < a.pairs.size(); ++i) {
        CHECK(a.pairs[i].samples.front().x1 == ics[i].first);
        for (std::size_t k = 0; k < a.pairs[i].samples.size(); ++k) {
            CHECK(a.pairs[i].samples[k].x1 == b.pairs[i].samples[k].x1);
            CHECK(a.pairs[i].samples[k].x2 == b.pairs[i].samples[k].x2);
        }
    }
    const auto snap = snapshot(a, -2.0);
    for (std::size_t i = 0; i < snap.size(); ++i) {
        CHECK(snap[i].first == ics[i].first);
        CHECK(snap[i].second == ics[i].second);
    }
}

TEST_CASE("boosted construction paths agree") {
    IntegratorOptions opts;
    opts.sample_dt = 0.05;
    for (double theta : {0.2, 0.4}) {
        const BoostedPair bp =
            integrate_boosted(kCfg, Boost(theta), -2.0, 2.0, -2.0, 2.0, opts);
        REQUIRE(bp.path_a.size() == bp.path_b.size());
        CHECK(bp.max_discrepancy < 1e-5);
    }
}

TEST_CASE("backwards-in-time segments appear at theta = 0.6") {
    IntegratorOptions opts;
    const VelocityField f = make_kg_field(kCfg);
    const TrajectoryPair tp = integrate_pair(kCfg, f, -1.2, 1.0, -2.0, 2.0, opts);
    const BackwardsReport rep = detect_backwards_in_time(kCfg, tp, Boost(0.6));
    CHECK(rep.any());
    CHECK(rep.min_rho_prime < 0.0);
    // At a mild boost the same trajectory stays future-directed.
    const BackwardsReport mild = detect_backwards_in_time(kCfg, tp, Boost(0.1));
    CHECK_FALSE(mild.any());
}

TEST_CASE("worker count respects the environment cap") {
    setenv("BOHM_SIM_THREADS", "3", 1);
    CHECK(worker_count() == 3);
    unsetenv("BOHM_SIM_THREADS");
    CHECK(worker_count() >= 1);
}

TEST_SUITE_END();
