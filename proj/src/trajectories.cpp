#include "bohm/trajectories.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <thread>

#include "bohm/stats.hpp"
#include "bohm/weak_value.hpp"

namespace bohm {

VelocityField make_kg_field(const TwoPhotonConfig& cfg, const NodePolicy& policy) {
    return [cfg, policy](const MultiPoint& mp) { return velocity_kg(cfg, mp, policy); };
}

VelocityField make_weak_field(const TwoPhotonConfig& cfg, const NodePolicy& policy) {
    return [cfg, policy](const MultiPoint& mp) {
        if (!mp.equal_timeslice())
            throw std::invalid_argument("weak field is defined on equal timeslices only");
        return velocity_m(cfg, {mp.e1.t, mp.e1.x, mp.e2.x}, policy);
    };
}

OdeOptions to_ode_options(const IntegratorOptions& o) {
    OdeOptions out;
    out.abs_tol = o.abs_tol;
    out.rel_tol = o.rel_tol;
    out.min_step = o.min_step;
    out.max_step = o.max_step;
    out.max_node_retries = o.max_retries;
    out.initial_step = std::min(o.sample_dt, o.max_step);
    return out;
}

std::pair<double, double> TrajectoryPair::positions_at(double t) const {
    if (samples.empty()) throw OutOfSpan("positions_at: empty trajectory");
    const double lo = samples.front().t, hi = samples.back().t;
    if (t < lo - 1e-12 || t > hi + 1e-12)
        throw OutOfSpan("positions_at: t outside integration span");
    auto it = std::lower_bound(samples.begin(), samples.end(), t,
                               [](const TrajectorySample& s, double v) { return s.t < v; });
    if (it == samples.end()) --it;
    if (std::abs(it->t - t) < 1e-12) return {it->x1, it->x2};
    if (it == samples.begin()) return {it->x1, it->x2};
    const TrajectorySample& s1 = *it;
    const TrajectorySample& s0 = *(it - 1);
    const OdeState<2> y = hermite<2>(t, s0.t, {s0.x1, s0.x2}, {s0.v1, s0.v2}, s1.t, {s1.x1, s1.x2},
                                     {s1.v1, s1.v2});
    return {y[0], y[1]};
}

namespace {

std::vector<double> sample_grid(double t0, double t1, double dt) {
    std::vector<double> out;
    const double span = t1 - t0;
    const long n = std::lround(std::floor(span / dt + 1e-9));
    out.reserve(static_cast<std::size_t>(n) + 1);
    for (long i = 1; i <= n; ++i) out.push_back(t0 + static_cast<double>(i) * dt);
    if (out.empty() || out.back() < t1 - 1e-12) out.push_back(t1);
    else out.back() = t1;
    return out;
}

}  // namespace

TrajectoryPair integrate_pair(const TwoPhotonConfig& cfg, const VelocityField& field, double x10,
                              double x20, double t0, double t1, const IntegratorOptions& opts) {
    if (!(t1 > t0)) throw std::invalid_argument("integrate_pair: need t1 > t0");
    if (x10 == x20) throw std::invalid_argument("integrate_pair: coincident initial positions");

    auto rhs = [&](double t, const OdeState<2>& y) -> OdeState<2> {
        const auto [v1, v2] = field(equal_time_point(t, y[0], y[1]));
        return {v1, v2};
    };

    TrajectoryPair out;
    out.cfg = cfg;
    const std::vector<double> grid = sample_grid(t0, t1, opts.sample_dt);

    Dopri5<2> solver(rhs, to_ode_options(opts));
    solver.integrate(t0, {x10, x20}, t1, grid.data(), grid.size(),
                     [&](double t, const OdeState<2>& y, const OdeState<2>& f) {
                         out.samples.push_back({t, y[0], y[1], f[0], f[1]});
                     });
    out.stats.steps = solver.stats().accepted;
    out.stats.rejections = solver.stats().rejected;
    out.stats.node_retries = solver.stats().node_retries;
    return out;
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

namespace {

double normal_pdf(double x, double mu, double sd) {
    const double z = (x - mu) / sd;
    return std::exp(-0.5 * z * z) / (sd * 2.50662827463100050242);
}

}  // namespace

std::vector<std::pair<double, double>> sample_density_2d(
    const std::function<double(double, double)>& density, const std::vector<EnvelopeBlob>& blobs,
    double scale, std::size_t n, std::uint64_t seed) {
    if (blobs.empty()) throw std::invalid_argument("sample_density_2d: no envelope blobs");
    Rng rng(seed);
    std::vector<std::pair<double, double>> out;
    out.reserve(n);

    const double wblob = 1.0 / static_cast<double>(blobs.size());
    std::size_t attempts = 0;
    while (out.size() < n) {
        ++attempts;
        if (attempts > 1000000 && static_cast<double>(out.size()) <
                                      1e-6 * static_cast<double>(attempts))
            throw RejectionStall("sample_density_2d: acceptance rate below 1e-6");

        const std::size_t bi = std::min<std::size_t>(
            static_cast<std::size_t>(rng.uniform01() * blobs.size()), blobs.size() - 1);
        const EnvelopeBlob& blob = blobs[bi];
        const double x1 = blob.mu1 + blob.sd1 * rng.normal();
        const double x2 = blob.mu2 + blob.sd2 * rng.normal();

        double env = 0.0;
        for (const auto& bl : blobs)
            env += wblob * normal_pdf(x1, bl.mu1, bl.sd1) * normal_pdf(x2, bl.mu2, bl.sd2);
        const double bound = scale * env;
        const double d = density(x1, x2);
        if (d > bound * (1.0 + 1e-9))
            throw RejectionStall("sample_density_2d: envelope violated (bad bound)");
        if (rng.uniform01() * bound <= d) out.emplace_back(x1, x2);
    }
    return out;
}

std::vector<std::pair<double, double>> sample_initial(const TwoPhotonConfig& cfg, double t0,
                                                      std::size_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_initial: n must be >= 1");
    cfg.validate();

    // |psi_M|^2 <= 2 (sigma_R sigma_L / pi)(e1 + e2): a half/half mixture of
    // the two product Gaussians (blob and exchange blob), scaled by 2.
    const double sdR = 0.5 / cfg.right.width;
    const double sdL = 0.5 / cfg.left.width;
    const std::vector<EnvelopeBlob> blobs = {
        {t0, sdR, -t0, sdL},  // right-mover at x1, left-mover at x2
        {-t0, sdL, t0, sdR},  // exchange
    };
    auto dens = [cfg, t0](double x1, double x2) {
        const Amplitude p = psi_m(cfg, {t0, x1, x2});
        return std::norm(p);
    };

    auto pts = sample_density_2d(dens, blobs, 2.0, n, seed);
    for (auto& [x1, x2] : pts)
        if (x1 > x2) std::swap(x1, x2);
    return pts;
}

// ---------------------------------------------------------------------------
// Parallel map
// ---------------------------------------------------------------------------

unsigned worker_count() {
    if (const char* env = std::getenv("BOHM_SIM_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = std::min<std::size_t>(worker_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

Ensemble integrate_ensemble(const TwoPhotonConfig& cfg, const VelocityField& field,
                            const std::vector<std::pair<double, double>>& ics, double t0, double t1,
                            const IntegratorOptions& opts, std::uint64_t seed) {
    Ensemble ens;
    ens.seed = seed;
    ens.t0 = t0;
    ens.pairs.resize(ics.size());
    std::vector<std::string> diag(ics.size());

    parallel_for(ics.size(), [&](std::size_t i) {
        try {
            ens.pairs[i] = integrate_pair(cfg, field, ics[i].first, ics[i].second, t0, t1, opts);
        } catch (const std::exception& e) {
            diag[i] = "pair " + std::to_string(i) + ": " + e.what();
        }
    });

    // Deterministic compaction: drop aborted pairs in index order.
    std::vector<TrajectoryPair> kept;
    kept.reserve(ens.pairs.size());
    for (std::size_t i = 0; i < ens.pairs.size(); ++i) {
        if (diag[i].empty() && !ens.pairs[i].samples.empty()) {
            kept.push_back(std::move(ens.pairs[i]));
        } else if (!diag[i].empty()) {
            ens.diagnostics.push_back(diag[i]);
            ++ens.aborted;
        }
    }
    ens.pairs = std::move(kept);
    return ens;
}

std::vector<std::pair<double, double>> snapshot(const Ensemble& ens, double t) {
    std::vector<std::pair<double, double>> out;
    out.reserve(ens.pairs.size());
    for (const auto& pair : ens.pairs) out.push_back(pair.positions_at(t));
    return out;
}

// ---------------------------------------------------------------------------
// Boosted-frame trajectories
// ---------------------------------------------------------------------------

BoostedPair integrate_boosted(const TwoPhotonConfig& cfg, const Boost& b, double x10, double x20,
                              double t0, double t1, const IntegratorOptions& opts,
                              const NodePolicy& policy) {
    BoostedPair out;

    // Path (a): original-frame solution, boosted pointwise.
    const TrajectoryPair orig = integrate_pair(cfg, make_kg_field(cfg, policy), x10, x20, t0, t1, opts);
    out.path_a.reserve(orig.samples.size());
    for (const auto& s : orig.samples) {
        out.path_a.push_back({s.t, boost_event(b, {s.t, s.x1}), boost_event(b, {s.t, s.x2})});
    }

    // Path (b): primed-coordinate integration with the redshifted packets.
    // State (t1', x1', t2', x2'); the evolution parameter is the original
    // frame's timeslice label, whose rate against each particle's primed
    // clock is dt_i'/dlambda = 1 / (gamma (1 + theta v_i')). The field is
    // evaluated at the two staggered primed events, so this is the genuinely
    // multitime, boosted-frame computation.
    const TwoPhotonConfig boosted_cfg = redshift_packets(b, cfg);
    const double gamma = b.gamma();
    const double theta = b.theta;

    auto rhs = [&](double /*lambda*/, const OdeState<4>& y) -> OdeState<4> {
        const MultiPoint mp{{y[0], y[1]}, {y[2], y[3]}};
        const auto [v1p, v2p] = velocity_kg(boosted_cfg, mp, policy);
        const double r1 = 1.0 / (gamma * (1.0 + theta * v1p));
        const double r2 = 1.0 / (gamma * (1.0 + theta * v2p));
        return {r1, v1p * r1, r2, v2p * r2};
    };

    const Event e10 = boost_event(b, {t0, x10});
    const Event e20 = boost_event(b, {t0, x20});
    std::vector<double> grid;
    grid.reserve(orig.samples.size());
    for (std::size_t i = 1; i < orig.samples.size(); ++i) grid.push_back(orig.samples[i].t);

    Dopri5<4> solver(rhs, to_ode_options(opts));
    solver.integrate(t0, {e10.t, e10.x, e20.t, e20.x}, t1, grid.data(), grid.size(),
                     [&](double lambda, const OdeState<4>& y, const OdeState<4>&) {
                         out.path_b.push_back({lambda, {y[0], y[1]}, {y[2], y[3]}});
                     });

    const std::size_t m = std::min(out.path_a.size(), out.path_b.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& a = out.path_a[i];
        const auto& bb = out.path_b[i];
        worst = std::max({worst, std::abs(a.e1.t - bb.e1.t), std::abs(a.e1.x - bb.e1.x),
                          std::abs(a.e2.t - bb.e2.t), std::abs(a.e2.x - bb.e2.x)});
    }
    out.max_discrepancy = worst;
    return out;
}

BackwardsReport detect_backwards_in_time(const TwoPhotonConfig& cfg, const TrajectoryPair& pair,
                                         const Boost& b) {
    BackwardsReport rep;
    rep.min_rho_prime = std::numeric_limits<double>::infinity();
    for (const auto& s : pair.samples) {
        const auto [c1, c2] = currents_kg(cfg, equal_time_point(s.t, s.x1, s.x2));
        const CurrentDensity b1 = boost_current(b, c1);
        const CurrentDensity b2 = boost_current(b, c2);
        if (b1.rho < 0.0) ++rep.samples_negative_1;
        if (b2.rho < 0.0) ++rep.samples_negative_2;
        rep.min_rho_prime = std::min({rep.min_rho_prime, b1.rho, b2.rho});
    }
    return rep;
}

}  // namespace bohm
