#ifndef BOHM_TRAJECTORIES_HPP
#define BOHM_TRAJECTORIES_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bohm/kg_dynamics.hpp"
#include "bohm/lorentz.hpp"
#include "bohm/ode.hpp"
#include "bohm/types.hpp"

namespace bohm {

/// A velocity field is an evaluator over multitime points. Equal-timeslice
/// integration probes it at t1 = t2 only; the boosted-frame machinery
/// evaluates genuinely staggered times.
using VelocityField = std::function<std::pair<double, double>(const MultiPoint&)>;

VelocityField make_kg_field(const TwoPhotonConfig& cfg, const NodePolicy& policy = {});
/// Measurement-route field; defined on equal timeslices only.
VelocityField make_weak_field(const TwoPhotonConfig& cfg, const NodePolicy& policy = {});

struct IntegratorOptions {
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
    double sample_dt = 0.01;
    int max_retries = 40;
    double min_step = 1e-12;
    double max_step = 0.25;
};

OdeOptions to_ode_options(const IntegratorOptions& o);

struct TrajectorySample {
    double t, x1, x2, v1, v2;
};

struct IntegratorStats {
    long steps = 0;
    long rejections = 0;
    long node_retries = 0;
};

struct TrajectoryPair {
    std::vector<TrajectorySample> samples;  // strictly increasing t
    TwoPhotonConfig cfg;
    IntegratorStats stats;

    double t_begin() const { return samples.front().t; }
    double t_end() const { return samples.back().t; }

    /// Dense-ish output: exact sample on a hit, cubic Hermite between
    /// samples. Throws OutOfSpan outside the integration span.
    std::pair<double, double> positions_at(double t) const;
};

/// Integrate the coupled pair dx_i/dt = v_i(t, x1, x2) from t0 to t1 (t1 >
/// t0), sampling every opts.sample_dt (plus the endpoint). Node hits retry
/// with halved steps (NodeEncounter after opts.max_retries); StepUnderflow
/// below opts.min_step.
TrajectoryPair integrate_pair(const TwoPhotonConfig& cfg, const VelocityField& field, double x10,
                              double x20, double t0, double t1, const IntegratorOptions& opts);

// ---------------------------------------------------------------------------
// Ensembles
// ---------------------------------------------------------------------------

/// Gaussian blob of a two-factor product density, for rejection envelopes.
struct EnvelopeBlob {
    double mu1, sd1, mu2, sd2;
};

/// Rejection-sample n points from `density` (unnormalised OK) under the
/// envelope bound density <= scale * mixture(blobs). Deterministic for fixed
/// seed. Throws RejectionStall if the acceptance rate drops below 1e-6.
std::vector<std::pair<double, double>> sample_density_2d(
    const std::function<double(double, double)>& density, const std::vector<EnvelopeBlob>& blobs,
    double scale, std::size_t n, std::uint64_t seed);

/// Draw n initial pairs from |psi_M(t0, x1, x2)|^2, each ordered x1 < x2.
std::vector<std::pair<double, double>> sample_initial(const TwoPhotonConfig& cfg, double t0,
                                                      std::size_t n, std::uint64_t seed);

struct Ensemble {
    std::vector<TrajectoryPair> pairs;
    std::uint64_t seed = 0;
    double t0 = 0.0;
    std::vector<std::string> diagnostics;  // per aborted pair, if any
    std::size_t aborted = 0;
};

/// Integrate many pairs in parallel (worker count capped by BOHM_SIM_THREADS)
/// with deterministic output order. Pairs whose integration fails on a
/// persistent node are dropped with a diagnostic, never fabricated.
Ensemble integrate_ensemble(const TwoPhotonConfig& cfg, const VelocityField& field,
                            const std::vector<std::pair<double, double>>& ics, double t0, double t1,
                            const IntegratorOptions& opts, std::uint64_t seed = 0);

/// Positions of every pair at time t (dense-output interpolation).
std::vector<std::pair<double, double>> snapshot(const Ensemble& ens, double t);

// ---------------------------------------------------------------------------
// Boosted-frame trajectories
// ---------------------------------------------------------------------------

/// One trajectory pair seen from a boosted frame: per-particle primed events
/// at each original-frame sample parameter. t' of the two particles differ
/// (relativity of simultaneity) and need not be monotone (backwards-in-time
/// segments appear once rho' changes sign).
struct BoostedSample {
    double lambda;  // original-frame evolution parameter of this sample
    Event e1;       // primed event of particle 1
    Event e2;       // primed event of particle 2
};

struct BoostedPair {
    std::vector<BoostedSample> path_a;  // pointwise boost of the original solution
    std::vector<BoostedSample> path_b;  // fresh integration in primed coordinates
    double max_discrepancy = 0.0;       // max |a - b| over samples and coordinates
};

/// Construct the boosted view of one pair two independent ways:
///   (a) boost_event applied to every sample of an original-frame solution;
///   (b) a fresh integration carried out entirely in primed coordinates with
///       the redshifted packet parameters, started from the two (staggered)
///       boosted initial events and advanced so the pair stays synchronised
///       with the original-frame timeslices. Evaluates the velocity field at
///       genuinely unequal primed times; agreement with (a) validates the
///       redshift covariance of the currents and the velocity addition rule
///       to integrator accuracy.
BoostedPair integrate_boosted(const TwoPhotonConfig& cfg, const Boost& b, double x10, double x20,
                              double t0, double t1, const IntegratorOptions& opts,
                              const NodePolicy& policy = {});

/// Scan a trajectory for samples whose boosted density gamma (rho - theta j)
/// is negative: the backwards-in-time onset in the boosted frame.
struct BackwardsReport {
    std::size_t samples_negative_1 = 0;
    std::size_t samples_negative_2 = 0;
    double min_rho_prime = 0.0;
    bool any() const { return samples_negative_1 + samples_negative_2 > 0; }
};

BackwardsReport detect_backwards_in_time(const TwoPhotonConfig& cfg, const TrajectoryPair& pair,
                                         const Boost& b);

// ---------------------------------------------------------------------------
// Parallel map
// ---------------------------------------------------------------------------

/// Number of worker threads: BOHM_SIM_THREADS if set, else hardware
/// concurrency.
unsigned worker_count();

/// Run fn(i) for i in [0, n) on the worker pool; results ordered by index,
/// independent of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace bohm

#endif
