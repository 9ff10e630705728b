#ifndef BOHM_VERIFICATION_HPP
#define BOHM_VERIFICATION_HPP

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bohm/lorentz.hpp"
#include "bohm/types.hpp"

namespace bohm {

/// Evaluation grid over equal-time configurations (x1, x2, t).
struct GridSpec {
    double x_min = -4.0, x_max = 4.0;
    int nx = 21;
    double t_min = -2.0, t_max = 2.0;
    int nt = 5;

    std::vector<double> xs() const;
    std::vector<double> ts() const;
};

/// Centralised tolerances for the whole suite.
struct Tolerances {
    double equivalence = 1e-10;        // |v_M - v_KG|, both routes closed-form
    double quad_rel = 1e-8;            // closed form vs quadrature, relative
    double quad_abs = 1e-13;           // absolute floor where |psi| underflows quadrature
    double continuity_ratio_lo = 3.5;  // O(h^2): residual ratio under h-halving
    double continuity_ratio_hi = 4.5;
    double continuity_fraction = 0.95;
    double continuity_noise_factor = 10.0;
    double density_identity = 1e-3;    // |psi_M|^2 vs energy-normalised density sum
    double covariance = 1e-9;          // boosted closed-form density identity
    double t_cross_terms = 1e-10;      // |T2|, |T3|
    double t_sum_rel = 1e-8;           // T1 + T4 vs closed-form bracket
    double rho_equal_mirror = 1e-12;   // rho1 = rho2 on the mirror locus
    double metric_roundtrip = 1e-14;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    double worst = 0.0;
    std::string detail;
    nlohmann::json extra;

    nlohmann::json to_json() const;
};

struct VerifyReport {
    int schema_version = 1;
    std::vector<CheckResult> checks;

    bool all_pass() const;
    nlohmann::json to_json() const;
};

/// Main theorem: measurement-route and KG-route velocities agree pointwise
/// on equal timeslices (grid x k0/sigma in {10, 20, 40}).
CheckResult check_equivalence(const TwoPhotonConfig& cfg, const GridSpec& grid,
                              const Tolerances& tol);
/// Also checks the four component identities (j_i, rho_i vs detector brackets).
CheckResult check_component_identities(const TwoPhotonConfig& cfg, const GridSpec& grid,
                                       const Tolerances& tol);

/// Wavefunction primitives against the quadrature oracle on t, x in [-5, 5].
CheckResult check_quadrature(const TwoPhotonConfig& cfg, const Tolerances& tol);

/// Continuity residual d(rho_i)/dt_i + d(j_i)/dx_i converges at O(h^2).
CheckResult check_continuity(const TwoPhotonConfig& cfg, const GridSpec& grid, double h,
                             const Tolerances& tol);

/// Energy-normalised density identity |psi_M|^2 = (rho1 + rho2)/(2(k0R + k0L)).
/// Reports the peak-normalised sup deviation over a fine grid.
CheckResult check_density_identity(const TwoPhotonConfig& cfg, const Tolerances& tol);
/// Deviation decreases with q (evaluated at q, 2q, 4q) and survives a boost.
CheckResult check_density_identity_scaling(double q_base, const Tolerances& tol);

/// rho1 = rho2 for indistinguishable packets: exact on the mirror locus
/// x2 = -x1; elsewhere the difference is the optical-approximation sin term
/// (reported, bounded by ~sigma/k0 relative).
CheckResult check_rho_equal(const TwoPhotonConfig& cfg, const GridSpec& grid,
                            const Tolerances& tol);

/// Covariance of the closed-form density under boosts + velocity addition
/// consistency of boost_current.
CheckResult check_covariance(const TwoPhotonConfig& cfg, const std::vector<double>& thetas,
                             const GridSpec& grid, const Tolerances& tol);

/// The four operator-contraction terms behind the detector-A energy bracket:
/// T2 and T3 carry only wrong-sector support (zero in the optical regime),
/// T1 + T4 reproduces the closed-form bracket.
CheckResult check_t_terms(const TwoPhotonConfig& cfg, int n_points, std::uint64_t seed,
                          const Tolerances& tol);

/// Metric round trip coordinate_velocity(shift_from_current(rho, j)) = j/rho.
CheckResult check_metric_roundtrip(int n_points, std::uint64_t seed, const Tolerances& tol);

/// Run every check (in parallel) for the given configuration.
VerifyReport run_all_checks(const TwoPhotonConfig& cfg, const GridSpec& grid,
                            const Tolerances& tol = {});

}  // namespace bohm

#endif
