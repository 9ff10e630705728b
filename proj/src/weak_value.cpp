#include "bohm/weak_value.hpp"

#include <cmath>

#include "bohm/wavepacket.hpp"

namespace bohm {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

Amplitude psi_m(const TwoPhotonConfig& cfg, const EqualTimePoint& p) {
    const Event e1{p.t, p.x1}, e2{p.t, p.x2};
    return kInvSqrt2 * (psi1(cfg.right, e1) * psi2(cfg.left, e2) +
                        psi1(cfg.right, e2) * psi2(cfg.left, e1));
}

WvNumerators wv_numerators(const TwoPhotonConfig& cfg, const EqualTimePoint& p) {
    const Event e1{p.t, p.x1}, e2{p.t, p.x2};
    const Amplitude p1a = psi1(cfg.right, e1), p1b = psi1(cfg.right, e2);
    const Amplitude p2a = psi2(cfg.left, e1), p2b = psi2(cfg.left, e2);
    const Amplitude p1ka = psi1_k(cfg.right, e1), p1kb = psi1_k(cfg.right, e2);
    const Amplitude p2ka = psi2_k(cfg.left, e1), p2kb = psi2_k(cfg.left, e2);

    WvNumerators n;
    // The left-mover's physical momentum is negative, hence the minus signs
    // in the momentum brackets.
    n.kA = kInvSqrt2 * (p1ka * p2b - p1b * p2ka);
    n.kB = kInvSqrt2 * (p1kb * p2a - p1a * p2kb);
    n.hA = kInvSqrt2 * (p1ka * p2b + p1b * p2ka);
    n.hB = kInvSqrt2 * (p1a * p2kb + p1kb * p2a);
    return n;
}

std::pair<double, double> velocity_m(const TwoPhotonConfig& cfg, const EqualTimePoint& p,
                                     const NodePolicy& policy) {
    const Amplitude pm = psi_m(cfg, p);
    const WvNumerators n = wv_numerators(cfg, p);
    // 2 Re[psi_M^* H_D] is the same particle density the KG route assigns on
    // the equal timeslice; reuse the node threshold.
    const double rho1 = 2.0 * std::real(std::conj(pm) * n.hA);
    const double rho2 = 2.0 * std::real(std::conj(pm) * n.hB);
    const double eps = policy.threshold(cfg);
    if (std::abs(rho1) < eps) throw NodeSingularity(rho1, "velocity_m (detector A)");
    if (std::abs(rho2) < eps) throw NodeSingularity(rho2, "velocity_m (detector B)");
    const double j1 = 2.0 * std::real(std::conj(pm) * n.kA);
    const double j2 = 2.0 * std::real(std::conj(pm) * n.kB);
    return {j1 / rho1, j2 / rho2};
}

}  // namespace bohm
