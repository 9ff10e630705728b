#include "bohm/kg_dynamics.hpp"

#include <cmath>

#include "bohm/wavepacket.hpp"

namespace bohm {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInvSqrt2 = 0.70710678118654752440;
}  // namespace

Amplitude psi_kg(const TwoPhotonConfig& cfg, const MultiPoint& mp) {
    const Amplitude a = psi1(cfg.right, mp.e1);
    const Amplitude b = psi2(cfg.left, mp.e2);
    const Amplitude c = psi1(cfg.right, mp.e2);
    const Amplitude d = psi2(cfg.left, mp.e1);
    return kInvSqrt2 * (a * b + c * d);
}

std::pair<CurrentDensity, CurrentDensity> currents_kg(const TwoPhotonConfig& cfg,
                                                      const MultiPoint& mp) {
    const double kR = cfg.right.center, sR2 = cfg.right.width * cfg.right.width;
    const double kL = cfg.left.center, sL2 = cfg.left.width * cfg.left.width;
    const double U1 = mp.e1.u(), V1 = mp.e1.v();
    const double U2 = mp.e2.u(), V2 = mp.e2.v();

    const double pref = 2.0 * cfg.right.width * cfg.left.width / kPi;
    const double e1 = std::exp(-2.0 * (V2 * V2 * sL2 + U1 * U1 * sR2));
    const double e2 = std::exp(-2.0 * (V1 * V1 * sL2 + U2 * U2 * sR2));
    const double E = std::exp(-(V1 * V1 + V2 * V2) * sL2 - (U1 * U1 + U2 * U2) * sR2);
    const double phi = kR * (U1 - U2) - kL * (V1 - V2);
    const double cp = std::cos(phi), sp = std::sin(phi);

    CurrentDensity c1, c2;
    c1.rho = pref * (kR * e1 + kL * e2 + E * ((kR + kL) * cp + 2.0 * (V1 * sL2 - U1 * sR2) * sp));
    c2.rho = pref * (kL * e1 + kR * e2 + E * ((kR + kL) * cp - 2.0 * (V2 * sL2 - U2 * sR2) * sp));
    c1.j = pref * (kR * e1 - kL * e2 + E * ((kR - kL) * cp - 2.0 * (V1 * sL2 + U1 * sR2) * sp));
    c2.j = pref * (kR * e2 - kL * e1 + E * ((kR - kL) * cp + 2.0 * (V2 * sL2 + U2 * sR2) * sp));
    return {c1, c2};
}

CurrentDensity current_1(const TwoPhotonConfig& cfg, const MultiPoint& mp) {
    return currents_kg(cfg, mp).first;
}

CurrentDensity current_2(const TwoPhotonConfig& cfg, const MultiPoint& mp) {
    return currents_kg(cfg, mp).second;
}

double peak_density_estimate(const TwoPhotonConfig& cfg) {
    // rho_i <= pref * (kR + kL) * (e1 + e2 + 2E) plus the sin part; e1, e2, E
    // and |cos| are at most 1 and E = sqrt(e1 e2), so 2 (kR + kL) * pref bounds
    // the equal-time peak to within the small sin-term correction.
    const double pref = 2.0 * cfg.right.width * cfg.left.width / kPi;
    return 2.0 * pref * (cfg.right.center + cfg.left.center);
}

double NodePolicy::threshold(const TwoPhotonConfig& cfg) const {
    return relative_epsilon * peak_density_estimate(cfg);
}

std::pair<double, double> velocity_kg(const TwoPhotonConfig& cfg, const MultiPoint& mp,
                                      const NodePolicy& policy) {
    const auto [c1, c2] = currents_kg(cfg, mp);
    const double eps = policy.threshold(cfg);
    if (std::abs(c1.rho) < eps) throw NodeSingularity(c1.rho, "velocity_kg (particle 1)");
    if (std::abs(c2.rho) < eps) throw NodeSingularity(c2.rho, "velocity_kg (particle 2)");
    return {c1.j / c1.rho, c2.j / c2.rho};
}

std::pair<CurrentDensity, CurrentDensity> currents_kg_fd(const TwoPhotonConfig& cfg,
                                                         const MultiPoint& mp, double h) {
    const Amplitude p = psi_kg(cfg, mp);
    auto at = [&](double dt1, double dx1, double dt2, double dx2) {
        MultiPoint q = mp;
        q.e1.t += dt1;
        q.e1.x += dx1;
        q.e2.t += dt2;
        q.e2.x += dx2;
        return psi_kg(cfg, q);
    };
    const Amplitude dt1 = (at(h, 0, 0, 0) - at(-h, 0, 0, 0)) / (2.0 * h);
    const Amplitude dx1 = (at(0, h, 0, 0) - at(0, -h, 0, 0)) / (2.0 * h);
    const Amplitude dt2 = (at(0, 0, h, 0) - at(0, 0, -h, 0)) / (2.0 * h);
    const Amplitude dx2 = (at(0, 0, 0, h) - at(0, 0, 0, -h)) / (2.0 * h);

    CurrentDensity c1, c2;
    c1.rho = -2.0 * std::imag(std::conj(p) * dt1);
    c1.j = 2.0 * std::imag(std::conj(p) * dx1);
    c2.rho = -2.0 * std::imag(std::conj(p) * dt2);
    c2.j = 2.0 * std::imag(std::conj(p) * dx2);
    return {c1, c2};
}

}  // namespace bohm
