#ifndef BOHM_LORENTZ_HPP
#define BOHM_LORENTZ_HPP

#include <cmath>

#include "bohm/types.hpp"

namespace bohm {

/// Collinear Lorentz boost parametrised by the frame velocity theta,
/// |theta| < 1 (matching the printed transformation laws one-to-one).
/// Rapidity is offered as a derived accessor for composition tests.
struct Boost {
    double theta = 0.0;

    explicit Boost(double theta_) : theta(theta_) {
        if (!(std::abs(theta) < 1.0))
            throw std::invalid_argument("Boost: |theta| must be < 1");
    }

    double gamma() const { return 1.0 / std::sqrt(1.0 - theta * theta); }
    double rapidity() const { return std::atanh(theta); }
    Boost inverse() const { return Boost(-theta); }

    /// Doppler factor sqrt((1 - theta)/(1 + theta)) applied to right-movers.
    double doppler_right() const { return std::sqrt((1.0 - theta) / (1.0 + theta)); }
    /// Doppler factor sqrt((1 + theta)/(1 - theta)) applied to left-movers.
    double doppler_left() const { return std::sqrt((1.0 + theta) / (1.0 - theta)); }
};

/// Compose two collinear boosts (rapidity-additive).
Boost compose(const Boost& a, const Boost& b);

/// (t, x) -> gamma (t - theta x, x - theta t). Preserves t^2 - x^2.
Event boost_event(const Boost& b, const Event& e);

/// Current transforms as a two-vector:
/// j' = gamma (j - theta rho), rho' = gamma (rho - theta j).
/// rho' crosses zero exactly where j/rho = 1/theta, the onset of
/// backwards-in-time coordinate motion in the boosted frame.
CurrentDensity boost_current(const Boost& b, const CurrentDensity& cd);

/// Relativistic velocity addition v' = (v - theta) / (1 - theta v).
/// |v| = 1 is a fixed point. Throws PoleAtOne when theta * v = 1.
double add_velocity(const Boost& b, double v);

/// Effective redshift of the packet parameters in the boosted frame:
/// (k0, sigma) scale jointly by the Doppler factor of their direction, so
/// q = k0/sigma is invariant per packet.
TwoPhotonConfig redshift_packets(const Boost& b, const TwoPhotonConfig& cfg);

}  // namespace bohm

#endif
