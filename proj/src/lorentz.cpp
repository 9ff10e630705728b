#include "bohm/lorentz.hpp"

namespace bohm {

Boost compose(const Boost& a, const Boost& b) {
    return Boost((a.theta + b.theta) / (1.0 + a.theta * b.theta));
}

Event boost_event(const Boost& b, const Event& e) {
    const double g = b.gamma();
    return {g * (e.t - b.theta * e.x), g * (e.x - b.theta * e.t)};
}

CurrentDensity boost_current(const Boost& b, const CurrentDensity& cd) {
    const double g = b.gamma();
    return {g * (cd.rho - b.theta * cd.j), g * (cd.j - b.theta * cd.rho)};
}

double add_velocity(const Boost& b, double v) {
    const double denom = 1.0 - b.theta * v;
    if (denom == 0.0) throw PoleAtOne();
    return (v - b.theta) / denom;
}

TwoPhotonConfig redshift_packets(const Boost& b, const TwoPhotonConfig& cfg) {
    const double dr = b.doppler_right();
    const double dl = b.doppler_left();
    TwoPhotonConfig out = cfg;
    out.right.center *= dr;
    out.right.width *= dr;
    out.left.center *= dl;
    out.left.width *= dl;
    return out;
}

}  // namespace bohm
