#include "bohm/metric.hpp"

#include <cmath>

namespace bohm {

MetricSample shift_from_current(const CurrentDensity& cd, double rho_threshold) {
    if (cd.rho == 0.0 || std::abs(cd.rho) < rho_threshold)
        throw NodeSingularity(cd.rho, "shift_from_current");
    const double v = cd.j / cd.rho;
    const double sgn = (v > 0.0) - (v < 0.0);
    return {(std::abs(v) - 1.0) * sgn};
}

double coordinate_velocity(const MetricSample& ms, int branch) {
    return ms.vs + (branch >= 0 ? 1.0 : -1.0);
}

double coordinate_velocity(const CurrentDensity& cd, double rho_threshold) {
    const MetricSample ms = shift_from_current(cd, rho_threshold);
    const double v = cd.j / cd.rho;
    return coordinate_velocity(ms, v >= 0.0 ? +1 : -1);
}

}  // namespace bohm
