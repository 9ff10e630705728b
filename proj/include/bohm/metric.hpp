#ifndef BOHM_METRIC_HPP
#define BOHM_METRIC_HPP

#include "bohm/kg_dynamics.hpp"
#include "bohm/types.hpp"

namespace bohm {

// Alcubierre-like quantum metric
//   ds^2 = -(1 - vs^2) dt^2 - 2 vs dx dt + dx^2
// whose null curves reproduce the Bohmian coordinate velocity j/rho.

struct MetricSample {
    double vs = 0.0;

    double g_tt() const { return -(1.0 - vs * vs); }
    double g_tx() const { return -vs; }
    double g_xx() const { return 1.0; }
};

/// Shift function vs = (|j/rho| - 1) sgn(j/rho) from local current data.
/// Throws NodeSingularity when |rho| is below the absolute threshold.
MetricSample shift_from_current(const CurrentDensity& cd, double rho_threshold = 0.0);

/// Coordinate velocity of a null curve in the metric: ds^2 = 0 gives
/// dx/dt = vs + branch with branch = +1 or -1. With the co-moving branch
/// (branch = sgn(j/rho)) the round trip through shift_from_current returns
/// j/rho exactly.
///
/// For |j/rho| < 1 the sgn/abs construction maps two velocities onto one vs;
/// the co-moving branch still inverts it, but callers picking branches by
/// hand should note the two-to-one collapse (and that sgn(0) makes vs = 0
/// look lightlike). The +1 branch is the documented fallback for v = 0.
double coordinate_velocity(const MetricSample& ms, int branch);

/// Convenience: co-moving branch for the given current.
double coordinate_velocity(const CurrentDensity& cd, double rho_threshold = 0.0);

}  // namespace bohm

#endif
