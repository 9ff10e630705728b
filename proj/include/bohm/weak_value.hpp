#ifndef BOHM_WEAK_VALUE_HPP
#define BOHM_WEAK_VALUE_HPP

#include <utility>

#include "bohm/kg_dynamics.hpp"
#include "bohm/types.hpp"

namespace bohm {

// Operational route: two position detectors A and B on a single timeslice,
// agnostic to which photon they caught. The velocity fields are ratios of
// postselected weak values of momentum and energy,
//
//   v_1 = Re[psi_M^* <x|k_A|psi>] / Re[psi_M^* <x|H_A|psi>],
//
// and similarly for detector B. All four numerator/denominator brackets are
// combinations of the four wavepacket primitives.

/// Two-photon position amplitude psi_M(t, x1, x2) = <xbar | psi(t)>;
/// symmetric under x1 <-> x2 and equal to psi_kg on the equal timeslice.
Amplitude psi_m(const TwoPhotonConfig& cfg, const EqualTimePoint& p);

/// The four detector brackets.
struct WvNumerators {
    Amplitude kA;  // <xbar| k_A |psi>
    Amplitude kB;  // <xbar| k_B |psi>
    Amplitude hA;  // <xbar| H_A |psi>
    Amplitude hB;  // <xbar| H_B |psi>
};

WvNumerators wv_numerators(const TwoPhotonConfig& cfg, const EqualTimePoint& p);

/// Measurement-based velocity pair (v1, v2). Agrees with velocity_kg on the
/// equal timeslice up to rounding. Throws NodeSingularity below threshold.
std::pair<double, double> velocity_m(const TwoPhotonConfig& cfg, const EqualTimePoint& p,
                                     const NodePolicy& policy = {});

}  // namespace bohm

#endif
