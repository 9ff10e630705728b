#ifndef BOHM_KG_DYNAMICS_HPP
#define BOHM_KG_DYNAMICS_HPP

#include <utility>

#include "bohm/types.hpp"

namespace bohm {

// Multitime Klein-Gordon route. The two-photon wavefunction is symmetrised
// in position and time,
//
//   psi_KG(X1, X2) = (psi1(X1) psi2(X2) + psi1(X2) psi2(X1)) / sqrt(2),
//
// and each particle carries its own conserved current built from derivatives
// with respect to its own coordinates:
//
//   rho_i = -2 Im[psi* d psi / d t_i],   j_i = 2 Im[psi* d psi / d x_i].
//
// rho is positive for positive-energy packets with these signs and j/rho is
// +1 (-1) for a free right- (left-) mover.

/// Symmetrised two-photon wavefunction at a multitime point. Exactly
/// symmetric under swapping the two events.
Amplitude psi_kg(const TwoPhotonConfig& cfg, const MultiPoint& mp);

/// Both conserved currents at once, from the expanded analytic forms in
/// lightcone variables (products of Gaussians with a cos/sin interference
/// part). Shares all subexpressions so that exchange/mirror symmetries hold
/// bit-exactly.
std::pair<CurrentDensity, CurrentDensity> currents_kg(const TwoPhotonConfig& cfg,
                                                      const MultiPoint& mp);

CurrentDensity current_1(const TwoPhotonConfig& cfg, const MultiPoint& mp);
CurrentDensity current_2(const TwoPhotonConfig& cfg, const MultiPoint& mp);

/// Interference-node detection threshold: |rho| below relative_epsilon times
/// a global density-peak estimate counts as a node.
struct NodePolicy {
    double relative_epsilon = 1e-12;

    double threshold(const TwoPhotonConfig& cfg) const;
};

/// Bohmian velocities v_i = j_i / rho_i. Throws NodeSingularity if either
/// density is below the node threshold.
std::pair<double, double> velocity_kg(const TwoPhotonConfig& cfg, const MultiPoint& mp,
                                      const NodePolicy& policy = {});

/// Estimate of the global peak of rho_i over equal-time configurations;
/// anchors the relative node threshold.
double peak_density_estimate(const TwoPhotonConfig& cfg);

/// Validation-path evaluation of the currents: central finite differences of
/// psi_kg for the derivatives, 2 Im[psi* d psi]. Used by tests against the
/// analytic forms; O(h^2) accurate.
std::pair<CurrentDensity, CurrentDensity> currents_kg_fd(const TwoPhotonConfig& cfg,
                                                         const MultiPoint& mp, double h);

}  // namespace bohm

#endif
