#ifndef BOHM_PARAXIAL_HPP
#define BOHM_PARAXIAL_HPP

#include <utility>

#include "bohm/kg_dynamics.hpp"
#include "bohm/trajectories.hpp"
#include "bohm/types.hpp"

namespace bohm {

// Nonrelativistic (paraxial) limit: the longitudinal wavenumber k_z dominates
// and E(k) ~= k_z + k^2 / (2 k_z). The transverse coordinate x stays the
// dynamic one; k_z is a fixed scalar parameter per run.
//
// The packet integral becomes a Gaussian with complex variance:
//
//   psi(t, x) = (2pi)^{-1/2} Int dk exp[-i(k_z + k^2/2k_z) t + i k x] f(k; kc)
//
// with kc = +k0 for a right-mover and -k0 for a left-mover (no optical
// substitution is needed since E is even in k).

/// Closed form of the dispersive Gaussian above.
Amplitude psi_paraxial(const Packet& p, double kz, const Event& e);

/// Independent adaptive-quadrature evaluation, for validation.
Amplitude psi_paraxial_quad(const Packet& p, double kz, const Event& e, double tol);

/// Symmetrised two-photon paraxial amplitude (1/sqrt2)(psi1 psi2 + swap).
Amplitude psi_m_paraxial(const TwoPhotonConfig& cfg, double kz, const EqualTimePoint& p);

/// Wiseman-form velocity v_i = (1/k_z) Im[psi* d_i psi] / |psi|^2 from the
/// symmetrised paraxial wavefunction; derivatives are analytic.
std::pair<double, double> velocity_paraxial(const TwoPhotonConfig& cfg, double kz,
                                            const EqualTimePoint& p, const NodePolicy& policy = {});

/// Paraxial density diagnostics at a point: the exact KG-convention density
/// rho_1 = -2 Im[psi* d psi/d t_1], the leading term 2 k_z |psi_M|^2, and the
/// neglected second-derivative term (1/2k_z) 2 Re-ish correction, evaluated
/// exactly. rho_over_leading -> 1 as k_z grows.
struct ParaxialDensityTerms {
    double rho1;            // exact paraxial density of particle 1
    double leading;         // 2 k_z |psi_M|^2
    double correction;      // rho1 - leading (the 1/(2 k_z) dispersive term)
    double rho_over_leading() const { return rho1 / leading; }
};

ParaxialDensityTerms paraxial_density_terms(const TwoPhotonConfig& cfg, double kz,
                                            const EqualTimePoint& p);

/// Velocity field over equal timeslices for the trajectory engine.
VelocityField make_paraxial_field(const TwoPhotonConfig& cfg, double kz,
                                  const NodePolicy& policy = {});

/// Initial-condition sampler from |psi_M_paraxial(t0)|^2 (ordered x1 < x2).
std::vector<std::pair<double, double>> sample_initial_paraxial(const TwoPhotonConfig& cfg,
                                                               double kz, double t0, std::size_t n,
                                                               std::uint64_t seed);

}  // namespace bohm

#endif
