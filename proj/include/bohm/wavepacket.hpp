#ifndef BOHM_WAVEPACKET_HPP
#define BOHM_WAVEPACKET_HPP

#include "bohm/types.hpp"

namespace bohm {

// Position-space wavefunctions of single Gaussian packets, unitary Fourier
// convention psi(w) = (2 pi)^(-1/2) Int dk e^{-i k w} f(k; k0).
//
// Doing the Gaussian integral over the full real line gives the closed form
//
//     g(w; k0, sigma) = (2 sigma^2 / pi)^{1/4} exp[-w (i k0 + w sigma^2)]
//
// where w is the packet's lightcone coordinate: u = t - x for a right-mover,
// v = t + x for a left-mover. |g| depends on w only, so the modulus is
// constant along the packet's own lightcone direction, and
// Int |g(w)|^2 dx = 1 for every t.

/// Scalar kernel g(w; k0, sigma).
Amplitude packet_kernel(double w, double k0, double sigma);

/// First-moment kernel g_k(w) = Int dk e^{-ikw} k f(k) / sqrt(2 pi)
///                            = (k0 - 2 i sigma^2 w) g(w).
/// The prefactor form follows by differentiating g under the integral;
/// it is certified against quad_oracle by the test suite before use.
Amplitude packet_kernel_k(double w, double k0, double sigma);

/// psi_1(t, x): right-moving packet, function of u = t - x.
Amplitude psi1(const Packet& p, const Event& e);

/// psi_2(t, x): left-moving packet, function of v = t + x.
Amplitude psi2(const Packet& p, const Event& e);

/// psi_1k(t, x) = Int dk e^{-ik(t-x)} k f(k; k0) / sqrt(2 pi).
Amplitude psi1_k(const Packet& p, const Event& e);

/// psi_2k(t, x) = Int dk e^{-ik(t+x)} k f(-k; k0) / sqrt(2 pi).
Amplitude psi2_k(const Packet& p, const Event& e);

// ---------------------------------------------------------------------------
// Quadrature oracle
// ---------------------------------------------------------------------------

enum class Integrand { Psi1, Psi2, Psi1K, Psi2K };

/// Adaptive numerical quadrature of the selected k-integral over
/// k0 +/- 12 sigma (Gaussian mass coverage > 1 - 1e-30), independent of the
/// closed forms above. Throws NonConvergence if the error estimate exceeds
/// tol at the subdivision limit.
Amplitude quad_oracle(Integrand which, const Packet& p, const Event& e, double tol);

/// Adaptive quadrature of Re/Im parts of Int dk w(k) e^{i phase(k)} style
/// integrands; exposed for the oracle paths of other modules.
struct ComplexIntegrand {
    // Evaluate the full complex integrand at k.
    virtual Amplitude operator()(double k) const = 0;
    virtual ~ComplexIntegrand() = default;
};

Amplitude integrate_complex(const ComplexIntegrand& f, double a, double b, double tol);

}  // namespace bohm

#endif
