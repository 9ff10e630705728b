#ifndef BOHM_TYPES_HPP
#define BOHM_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace bohm {

using Amplitude = std::complex<double>;

// Natural units throughout: c = hbar = 1. Wavenumbers carry inverse length.

enum class Direction { Right, Left };

/// A spacetime point (t, x) with lightcone accessors u = t - x, v = t + x.
struct Event {
    double t = 0.0;
    double x = 0.0;

    double u() const { return t - x; }
    double v() const { return t + x; }
};

/// Gaussian momentum wavepacket f(k; k0) = N exp[-(k - k0)^2 / (4 sigma^2)],
/// N = (2 pi sigma^2)^(-1/4) so that the k-space L2 norm is 1.
struct Packet {
    double center = 0.0;  // k0 > 0
    double width = 0.0;   // sigma > 0
    Direction direction = Direction::Right;

    // Optical approximation quality factor. The closed forms extend the
    // k-integral over the whole real line; the wrong-sign tail they pick up
    // is exp(-O(q^2)) and q < 10 is outside the validated regime.
    double quality() const { return center / width; }
    bool in_validated_regime() const { return quality() >= 10.0; }

    void validate() const {
        if (!(center > 0.0)) throw std::invalid_argument("Packet: center must be > 0");
        if (!(width > 0.0)) throw std::invalid_argument("Packet: width must be > 0");
    }
};

inline Packet right_packet(double k0, double sigma) { return {k0, sigma, Direction::Right}; }
inline Packet left_packet(double k0, double sigma) { return {k0, sigma, Direction::Left}; }

/// Initially separable two-photon state: one right-mover, one left-mover.
struct TwoPhotonConfig {
    Packet right;
    Packet left;

    bool indistinguishable() const {
        return right.center == left.center && right.width == left.width;
    }
    void validate() const {
        right.validate();
        left.validate();
        if (right.direction != Direction::Right || left.direction != Direction::Left)
            throw std::invalid_argument("TwoPhotonConfig: packets must be tagged Right/Left");
    }
};

inline TwoPhotonConfig symmetric_config(double k0, double sigma) {
    return {right_packet(k0, sigma), left_packet(k0, sigma)};
}

/// Multitime argument pair (X1, X2), one event per particle.
struct MultiPoint {
    Event e1;
    Event e2;

    bool equal_timeslice() const { return e1.t == e2.t; }
    MultiPoint swapped() const { return {e2, e1}; }
};

inline MultiPoint equal_time_point(double t, double x1, double x2) {
    return {{t, x1}, {t, x2}};
}

/// Postselection point of the measurement route: both detectors on timeslice t.
struct EqualTimePoint {
    double t = 0.0;
    double x1 = 0.0;
    double x2 = 0.0;

    MultiPoint as_multipoint() const { return equal_time_point(t, x1, x2); }
};

/// One particle's conserved Klein-Gordon current (rho_i, j_i). rho carries
/// units of wavenumber times probability density (an energy density).
struct CurrentDensity {
    double rho = 0.0;
    double j = 0.0;

    double velocity() const { return j / rho; }
};

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct NodeSingularity : std::runtime_error {
    double rho;
    explicit NodeSingularity(double rho_, const std::string& where)
        : std::runtime_error("interference node: |rho| below threshold in " + where),
          rho(rho_) {}
};

struct NonConvergence : std::runtime_error {
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct PoleAtOne : std::runtime_error {
    PoleAtOne() : std::runtime_error("velocity addition pole: theta * v = 1") {}
};

struct NodeEncounter : std::runtime_error {
    double t;
    NodeEncounter(double t_, const std::string& what) : std::runtime_error(what), t(t_) {}
};

struct StepUnderflow : std::runtime_error {
    double t;
    StepUnderflow(double t_, const std::string& what) : std::runtime_error(what), t(t_) {}
};

struct RejectionStall : std::runtime_error {
    explicit RejectionStall(const std::string& what) : std::runtime_error(what) {}
};

struct OutOfSpan : std::runtime_error {
    explicit OutOfSpan(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bohm

#endif
