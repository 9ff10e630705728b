#include "bohm/wavepacket.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <memory>
#include <mutex>

namespace bohm {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;  // 1/sqrt(2 pi)
}  // namespace

Amplitude packet_kernel(double w, double k0, double sigma) {
    const double pref = std::pow(2.0 * sigma * sigma / kPi, 0.25);
    // exp[-w (i k0 + w sigma^2)] = exp(-sigma^2 w^2) * exp(-i k0 w)
    const double mag = pref * std::exp(-sigma * sigma * w * w);
    return {mag * std::cos(k0 * w), -mag * std::sin(k0 * w)};
}

Amplitude packet_kernel_k(double w, double k0, double sigma) {
    return Amplitude(k0, -2.0 * sigma * sigma * w) * packet_kernel(w, k0, sigma);
}

Amplitude psi1(const Packet& p, const Event& e) {
    return packet_kernel(e.u(), p.center, p.width);
}

Amplitude psi2(const Packet& p, const Event& e) {
    return packet_kernel(e.v(), p.center, p.width);
}

Amplitude psi1_k(const Packet& p, const Event& e) {
    return packet_kernel_k(e.u(), p.center, p.width);
}

Amplitude psi2_k(const Packet& p, const Event& e) {
    return packet_kernel_k(e.v(), p.center, p.width);
}

// ---------------------------------------------------------------------------
// Quadrature oracle (GSL QAG, 61-point Gauss-Kronrod rule, adaptive)
// ---------------------------------------------------------------------------

namespace {

struct GslWorkspace {
    gsl_integration_workspace* ws;
    explicit GslWorkspace(size_t n) : ws(gsl_integration_workspace_alloc(n)) {}
    ~GslWorkspace() { gsl_integration_workspace_free(ws); }
    GslWorkspace(const GslWorkspace&) = delete;
    GslWorkspace& operator=(const GslWorkspace&) = delete;
};

void disable_gsl_abort() {
    static std::once_flag flag;
    std::call_once(flag, [] { gsl_set_error_handler_off(); });
}

struct RealPart {
    const ComplexIntegrand* f;
    bool imag;
};

double real_part_eval(double k, void* params) {
    auto* rp = static_cast<RealPart*>(params);
    const Amplitude z = (*rp->f)(k);
    return rp->imag ? z.imag() : z.real();
}

double integrate_real(const ComplexIntegrand& f, bool imag, double a, double b, double tol) {
    disable_gsl_abort();
    constexpr size_t kLimit = 4096;
    GslWorkspace ws(kLimit);

    RealPart rp{&f, imag};
    gsl_function gf;
    gf.function = &real_part_eval;
    gf.params = &rp;

    double result = 0.0, abserr = 0.0;
    const int status = gsl_integration_qag(&gf, a, b, tol, tol, kLimit,
                                           GSL_INTEG_GAUSS61, ws.ws, &result, &abserr);
    // GSL_EROUND means the estimate stopped improving at rounding level; accept
    // it when the reported error still meets the requested tolerance.
    if (status != GSL_SUCCESS && !(status == GSL_EROUND && abserr <= tol)) {
        if (abserr > tol)
            throw NonConvergence("quad_oracle: error estimate " + std::to_string(abserr) +
                                 " exceeds tol " + std::to_string(tol));
    }
    if (abserr > tol && abserr > tol * std::abs(result))
        throw NonConvergence("quad_oracle: error estimate " + std::to_string(abserr) +
                             " exceeds tol " + std::to_string(tol));
    return result;
}

struct PacketIntegrand final : ComplexIntegrand {
    double w;       // lightcone coordinate multiplying k in the phase
    double k0;      // Gaussian center in the integration variable
    double sigma;
    bool k_weight;  // true for the first-moment integrals

    Amplitude operator()(double k) const override {
        const double norm = std::pow(2.0 * kPi * sigma * sigma, -0.25);
        const double dk = k - k0;
        double f = norm * std::exp(-dk * dk / (4.0 * sigma * sigma)) * kInvSqrt2Pi;
        if (k_weight) f *= k;
        return {f * std::cos(k * w), -f * std::sin(k * w)};
    }
};

}  // namespace

Amplitude integrate_complex(const ComplexIntegrand& f, double a, double b, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("integrate_complex: tol must be > 0");
    const double re = integrate_real(f, false, a, b, tol);
    const double im = integrate_real(f, true, a, b, tol);
    return {re, im};
}

Amplitude quad_oracle(Integrand which, const Packet& p, const Event& e, double tol) {
    p.validate();
    if (!(tol > 0.0)) throw std::invalid_argument("quad_oracle: tol must be > 0");

    PacketIntegrand f;
    f.k0 = p.center;
    f.sigma = p.width;
    switch (which) {
        case Integrand::Psi1:
            f.w = e.u();
            f.k_weight = false;
            break;
        case Integrand::Psi2:
            // psi2 in v = t + x; after the left-mover substitution k -> -k the
            // integration variable carries a Gaussian centered at +k0.
            f.w = e.v();
            f.k_weight = false;
            break;
        case Integrand::Psi1K:
            f.w = e.u();
            f.k_weight = true;
            break;
        case Integrand::Psi2K:
            f.w = e.v();
            f.k_weight = true;
            break;
    }
    const double a = p.center - 12.0 * p.width;
    const double b = p.center + 12.0 * p.width;
    return integrate_complex(f, a, b, tol);
}

}  // namespace bohm
