#include "bohm/paraxial.hpp"

#include <cmath>

#include "bohm/wavepacket.hpp"

namespace bohm {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double signed_center(const Packet& p) {
    return p.direction == Direction::Right ? p.center : -p.center;
}

struct ParaxialEval {
    Amplitude psi;
    Amplitude dlog_dx;  // d(log psi)/dx
    Amplitude dlog_dt;  // d(log psi)/dt
};

// psi(t,x) = (2pi)^{-1/2} N sqrt(pi/alpha)
//            * exp[-i(kz + kc^2/2kz) t + i kc x - beta^2/(4 alpha)]
// with alpha = 1/(4 sigma^2) + i t/(2 kz), beta = x - (kc/kz) t.
ParaxialEval eval_packet(double kc, double sigma, double kz, double t, double x) {
    const Amplitude alpha(1.0 / (4.0 * sigma * sigma), t / (2.0 * kz));
    const Amplitude inv4a = Amplitude(1.0) / (4.0 * alpha);
    const double beta = x - (kc / kz) * t;
    const double norm = std::pow(2.0 * kPi * sigma * sigma, -0.25);

    const Amplitude pref = kInvSqrt2Pi * norm * std::sqrt(kPi / alpha);
    const Amplitude expo(-beta * beta * inv4a.real(),
                         -(kz + kc * kc / (2.0 * kz)) * t + kc * x - beta * beta * inv4a.imag());

    ParaxialEval out;
    out.psi = pref * std::exp(expo);
    out.dlog_dx = Amplitude(0.0, kc) - 2.0 * beta * inv4a;
    // d/dt of the exponent plus the prefactor's -alpha'/(2 alpha).
    const Amplitude alpha_dot(0.0, 1.0 / (2.0 * kz));
    out.dlog_dt = Amplitude(0.0, -(kz + kc * kc / (2.0 * kz))) +
                  2.0 * beta * (kc / kz) * inv4a +
                  beta * beta * alpha_dot / (4.0 * alpha * alpha) - alpha_dot / (2.0 * alpha);
    return out;
}

}  // namespace

Amplitude psi_paraxial(const Packet& p, double kz, const Event& e) {
    p.validate();
    if (!(kz > 0.0)) throw std::invalid_argument("psi_paraxial: kz must be > 0");
    return eval_packet(signed_center(p), p.width, kz, e.t, e.x).psi;
}

namespace {

struct ParaxialIntegrand final : ComplexIntegrand {
    double kc, sigma, kz, t, x;
    Amplitude operator()(double k) const override {
        const double norm = std::pow(2.0 * kPi * sigma * sigma, -0.25);
        const double dk = k - kc;
        const double f = norm * std::exp(-dk * dk / (4.0 * sigma * sigma)) * kInvSqrt2Pi;
        const double phase = -(kz + k * k / (2.0 * kz)) * t + k * x;
        return {f * std::cos(phase), f * std::sin(phase)};
    }
};

}  // namespace

Amplitude psi_paraxial_quad(const Packet& p, double kz, const Event& e, double tol) {
    p.validate();
    if (!(kz > 0.0)) throw std::invalid_argument("psi_paraxial_quad: kz must be > 0");
    ParaxialIntegrand f;
    f.kc = signed_center(p);
    f.sigma = p.width;
    f.kz = kz;
    f.t = e.t;
    f.x = e.x;
    return integrate_complex(f, f.kc - 12.0 * p.width, f.kc + 12.0 * p.width, tol);
}

Amplitude psi_m_paraxial(const TwoPhotonConfig& cfg, double kz, const EqualTimePoint& p) {
    const auto r1 = eval_packet(signed_center(cfg.right), cfg.right.width, kz, p.t, p.x1);
    const auto r2 = eval_packet(signed_center(cfg.right), cfg.right.width, kz, p.t, p.x2);
    const auto l1 = eval_packet(signed_center(cfg.left), cfg.left.width, kz, p.t, p.x1);
    const auto l2 = eval_packet(signed_center(cfg.left), cfg.left.width, kz, p.t, p.x2);
    return kInvSqrt2 * (r1.psi * l2.psi + r2.psi * l1.psi);
}

namespace {

struct SymEval {
    Amplitude psi;       // symmetrised two-photon amplitude
    Amplitude dpsi_dx1;  // d/dx1
    Amplitude dpsi_dx2;
    Amplitude dpsi_dt1;  // d/dt1 (time of the factors carrying x1)
};

SymEval eval_sym(const TwoPhotonConfig& cfg, double kz, const EqualTimePoint& p) {
    const auto r1 = eval_packet(signed_center(cfg.right), cfg.right.width, kz, p.t, p.x1);
    const auto r2 = eval_packet(signed_center(cfg.right), cfg.right.width, kz, p.t, p.x2);
    const auto l1 = eval_packet(signed_center(cfg.left), cfg.left.width, kz, p.t, p.x1);
    const auto l2 = eval_packet(signed_center(cfg.left), cfg.left.width, kz, p.t, p.x2);

    const Amplitude A = r1.psi * l2.psi;  // right at x1, left at x2
    const Amplitude B = r2.psi * l1.psi;  // exchange

    SymEval out;
    out.psi = kInvSqrt2 * (A + B);
    out.dpsi_dx1 = kInvSqrt2 * (A * r1.dlog_dx + B * l1.dlog_dx);
    out.dpsi_dx2 = kInvSqrt2 * (A * l2.dlog_dx + B * r2.dlog_dx);
    out.dpsi_dt1 = kInvSqrt2 * (A * r1.dlog_dt + B * l1.dlog_dt);
    return out;
}

double paraxial_peak_estimate(const TwoPhotonConfig& cfg, double kz) {
    return 2.0 * kz * 4.0 * cfg.right.width * cfg.left.width / kPi;
}

}  // namespace

std::pair<double, double> velocity_paraxial(const TwoPhotonConfig& cfg, double kz,
                                            const EqualTimePoint& p, const NodePolicy& policy) {
    const SymEval s = eval_sym(cfg, kz, p);
    const double dens = std::norm(s.psi);
    const double eps = policy.relative_epsilon * paraxial_peak_estimate(cfg, kz) / (2.0 * kz);
    if (dens < eps) throw NodeSingularity(dens, "velocity_paraxial");
    const double v1 = std::imag(std::conj(s.psi) * s.dpsi_dx1) / (kz * dens);
    const double v2 = std::imag(std::conj(s.psi) * s.dpsi_dx2) / (kz * dens);
    return {v1, v2};
}

ParaxialDensityTerms paraxial_density_terms(const TwoPhotonConfig& cfg, double kz,
                                            const EqualTimePoint& p) {
    const SymEval s = eval_sym(cfg, kz, p);
    ParaxialDensityTerms out;
    out.rho1 = -2.0 * std::imag(std::conj(s.psi) * s.dpsi_dt1);
    out.leading = 2.0 * kz * std::norm(s.psi);
    out.correction = out.rho1 - out.leading;
    return out;
}

VelocityField make_paraxial_field(const TwoPhotonConfig& cfg, double kz,
                                  const NodePolicy& policy) {
    return [cfg, kz, policy](const MultiPoint& mp) {
        if (!mp.equal_timeslice())
            throw std::invalid_argument("paraxial field is defined on equal timeslices only");
        return velocity_paraxial(cfg, kz, {mp.e1.t, mp.e1.x, mp.e2.x}, policy);
    };
}

std::vector<std::pair<double, double>> sample_initial_paraxial(const TwoPhotonConfig& cfg,
                                                               double kz, double t0, std::size_t n,
                                                               std::uint64_t seed) {
    cfg.validate();
    auto spread = [kz](const Packet& p, double t) {
        const double sd0 = 0.5 / p.width;
        const double disp = p.width * t / kz;
        return std::sqrt(sd0 * sd0 + disp * disp);
    };
    const double muR = (signed_center(cfg.right) / kz) * t0;
    const double muL = (signed_center(cfg.left) / kz) * t0;
    const double sR = spread(cfg.right, t0), sL = spread(cfg.left, t0);
    const std::vector<EnvelopeBlob> blobs = {{muR, sR, muL, sL}, {muL, sL, muR, sR}};

    auto dens = [cfg, kz, t0](double x1, double x2) {
        return std::norm(psi_m_paraxial(cfg, kz, {t0, x1, x2}));
    };
    auto pts = sample_density_2d(dens, blobs, 2.0, n, seed);
    for (auto& [x1, x2] : pts)
        if (x1 > x2) std::swap(x1, x2);
    return pts;
}

}  // namespace bohm
