#ifndef BOHM_ODE_HPP
#define BOHM_ODE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>

#include "bohm/types.hpp"

namespace bohm {

// Adaptive explicit Runge-Kutta integration, Dormand-Prince 5(4) pair with
// FSAL. The driver lands exactly on requested sample times (the step is
// clamped to the next sample), so emitted samples are genuine solution
// points; between samples a cubic Hermite interpolant over the stored
// (y, y') endpoints provides dense output.

struct OdeOptions {
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
    double initial_step = 1e-3;
    double min_step = 1e-12;
    double max_step = 0.25;
    int max_node_retries = 40;  // step halvings on a throwing right-hand side
    long max_steps = 50'000'000;
};

struct OdeStats {
    long accepted = 0;
    long rejected = 0;
    long rhs_evals = 0;
    long node_retries = 0;
};

template <std::size_t N>
using OdeState = std::array<double, N>;

namespace dopri5 {
// Butcher tableau (checked by an order-of-convergence test).
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
inline constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695,
                        e4 = b4 - 393.0 / 640, e5 = b5 + 92097.0 / 339200,
                        e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;
}  // namespace dopri5

/// One integration problem. Rhs may throw (NodeSingularity propagates as a
/// retry-with-smaller-step, then NodeEncounter).
template <std::size_t N>
class Dopri5 {
  public:
    using State = OdeState<N>;
    using Rhs = std::function<State(double, const State&)>;

    Dopri5(Rhs rhs, OdeOptions opts) : rhs_(std::move(rhs)), opts_(opts) {}

    const OdeStats& stats() const { return stats_; }

    /// Integrate from (t0, y0) to t1 (either direction), calling
    /// on_sample(t, y, dydt) at t0, at every time in `samples` (must be
    /// sorted in the direction of integration, within [t0, t1]), and at t1.
    template <typename OnSample>
    void integrate(double t0, const State& y0, double t1, const double* samples,
                   std::size_t n_samples, OnSample&& on_sample) {
        const double dir = (t1 >= t0) ? 1.0 : -1.0;
        double t = t0;
        State y = y0;
        State f = eval(t, y);  // FSAL seed
        on_sample(t, y, f);

        std::size_t next = 0;
        while (next < n_samples && reached(samples[next], t, dir)) ++next;

        double h = dir * std::min(opts_.initial_step, opts_.max_step);
        while (!reached(t1, t, dir)) {
            double target = (next < n_samples) ? samples[next] : t1;
            if (reached(t1, target, dir)) target = t1;
            if (std::abs(target - t) <= 1e-14 * std::max(1.0, std::abs(t))) {
                // Degenerate gap; emit and move on.
                if (next < n_samples && target != t1) {
                    on_sample(target, y, f);
                    ++next;
                    continue;
                }
                break;
            }
            bool clamped = false;
            if (std::abs(h) >= std::abs(target - t)) {
                h = target - t;
                clamped = true;
            }

            bool accepted = false;
            int node_retries = 0;
            while (!accepted) {
                if (stats_.accepted + stats_.rejected > opts_.max_steps)
                    throw NonConvergence("ode: step budget exhausted");
                if (std::abs(h) < opts_.min_step && !clamped)
                    throw StepUnderflow(t, "ode: step size underflow at t = " + std::to_string(t));

                State y_new, f_new, err;
                try {
                    step(t, y, f, h, y_new, f_new, err);
                } catch (const NodeSingularity&) {
                    ++node_retries;
                    ++stats_.node_retries;
                    if (node_retries > opts_.max_node_retries)
                        throw NodeEncounter(
                            t, "ode: persistent interference node near t = " + std::to_string(t));
                    h *= 0.5;
                    clamped = false;
                    continue;
                }

                double err_norm = 0.0;
                for (std::size_t i = 0; i < N; ++i) {
                    const double scale =
                        opts_.abs_tol +
                        opts_.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
                    err_norm = std::max(err_norm, std::abs(err[i]) / scale);
                }

                if (err_norm <= 1.0) {
                    accepted = true;
                    ++stats_.accepted;
                    t += h;
                    // Snap onto the aimed-at time so sample landings are exact.
                    if (clamped &&
                        std::abs(target - t) <= 4e-15 * std::max(1.0, std::abs(target)))
                        t = target;
                    y = y_new;
                    f = f_new;
                    const double grow =
                        (err_norm == 0.0)
                            ? 5.0
                            : std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0);
                    h = dir * std::min(std::abs(h) * grow, opts_.max_step);
                } else {
                    ++stats_.rejected;
                    h *= std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 1.0);
                    clamped = false;
                }
            }

            if (next < n_samples && reached(samples[next], t, dir)) {
                on_sample(t, y, f);
                ++next;
            } else if (reached(t1, t, dir)) {
                on_sample(t, y, f);
            }
        }
    }

  private:
    static bool reached(double target, double t, double dir) {
        return dir * (target - t) <= 1e-14 * std::max(1.0, std::abs(target));
    }

    State eval(double t, const State& y) {
        ++stats_.rhs_evals;
        return rhs_(t, y);
    }

    void step(double t, const State& y, const State& f1, double h, State& y_out, State& f_out,
              State& err) {
        namespace d = dopri5;
        State k2, k3, k4, k5, k6, k7, tmp;

        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * d::a21 * f1[i];
        k2 = eval(t + d::c2 * h, tmp);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (d::a31 * f1[i] + d::a32 * k2[i]);
        k3 = eval(t + d::c3 * h, tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (d::a41 * f1[i] + d::a42 * k2[i] + d::a43 * k3[i]);
        k4 = eval(t + d::c4 * h, tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (d::a51 * f1[i] + d::a52 * k2[i] + d::a53 * k3[i] + d::a54 * k4[i]);
        k5 = eval(t + d::c5 * h, tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (d::a61 * f1[i] + d::a62 * k2[i] + d::a63 * k3[i] +
                                 d::a64 * k4[i] + d::a65 * k5[i]);
        k6 = eval(t + h, tmp);
        for (std::size_t i = 0; i < N; ++i)
            y_out[i] = y[i] + h * (d::b1 * f1[i] + d::b3 * k3[i] + d::b4 * k4[i] + d::b5 * k5[i] +
                                   d::b6 * k6[i]);
        k7 = eval(t + h, y_out);  // FSAL
        f_out = k7;
        for (std::size_t i = 0; i < N; ++i)
            err[i] = h * (d::e1 * f1[i] + d::e3 * k3[i] + d::e4 * k4[i] + d::e5 * k5[i] +
                          d::e6 * k6[i] + d::e7 * k7[i]);
    }

    Rhs rhs_;
    OdeOptions opts_;
    OdeStats stats_;
};

/// Cubic Hermite interpolation between two solution points with known
/// derivatives.
template <std::size_t N>
OdeState<N> hermite(double t, double t0, const OdeState<N>& y0, const OdeState<N>& f0, double t1,
                    const OdeState<N>& y1, const OdeState<N>& f1) {
    const double h = t1 - t0;
    const double s = (t - t0) / h;
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    OdeState<N> out;
    for (std::size_t i = 0; i < N; ++i)
        out[i] = h00 * y0[i] + h * h10 * f0[i] + h01 * y1[i] + h * h11 * f1[i];
    return out;
}

}  // namespace bohm

#endif
