#include "bohm/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace bohm {

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller; u1 in (0,1] to keep the log finite.
    double u1 = 1.0 - uniform01();
    double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.28318530717958647692 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

// Lower regularized gamma P(a,x) by series, for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double term = sum;
    for (int i = 0; i < 1000; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16)
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw std::runtime_error("gamma_p_series: no convergence");
}

// Upper regularized gamma Q(a,x) by Lentz continued fraction, for x >= a + 1.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 1000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16)
            return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw std::runtime_error("gamma_q_cf: no convergence");
}

}  // namespace

double gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw std::invalid_argument("gamma_q: need a > 0, x >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi_square_pvalue(double chi2, double dof) {
    return gamma_q(0.5 * dof, 0.5 * chi2);
}

ChiSquareResult chi_square_binned(const std::vector<long>& observed,
                                  const std::vector<double>& expected_probs, long n_total,
                                  long extra_observed, double min_expected) {
    if (observed.size() != expected_probs.size())
        throw std::invalid_argument("chi_square_binned: size mismatch");

    double chi2 = 0.0;
    int kept = 0, merged = 0;
    double tail_expected = 0.0;
    long tail_observed = extra_observed;
    double covered = 0.0;

    for (std::size_t i = 0; i < observed.size(); ++i) {
        covered += expected_probs[i];
        const double e = expected_probs[i] * static_cast<double>(n_total);
        if (e < min_expected) {
            tail_expected += e;
            tail_observed += observed[i];
            ++merged;
            continue;
        }
        const double d = static_cast<double>(observed[i]) - e;
        chi2 += d * d / e;
        ++kept;
    }
    // Probability mass not covered by any bin joins the tail bucket.
    tail_expected += (1.0 - covered) * static_cast<double>(n_total);

    int cells = kept;
    if (tail_expected >= min_expected) {
        const double d = static_cast<double>(tail_observed) - tail_expected;
        chi2 += d * d / tail_expected;
        ++cells;
    }

    ChiSquareResult r;
    r.chi2 = chi2;
    r.dof = cells - 1;
    r.merged_bins = merged;
    r.pvalue = (r.dof > 0) ? chi_square_pvalue(chi2, r.dof) : 1.0;
    return r;
}

}  // namespace bohm
