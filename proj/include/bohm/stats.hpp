#ifndef BOHM_STATS_HPP
#define BOHM_STATS_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace bohm {

/// Deterministic RNG: std::mt19937_64 (bit-exact across platforms) with
/// hand-rolled uniform/normal transforms, since the standard distributions
/// are implementation-defined.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (cached spare).
    double normal();

    std::uint64_t raw() { return engine_(); }

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// splitmix64; used to derive independent per-task seeds from a master seed.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index);

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x)/Gamma(a),
/// series/continued-fraction evaluation.
double gamma_q(double a, double x);

/// Upper-tail p-value of a chi-square statistic with `dof` degrees of freedom.
double chi_square_pvalue(double chi2, double dof);

struct ChiSquareResult {
    double chi2 = 0.0;
    int dof = 0;
    double pvalue = 1.0;
    int merged_bins = 0;  // bins folded into the tail bucket (expected < min)
};

/// Pearson chi-square test of observed counts against expected probabilities
/// (not necessarily summing to 1; the remainder becomes a tail bucket along
/// with all bins whose expected count is below min_expected).
/// `extra_observed` counts observations outside all bins (tail bucket).
ChiSquareResult chi_square_binned(const std::vector<long>& observed,
                                  const std::vector<double>& expected_probs, long n_total,
                                  long extra_observed, double min_expected = 5.0);

}  // namespace bohm

#endif
