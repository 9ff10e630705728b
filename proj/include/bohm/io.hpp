#ifndef BOHM_IO_HPP
#define BOHM_IO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bohm/trajectories.hpp"
#include "bohm/types.hpp"

namespace bohm {

enum class Dispersion { Optical, Paraxial };

/// Ensemble request: n initial pairs drawn from the t0 density.
struct EnsembleSpec {
    std::size_t n = 0;
    std::uint64_t seed = 0;
};

/// Full run description; JSON round-trips bit-exactly.
struct RunConfig {
    static constexpr int kSchemaVersion = 1;

    TwoPhotonConfig packets = symmetric_config(20.0, 1.0);
    Dispersion dispersion = Dispersion::Optical;
    std::optional<double> kz;     // required for paraxial
    std::optional<double> theta;  // boost, when requested
    double t0 = -2.0;
    double t1 = 2.0;
    std::vector<std::pair<double, double>> explicit_ics;  // used when non-empty
    std::optional<EnsembleSpec> ensemble;
    IntegratorOptions integrator;
    std::string out_dir = "out";

    void validate() const;

    nlohmann::json to_json() const;
    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig load(const std::string& path);
    void save(const std::string& path) const;
};

// CSV emission, fixed column order, %.12e formatting for reproducible diffs.

void write_trajectories_csv(const std::string& path, const std::vector<TrajectoryPair>& pairs);
void write_snapshot_csv(const std::string& path,
                        const std::vector<std::pair<double, double>>& points);
void write_velocity_grid_csv(const std::string& path, const TwoPhotonConfig& cfg,
                             const std::vector<double>& ts, const std::vector<double>& xs);
void write_metric_grid_csv(const std::string& path, const TwoPhotonConfig& cfg,
                           const std::vector<double>& ts, const std::vector<double>& xs,
                           double partner_x);
void write_boosted_csv(const std::string& path, const std::vector<BoostedPair>& pairs);

/// Trajectory bundle as JSON with a meta block (cfg, seed, integrator opts).
nlohmann::json ensemble_to_json(const Ensemble& ens, const RunConfig& cfg);

}  // namespace bohm

#endif
