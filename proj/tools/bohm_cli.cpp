// Command-line front end: scenario execution and CSV/JSON emission.
//
// Subcommands: velocity | trajectories | snapshot | boost | metric | verify.
// Everything here is a thin shell over the library; outputs are deterministic
// given the config and seed. Worker threads are capped by BOHM_SIM_THREADS.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "bohm/io.hpp"
#include "bohm/kg_dynamics.hpp"
#include "bohm/lorentz.hpp"
#include "bohm/paraxial.hpp"
#include "bohm/trajectories.hpp"
#include "bohm/verification.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> dispersion;
    std::optional<double> kz;
    std::optional<double> theta;
    bool quiet = false;
};

bohm::RunConfig load_config(const CommonFlags& flags) {
    bohm::RunConfig cfg;
    if (!flags.config_path.empty()) {
        cfg = bohm::RunConfig::load(flags.config_path);
    } else {
        // Default: the k0/sigma = 20 head-on scenario with an ensemble seed.
        cfg.ensemble = bohm::EnsembleSpec{200, 42};
    }
    if (flags.out_dir.empty() == false) cfg.out_dir = flags.out_dir;
    if (flags.seed && cfg.ensemble) cfg.ensemble->seed = *flags.seed;
    if (flags.dispersion) {
        if (*flags.dispersion == "optical") cfg.dispersion = bohm::Dispersion::Optical;
        else if (*flags.dispersion == "paraxial") cfg.dispersion = bohm::Dispersion::Paraxial;
        else throw std::invalid_argument("--dispersion must be 'optical' or 'paraxial'");
    }
    if (flags.kz) cfg.kz = *flags.kz;
    if (flags.theta) cfg.theta = *flags.theta;
    if (cfg.explicit_ics.empty() && !cfg.ensemble) cfg.ensemble = bohm::EnsembleSpec{200, 42};
    cfg.validate();
    std::filesystem::create_directories(cfg.out_dir);
    return cfg;
}

bohm::VelocityField field_for(const bohm::RunConfig& cfg) {
    if (cfg.dispersion == bohm::Dispersion::Paraxial)
        return bohm::make_paraxial_field(cfg.packets, *cfg.kz);
    return bohm::make_kg_field(cfg.packets);
}

std::vector<std::pair<double, double>> initial_conditions(const bohm::RunConfig& cfg) {
    if (!cfg.explicit_ics.empty()) return cfg.explicit_ics;
    if (cfg.dispersion == bohm::Dispersion::Paraxial)
        return bohm::sample_initial_paraxial(cfg.packets, *cfg.kz, cfg.t0, cfg.ensemble->n,
                                             cfg.ensemble->seed);
    return bohm::sample_initial(cfg.packets, cfg.t0, cfg.ensemble->n, cfg.ensemble->seed);
}

std::vector<double> default_axis(double lo, double hi, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; ++i)
        out.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    return out;
}

int cmd_velocity(const bohm::RunConfig& cfg, bool quiet) {
    bohm::TwoPhotonConfig packets = cfg.packets;
    if (cfg.theta) packets = bohm::redshift_packets(bohm::Boost(*cfg.theta), packets);
    const auto ts = default_axis(cfg.t0, cfg.t1, 5);
    const auto xs = default_axis(-4.0, 4.0, 41);
    const std::string path = cfg.out_dir + "/velocity_grid.csv";
    bohm::write_velocity_grid_csv(path, packets, ts, xs);
    if (!quiet) std::cout << "wrote " << path << "\n";
    return 0;
}

int cmd_trajectories(const bohm::RunConfig& cfg, bool quiet) {
    const auto ics = initial_conditions(cfg);
    const auto ens = bohm::integrate_ensemble(cfg.packets, field_for(cfg), ics, cfg.t0, cfg.t1,
                                              cfg.integrator, cfg.ensemble ? cfg.ensemble->seed : 0);
    const std::string csv = cfg.out_dir + "/trajectories.csv";
    bohm::write_trajectories_csv(csv, ens.pairs);
    std::ofstream meta(cfg.out_dir + "/trajectories.json");
    meta << bohm::ensemble_to_json(ens, cfg).dump(2) << "\n";
    if (!quiet) {
        std::cout << "wrote " << csv << " (" << ens.pairs.size() << " pairs";
        if (ens.aborted) std::cout << ", " << ens.aborted << " aborted on nodes";
        std::cout << ")\n";
        for (const auto& d : ens.diagnostics) std::cout << "  " << d << "\n";
    }
    return 0;
}

int cmd_snapshot(const bohm::RunConfig& cfg, double t, bool quiet) {
    const auto ics = initial_conditions(cfg);
    const auto ens = bohm::integrate_ensemble(cfg.packets, field_for(cfg), ics, cfg.t0, cfg.t1,
                                              cfg.integrator, cfg.ensemble ? cfg.ensemble->seed : 0);
    const auto points = bohm::snapshot(ens, t);
    char name[64];
    std::snprintf(name, sizeof name, "/snapshot_t%+.3f.csv", t);
    const std::string path = cfg.out_dir + name;
    bohm::write_snapshot_csv(path, points);
    if (!quiet) std::cout << "wrote " << path << " (" << points.size() << " pairs)\n";
    return 0;
}

int cmd_boost(const bohm::RunConfig& cfg, bool quiet) {
    if (!cfg.theta) throw std::invalid_argument("boost: --theta (or config theta) required");
    const bohm::Boost b(*cfg.theta);
    const auto ics = initial_conditions(cfg);
    std::vector<bohm::BoostedPair> results(ics.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < ics.size(); ++i) {
        results[i] = bohm::integrate_boosted(cfg.packets, b, ics[i].first, ics[i].second, cfg.t0,
                                             cfg.t1, cfg.integrator);
        worst = std::max(worst, results[i].max_discrepancy);
    }
    const std::string path = cfg.out_dir + "/boosted_trajectories.csv";
    bohm::write_boosted_csv(path, results);
    if (!quiet)
        std::cout << "wrote " << path << " (max path a/b discrepancy " << worst << ")\n";
    return 0;
}

int cmd_metric(const bohm::RunConfig& cfg, bool quiet) {
    bohm::TwoPhotonConfig packets = cfg.packets;
    if (cfg.theta) packets = bohm::redshift_packets(bohm::Boost(*cfg.theta), packets);
    const auto ts = default_axis(cfg.t0, cfg.t1, 81);
    const auto xs = default_axis(-4.0, 4.0, 161);
    // Shift map along particle 1 with the partner held at the mirrored spot.
    const std::string path = cfg.out_dir + "/metric_grid.csv";
    bohm::write_metric_grid_csv(path, packets, ts, xs, 0.0);
    if (!quiet) std::cout << "wrote " << path << "\n";
    return 0;
}

int cmd_verify(const bohm::RunConfig& cfg, bool quiet) {
    bohm::GridSpec grid;
    const auto report = bohm::run_all_checks(cfg.packets, grid);
    const std::string path = cfg.out_dir + "/verify_report.json";
    std::ofstream f(path);
    f << report.to_json().dump(2) << "\n";
    if (!quiet) {
        for (const auto& c : report.checks)
            std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  worst=" << c.worst << "\n";
        std::cout << "report: " << path << "\n";
    }
    return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-photon relativistic Bohmian trajectory simulator"};
    app.require_subcommand(1);

    CommonFlags flags;
    app.add_option("--config", flags.config_path, "JSON run configuration");
    app.add_option("--out", flags.out_dir, "output directory (overrides config)");
    app.add_option("--seed", flags.seed, "ensemble seed (overrides config)");
    app.add_option("--dispersion", flags.dispersion, "optical | paraxial");
    app.add_option("--kz", flags.kz, "longitudinal wavenumber (paraxial)");
    app.add_option("--theta", flags.theta, "boost velocity, |theta| < 1");
    app.add_flag("--quiet", flags.quiet, "suppress progress output");

    auto* velocity = app.add_subcommand("velocity", "emit velocity/current grid CSV");
    auto* trajectories = app.add_subcommand("trajectories", "integrate and emit a bundle");
    auto* snapshot = app.add_subcommand("snapshot", "ensemble positions at a timeslice");
    double snapshot_t = 0.0;
    snapshot->add_option("--t", snapshot_t, "timeslice")->required();
    auto* boost = app.add_subcommand("boost", "boosted-frame trajectories, both construction paths");
    auto* metric = app.add_subcommand("metric", "emit quantum-metric shift map CSV");
    auto* verify = app.add_subcommand("verify", "run the property suite, emit JSON report");

    CLI11_PARSE(app, argc, argv);

    try {
        const bohm::RunConfig cfg = load_config(flags);
        if (velocity->parsed()) return cmd_velocity(cfg, flags.quiet);
        if (trajectories->parsed()) return cmd_trajectories(cfg, flags.quiet);
        if (snapshot->parsed()) return cmd_snapshot(cfg, snapshot_t, flags.quiet);
        if (boost->parsed()) return cmd_boost(cfg, flags.quiet);
        if (metric->parsed()) return cmd_metric(cfg, flags.quiet);
        if (verify->parsed()) return cmd_verify(cfg, flags.quiet);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
