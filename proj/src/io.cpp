#include "bohm/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "bohm/kg_dynamics.hpp"
#include "bohm/metric.hpp"
#include "bohm/weak_value.hpp"

namespace bohm {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    return f;
}

}  // namespace

void RunConfig::validate() const {
    packets.validate();
    if (!(t1 > t0)) throw std::invalid_argument("config: need t1 > t0");
    if (dispersion == Dispersion::Paraxial && (!kz || !(*kz > 0.0)))
        throw std::invalid_argument("config: paraxial dispersion requires kz > 0");
    if (theta && !(std::abs(*theta) < 1.0))
        throw std::invalid_argument("config: |theta| must be < 1");
    if (!(integrator.abs_tol > 0.0) || !(integrator.rel_tol > 0.0))
        throw std::invalid_argument("config: tolerances must be > 0");
    if (!(integrator.sample_dt > 0.0))
        throw std::invalid_argument("config: sample_dt must be > 0");
    if (explicit_ics.empty() && !ensemble)
        throw std::invalid_argument("config: need explicit initial conditions or an ensemble spec");
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["packets"] = {{"k0_right", packets.right.center},
                    {"sigma_right", packets.right.width},
                    {"k0_left", packets.left.center},
                    {"sigma_left", packets.left.width}};
    j["dispersion"] = dispersion == Dispersion::Optical ? "optical" : "paraxial";
    if (kz) j["kz"] = *kz;
    if (theta) j["theta"] = *theta;
    j["time"] = {{"t0", t0}, {"t1", t1}};
    if (!explicit_ics.empty()) {
        auto arr = nlohmann::json::array();
        for (const auto& [a, b] : explicit_ics) arr.push_back({a, b});
        j["initial_conditions"]["pairs"] = arr;
    }
    if (ensemble)
        j["initial_conditions"]["ensemble"] = {{"n", ensemble->n}, {"seed", ensemble->seed}};
    j["integrator"] = {{"abs_tol", integrator.abs_tol},
                       {"rel_tol", integrator.rel_tol},
                       {"sample_dt", integrator.sample_dt},
                       {"max_retries", integrator.max_retries}};
    j["output"] = {{"dir", out_dir}};
    return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    RunConfig c;
    const int version = j.at("schema_version").get<int>();
    if (version != kSchemaVersion)
        throw std::invalid_argument("config: unsupported schema_version " +
                                    std::to_string(version));
    const auto& p = j.at("packets");
    c.packets.right = right_packet(p.at("k0_right").get<double>(),
                                   p.at("sigma_right").get<double>());
    c.packets.left = left_packet(p.at("k0_left").get<double>(), p.at("sigma_left").get<double>());
    const std::string disp = j.value("dispersion", "optical");
    if (disp == "optical") c.dispersion = Dispersion::Optical;
    else if (disp == "paraxial") c.dispersion = Dispersion::Paraxial;
    else throw std::invalid_argument("config: unknown dispersion '" + disp + "'");
    if (j.contains("kz")) c.kz = j.at("kz").get<double>();
    if (j.contains("theta")) c.theta = j.at("theta").get<double>();
    if (j.contains("time")) {
        c.t0 = j.at("time").at("t0").get<double>();
        c.t1 = j.at("time").at("t1").get<double>();
    }
    if (j.contains("initial_conditions")) {
        const auto& ic = j.at("initial_conditions");
        if (ic.contains("pairs"))
            for (const auto& row : ic.at("pairs"))
                c.explicit_ics.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
        if (ic.contains("ensemble")) {
            EnsembleSpec e;
            e.n = ic.at("ensemble").at("n").get<std::size_t>();
            e.seed = ic.at("ensemble").at("seed").get<std::uint64_t>();
            c.ensemble = e;
        }
    }
    if (j.contains("integrator")) {
        const auto& i = j.at("integrator");
        c.integrator.abs_tol = i.value("abs_tol", c.integrator.abs_tol);
        c.integrator.rel_tol = i.value("rel_tol", c.integrator.rel_tol);
        c.integrator.sample_dt = i.value("sample_dt", c.integrator.sample_dt);
        c.integrator.max_retries = i.value("max_retries", c.integrator.max_retries);
    }
    if (j.contains("output")) c.out_dir = j.at("output").value("dir", c.out_dir);
    c.validate();
    return c;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error("config parse error in " + path + ": " + e.what());
    }
    try {
        return from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("config field error in " + path + ": " + e.what());
    }
}

void RunConfig::save(const std::string& path) const {
    auto f = open_out(path);
    f << to_json().dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

void write_trajectories_csv(const std::string& path, const std::vector<TrajectoryPair>& pairs) {
    auto f = open_out(path);
    f << "pair_id,t,x1,x2,v1,v2\n";
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (const auto& s : pairs[i].samples)
            f << i << ',' << fmt(s.t) << ',' << fmt(s.x1) << ',' << fmt(s.x2) << ',' << fmt(s.v1)
              << ',' << fmt(s.v2) << '\n';
}

void write_snapshot_csv(const std::string& path,
                        const std::vector<std::pair<double, double>>& points) {
    auto f = open_out(path);
    f << "pair_id,x1,x2\n";
    for (std::size_t i = 0; i < points.size(); ++i)
        f << i << ',' << fmt(points[i].first) << ',' << fmt(points[i].second) << '\n';
}

void write_velocity_grid_csv(const std::string& path, const TwoPhotonConfig& cfg,
                             const std::vector<double>& ts, const std::vector<double>& xs) {
    auto f = open_out(path);
    f << "t,x1,x2,v1_kg,v2_kg,v1_m,v2_m,rho1,rho2,j1,j2\n";
    for (double t : ts)
        for (double x1 : xs)
            for (double x2 : xs) {
                const auto [c1, c2] = currents_kg(cfg, equal_time_point(t, x1, x2));
                double v1kg = 0, v2kg = 0, v1m = 0, v2m = 0;
                bool node = false;
                try {
                    std::tie(v1kg, v2kg) = velocity_kg(cfg, equal_time_point(t, x1, x2));
                    std::tie(v1m, v2m) = velocity_m(cfg, {t, x1, x2});
                } catch (const NodeSingularity&) {
                    node = true;
                }
                f << fmt(t) << ',' << fmt(x1) << ',' << fmt(x2) << ',';
                if (node) f << "nan,nan,nan,nan,";
                else
                    f << fmt(v1kg) << ',' << fmt(v2kg) << ',' << fmt(v1m) << ',' << fmt(v2m)
                      << ',';
                f << fmt(c1.rho) << ',' << fmt(c2.rho) << ',' << fmt(c1.j) << ',' << fmt(c2.j)
                  << '\n';
            }
}

void write_metric_grid_csv(const std::string& path, const TwoPhotonConfig& cfg,
                           const std::vector<double>& ts, const std::vector<double>& xs,
                           double partner_x) {
    auto f = open_out(path);
    f << "t,x,vs\n";
    for (double t : ts)
        for (double x : xs) {
            const auto c1 = current_1(cfg, equal_time_point(t, x, partner_x));
            double vs;
            try {
                vs = shift_from_current(c1).vs;
            } catch (const NodeSingularity&) {
                vs = std::numeric_limits<double>::quiet_NaN();
            }
            f << fmt(t) << ',' << fmt(x) << ',' << fmt(vs) << '\n';
        }
}

void write_boosted_csv(const std::string& path, const std::vector<BoostedPair>& pairs) {
    auto f = open_out(path);
    f << "pair_id,path,lambda,t1p,x1p,t2p,x2p\n";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        for (const auto& s : pairs[i].path_a)
            f << i << ",a," << fmt(s.lambda) << ',' << fmt(s.e1.t) << ',' << fmt(s.e1.x) << ','
              << fmt(s.e2.t) << ',' << fmt(s.e2.x) << '\n';
        for (const auto& s : pairs[i].path_b)
            f << i << ",b," << fmt(s.lambda) << ',' << fmt(s.e1.t) << ',' << fmt(s.e1.x) << ','
              << fmt(s.e2.t) << ',' << fmt(s.e2.x) << '\n';
    }
}

nlohmann::json ensemble_to_json(const Ensemble& ens, const RunConfig& cfg) {
    nlohmann::json j;
    j["meta"] = {{"seed", ens.seed},
                 {"t0", ens.t0},
                 {"pairs", ens.pairs.size()},
                 {"aborted", ens.aborted},
                 {"config", cfg.to_json()}};
    auto arr = nlohmann::json::array();
    for (const auto& p : ens.pairs) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& s : p.samples) rows.push_back({s.t, s.x1, s.x2, s.v1, s.v2});
        arr.push_back({{"samples", rows},
                       {"steps", p.stats.steps},
                       {"rejections", p.stats.rejections}});
    }
    j["trajectories"] = arr;
    return j;
}

}  // namespace bohm
