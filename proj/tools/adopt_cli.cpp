// Command line front end: run one scenario, sweep seeds, recompute metrics
// from a saved trace, or run the acceptance suite.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "adopt/acceptance.hpp"
#include "adopt/metrics.hpp"
#include "adopt/scenario.hpp"
#include "adopt/world_engine.hpp"

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + path);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

adopt::ScenarioConfig make_config(const adopt::RunRequest& req) {
    adopt::ScenarioConfig cfg;
    if (!req.config_path.empty()) cfg = adopt::load_scenario(read_file(req.config_path));
    if (req.seed) cfg.seed = *req.seed;
    if (req.sigma) cfg.sigma_mw = *req.sigma;
    if (req.ticks) cfg.ticks = *req.ticks;
    if (req.controller) cfg.controller_enabled = *req.controller;
    cfg.validate();
    return cfg;
}

// output dirs are never reused; partial results from an old run must not mix in
fs::path fresh_dir(const std::string& requested, const char* fallback) {
    fs::path dir = requested;
    if (dir.empty()) {
        const char* env = std::getenv("ADOPT_OUT_DIR");
        dir = env && *env ? fs::path(env) / fallback : fs::path(fallback);
    }
    if (fs::exists(dir) && !fs::is_empty(dir))
        throw std::runtime_error("output dir " + dir.string() + " exists and is not empty");
    fs::create_directories(dir);
    return dir;
}

void write_curves(const fs::path& dir, const std::vector<adopt::TraceRow>& rows) {
    adopt::write_location_rates_csv((dir / "location_rates.csv").string(),
                                    adopt::per_location_rates(rows));
    adopt::write_speed_profile_csv((dir / "speed_profile.csv").string(),
                                   adopt::speed_profile(rows));
    adopt::SpeedSamples sp = adopt::speed_samples(rows);
    adopt::write_ecdf_csv((dir / "speed_ecdf.csv").string(),
                          {{"actual", sp.actual}, {"estimated", sp.estimated}});
    adopt::write_track_error_pairs_csv((dir / "track_error_pairs.csv").string(),
                                       adopt::track_error_pairs(rows));
}

int cmd_run(const adopt::RunRequest& req) {
    adopt::ScenarioConfig cfg = make_config(req);
    fs::path dir = fresh_dir(req.out_dir, "run-out");
    adopt::RunResult res = adopt::World(cfg).run();
    adopt::write_trace((dir / "trace.csv").string(), res.rows);
    adopt::detail::write_file((dir / "summary.json").string(),
                              adopt::summary_json(res).dump(2) + "\n");
    write_curves(dir, res.rows);
    std::cout << dir.string() << ": trace.csv, summary.json, curves written\n";
    return 0;
}

int cmd_sweep(const adopt::RunRequest& req) {
    if (req.seeds.empty()) throw std::runtime_error("sweep: need at least one --seeds value");
    fs::path dir = fresh_dir(req.out_dir, "sweep-out");
    struct Stat {
        double sum = 0, sumsq = 0;
        long n = 0;
        void add(double v) {
            if (std::isnan(v)) return;
            sum += v;
            sumsq += v * v;
            ++n;
        }
        nlohmann::json json() const {
            if (n == 0) return nullptr;
            double mean = sum / n;
            double var = n > 1 ? (sumsq - sum * sum / n) / (n - 1) : 0.0;
            return {{"mean", mean}, {"stddev", std::sqrt(var > 0 ? var : 0)}, {"runs", n}};
        }
    };
    Stat acc, ey, ed, ev, edelta, ezone;
    for (std::uint64_t seed : req.seeds) {
        adopt::RunRequest one = req;
        one.seed = seed;
        adopt::ScenarioConfig cfg = make_config(one);
        adopt::RunResult res = adopt::World(cfg).run();
        fs::path sub = dir / ("seed-" + std::to_string(seed));
        fs::create_directories(sub);
        adopt::detail::write_file((sub / "summary.json").string(),
                                  adopt::summary_json(res).dump(2) + "\n");
        acc.add(adopt::accuracy_percent(adopt::confusion(res.rows)));
        adopt::RmseReport r = adopt::rmse_suite(res.rows);
        ey.add(r.e_y);
        ed.add(r.e_d);
        ev.add(r.e_v);
        edelta.add(r.e_delta);
        ezone.add(r.e_zone);
    }
    nlohmann::json j;
    j["seeds"] = req.seeds;
    j["accuracy_percent"] = acc.json();
    j["lateral_rmse_m"] = ey.json();
    j["longitudinal_rmse_m"] = ed.json();
    j["speed_rmse_mps"] = ev.json();
    j["time_to_clear_rmse_s"] = edelta.json();
    j["zone_distance_rmse_m"] = ezone.json();
    adopt::detail::write_file((dir / "sweep.json").string(), j.dump(2) + "\n");
    std::cout << dir.string() << ": " << req.seeds.size() << " runs aggregated in sweep.json\n";
    return 0;
}

int cmd_metrics(const adopt::RunRequest& req) {
    std::vector<adopt::TraceRow> rows = adopt::read_trace(req.trace_path);
    fs::path dir = fresh_dir(req.out_dir, "metrics-out");
    adopt::detail::write_file((dir / "summary.json").string(),
                              adopt::metrics_json(rows).dump(2) + "\n");
    write_curves(dir, rows);
    std::cout << dir.string() << ": metrics recomputed from " << req.trace_path << "\n";
    return 0;
}

int cmd_accept(const adopt::RunRequest& req) {
    auto results = adopt::run_acceptance(req.quick);
    return adopt::report_acceptance(std::cout, results) == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parked-car pedestrian detection simulator"};
    app.require_subcommand(1);
    adopt::RunRequest req;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", req.config_path, "scenario file (JSON); omit for the preset")
            ->check(CLI::ExistingFile);
        cmd->add_option("--out", req.out_dir, "output directory (default $ADOPT_OUT_DIR/<cmd>-out)");
        cmd->add_option("--seed", req.seed, "override the scenario seed");
        cmd->add_option("--sigma", req.sigma, "override receiver noise sigma in mW");
        cmd->add_option("--ticks", req.ticks, "override the run length in seconds");
        cmd->add_flag("--controller,!--no-controller", req.controller,
                      "enable or disable the speed controller");
    };

    CLI::App* run = app.add_subcommand("run", "simulate one scenario and write trace + metrics");
    add_common(run);
    CLI::App* sweep = app.add_subcommand("sweep", "run several seeds and aggregate their metrics");
    add_common(sweep);
    sweep->add_option("--seeds", req.seeds, "seed list")->delimiter(',')->required();
    CLI::App* metrics =
        app.add_subcommand("metrics", "recompute metrics and curves from a saved trace");
    metrics->add_option("--trace", req.trace_path, "trace file from a previous run")
        ->check(CLI::ExistingFile)
        ->required();
    metrics->add_option("--out", req.out_dir, "output directory");
    CLI::App* accept = app.add_subcommand("accept", "run the acceptance suite");
    accept->add_flag("--quick", req.quick, "noise-free subset only");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(req);
        if (*sweep) {
            req.mode = adopt::RunRequest::Mode::Sweep;
            return cmd_sweep(req);
        }
        if (*metrics) {
            req.mode = adopt::RunRequest::Mode::Metrics;
            return cmd_metrics(req);
        }
        req.mode = adopt::RunRequest::Mode::Accept;
        return cmd_accept(req);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
