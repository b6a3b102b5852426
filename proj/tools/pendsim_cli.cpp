// Command-line front end; talks to the simulator exclusively through the
// shared library's C API.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pendsim.h"

namespace {

int exit_code_for(pendsim_status s) {
    switch (s) {
        case PENDSIM_OK: return 0;
        case PENDSIM_ERR_IO: return 2;
        default: return 1;
    }
}

int report(pendsim_status s) {
    if (s != PENDSIM_OK)
        std::fprintf(stderr, "pendsim: %s: %s\n", pendsim_status_name(s), pendsim_last_error());
    return exit_code_for(s);
}

// "A..B" inclusive range or comma-separated list.
bool parse_seeds(const std::string& text, std::vector<uint64_t>& out) {
    const auto dots = text.find("..");
    try {
        if (dots != std::string::npos) {
            const uint64_t lo = std::stoull(text.substr(0, dots));
            const uint64_t hi = std::stoull(text.substr(dots + 2));
            if (hi < lo) return false;
            for (uint64_t s = lo; s <= hi; ++s) out.push_back(s);
            return true;
        }
        std::size_t pos = 0;
        while (pos < text.size()) {
            auto comma = text.find(',', pos);
            if (comma == std::string::npos) comma = text.size();
            out.push_back(std::stoull(text.substr(pos, comma - pos)));
            pos = comma + 1;
        }
        return !out.empty();
    } catch (const std::exception&) {
        return false;
    }
}

bool parse_distances(const std::string& text, std::vector<double>& out) {
    try {
        std::size_t pos = 0;
        while (pos < text.size()) {
            auto comma = text.find(',', pos);
            if (comma == std::string::npos) comma = text.size();
            out.push_back(std::stod(text.substr(pos, comma - pos)));
            pos = comma + 1;
        }
        return !out.empty();
    } catch (const std::exception&) {
        return false;
    }
}

pendsim_status load_config(const std::string& path, uint64_t seed, bool seed_set,
                           pendsim_config** out) {
    pendsim_status s =
        path.empty() ? pendsim_config_create_default(out) : pendsim_config_load(path.c_str(), out);
    if (s == PENDSIM_OK && seed_set) s = pendsim_config_set_seed(*out, seed);
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic pendulum-interception simulator"};
    app.require_subcommand(1);

    std::string config_path;
    uint64_t seed = 0;
    bool seed_set = false;
    std::string trace_path;
    std::string seeds_text;
    std::string distances_text;
    std::string out_path;
    int forecast = 300;
    int jobs = 1;

    auto* simulate = app.add_subcommand("simulate", "Run one experiment");
    simulate->add_option("--config", config_path, "Config JSON (defaults when omitted)");
    simulate->add_option("--seed", seed, "Override the config seed")
        ->each([&](const std::string&) { seed_set = true; });
    simulate->add_option("--trace", trace_path, "Write the per-tick CSV trace here");

    auto* sweep = app.add_subcommand("sweep", "Seeds x distances batch");
    sweep->add_option("--config", config_path, "Config JSON (defaults when omitted)");
    sweep->add_option("--seeds", seeds_text, "Seed range A..B or comma list")->required();
    sweep->add_option("--distances", distances_text, "Comma-separated distances in meters")
        ->required();
    sweep->add_option("--out", out_path, "Write the machine-readable summary here");
    sweep->add_option("--jobs", jobs, "1 = sequential, >1 = thread pool");

    auto* ekf = app.add_subcommand("ekf-trace", "Estimation-only trace with forecast");
    ekf->add_option("--config", config_path, "Config JSON (defaults when omitted)");
    ekf->add_option("--seed", seed, "Override the config seed")
        ->each([&](const std::string&) { seed_set = true; });
    ekf->add_option("--forecast", forecast, "Forecast horizon in ticks");
    ekf->add_option("--out", out_path, "Output CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    pendsim_config* cfg = nullptr;
    pendsim_status s = load_config(config_path, seed, seed_set, &cfg);
    if (s != PENDSIM_OK) return report(s);

    int rc = 0;
    if (simulate->parsed()) {
        pendsim_run_result result{};
        s = pendsim_run(cfg, trace_path.empty() ? nullptr : trace_path.c_str(), &result);
        if (s == PENDSIM_OK) {
            std::printf("triggered:        %s\n", result.triggered ? "yes" : "no");
            if (result.triggered) {
                std::printf("trigger_tick:     %" PRId64 "\n", result.trigger_tick);
                std::printf("movement_time:    %.4f s\n", result.movement_time_s);
                std::printf("distance:         %.4f m\n", result.realized_distance_m);
                std::printf("catch:            %s\n", result.catch_success ? "success" : "miss");
                std::printf("final ee-ball:    %.4f m\n", result.final_distance_m);
            }
            std::printf("rms angle error:  %.6f rad\n", result.rms_angle_error_rad);
        }
        rc = report(s);
    } else if (sweep->parsed()) {
        std::vector<uint64_t> seeds;
        std::vector<double> distances;
        if (!parse_seeds(seeds_text, seeds) || !parse_distances(distances_text, distances)) {
            std::fprintf(stderr, "pendsim: bad --seeds or --distances value\n");
            pendsim_config_free(cfg);
            return 1;
        }
        pendsim_sweep* result = nullptr;
        s = pendsim_sweep_run(cfg, seeds.data(), seeds.size(), distances.data(), distances.size(),
                              jobs > 1 ? 1 : 0, &result);
        if (s == PENDSIM_OK) {
            std::printf("%10s %10s %10s %12s %8s %12s\n", "seed", "dist_m", "trigger", "move_s",
                        "catch", "final_m");
            for (size_t i = 0; i < pendsim_sweep_size(result); ++i) {
                uint64_t cell_seed = 0;
                double dist = 0.0;
                pendsim_run_result r{};
                pendsim_sweep_cell(result, i, &cell_seed, &dist, &r);
                std::printf("%10" PRIu64 " %10.3f %10" PRId64 " %12.4f %8s %12.4f\n", cell_seed,
                            dist, r.trigger_tick, r.movement_time_s,
                            r.catch_success ? "yes" : "no", r.final_distance_m);
            }
            pendsim_sweep_summary totals{};
            pendsim_sweep_totals(result, &totals);
            std::printf("runs=%zu successes=%zu success_rate=%.3f move_mean=%.4f move_std=%.5f\n",
                        totals.runs, totals.successes, totals.success_rate,
                        totals.movement_time_mean_s, totals.movement_time_std_s);
            if (!out_path.empty()) s = pendsim_sweep_write_summary(result, out_path.c_str());
        }
        pendsim_sweep_free(result);
        rc = report(s);
    } else if (ekf->parsed()) {
        s = pendsim_ekf_trace(cfg, forecast, out_path.c_str());
        rc = report(s);
    }

    pendsim_config_free(cfg);
    return rc;
}
