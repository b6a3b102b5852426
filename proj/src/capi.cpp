#include "pendsim.h"

#include <string>

#include "pendsim/errors.hpp"
#include "pendsim/harness.hpp"

using namespace pendsim;

struct pendsim_config {
    harness::ExperimentConfig cfg;
    std::string json_cache;
};

struct pendsim_sweep {
    harness::SweepResult result;
};

namespace {

thread_local std::string g_last_error;

pendsim_status fail(pendsim_status code, const std::string& msg) {
    g_last_error = msg;
    return code;
}

template <typename Fn>
pendsim_status guarded(Fn&& fn) {
    try {
        fn();
        return PENDSIM_OK;
    } catch (const ConfigError& e) {
        return fail(PENDSIM_ERR_CONFIG, e.what());
    } catch (const IoError& e) {
        return fail(PENDSIM_ERR_IO, e.what());
    } catch (const std::exception& e) {
        return fail(PENDSIM_ERR_RUNTIME, e.what());
    }
}

void copy_result(const harness::RunResult& r, pendsim_run_result* out) {
    out->triggered = r.triggered ? 1 : 0;
    out->trigger_tick = r.trigger_tick;
    out->movement_time_s = r.movement_time;
    out->catch_success = r.catch_success ? 1 : 0;
    out->final_distance_m = r.final_distance;
    out->rms_angle_error_rad = r.rms_est_error;
    out->realized_distance_m = r.realized_distance;
}

}  // namespace

extern "C" {

pendsim_status pendsim_config_create_default(pendsim_config** out) {
    if (!out) return fail(PENDSIM_ERR_ARGUMENT, "out must not be null");
    return guarded([&] { *out = new pendsim_config{harness::default_config(), {}}; });
}

pendsim_status pendsim_config_load(const char* path, pendsim_config** out) {
    if (!path || !out) return fail(PENDSIM_ERR_ARGUMENT, "path and out must not be null");
    return guarded([&] { *out = new pendsim_config{harness::load_config(path), {}}; });
}

pendsim_status pendsim_config_load_json(const char* json_text, pendsim_config** out) {
    if (!json_text || !out) return fail(PENDSIM_ERR_ARGUMENT, "json_text and out must not be null");
    return guarded([&] { *out = new pendsim_config{harness::parse_config(json_text), {}}; });
}

pendsim_status pendsim_config_set_seed(pendsim_config* cfg, uint64_t seed) {
    if (!cfg) return fail(PENDSIM_ERR_ARGUMENT, "cfg must not be null");
    cfg->cfg.seed = seed;
    return PENDSIM_OK;
}

const char* pendsim_config_to_json(pendsim_config* cfg) {
    if (!cfg) return nullptr;
    cfg->json_cache = harness::config_to_json(cfg->cfg);
    return cfg->json_cache.c_str();
}

void pendsim_config_free(pendsim_config* cfg) {
    delete cfg;
}

pendsim_status pendsim_run(const pendsim_config* cfg, const char* trace_csv_path,
                           pendsim_run_result* out) {
    if (!cfg || !out) return fail(PENDSIM_ERR_ARGUMENT, "cfg and out must not be null");
    return guarded([&] {
        auto [result, trace] = harness::run_experiment(cfg->cfg);
        if (trace_csv_path) harness::write_trace_csv(trace_csv_path, trace);
        copy_result(result, out);
    });
}

pendsim_status pendsim_sweep_run(const pendsim_config* cfg, const uint64_t* seeds, size_t n_seeds,
                                 const double* distances_m, size_t n_distances, int parallel,
                                 pendsim_sweep** out) {
    if (!cfg || !seeds || !distances_m || !out)
        return fail(PENDSIM_ERR_ARGUMENT, "cfg, seeds, distances and out must not be null");
    if (n_seeds == 0 || n_distances == 0)
        return fail(PENDSIM_ERR_ARGUMENT, "need at least one seed and one distance");
    return guarded([&] {
        std::vector<std::uint64_t> s(seeds, seeds + n_seeds);
        std::vector<double> d(distances_m, distances_m + n_distances);
        *out = new pendsim_sweep{harness::run_sweep(cfg->cfg, s, d, parallel != 0)};
    });
}

size_t pendsim_sweep_size(const pendsim_sweep* sweep) {
    return sweep ? sweep->result.cells.size() : 0;
}

pendsim_status pendsim_sweep_cell(const pendsim_sweep* sweep, size_t index, uint64_t* seed,
                                  double* distance_m, pendsim_run_result* out) {
    if (!sweep || !out) return fail(PENDSIM_ERR_ARGUMENT, "sweep and out must not be null");
    if (index >= sweep->result.cells.size())
        return fail(PENDSIM_ERR_ARGUMENT, "cell index out of range");
    const auto& cell = sweep->result.cells[index];
    if (seed) *seed = cell.seed;
    if (distance_m) *distance_m = cell.distance;
    copy_result(cell.result, out);
    return PENDSIM_OK;
}

pendsim_status pendsim_sweep_totals(const pendsim_sweep* sweep, pendsim_sweep_summary* out) {
    if (!sweep || !out) return fail(PENDSIM_ERR_ARGUMENT, "sweep and out must not be null");
    const auto& s = sweep->result.summary;
    out->runs = s.runs;
    out->successes = s.successes;
    out->success_rate = s.success_rate;
    out->movement_time_mean_s = s.movement_time_mean;
    out->movement_time_std_s = s.movement_time_std;
    out->rms_est_error_mean_rad = s.rms_est_error_mean;
    return PENDSIM_OK;
}

pendsim_status pendsim_sweep_write_summary(const pendsim_sweep* sweep, const char* path) {
    if (!sweep || !path) return fail(PENDSIM_ERR_ARGUMENT, "sweep and path must not be null");
    return guarded([&] { harness::write_sweep_summary(path, sweep->result); });
}

void pendsim_sweep_free(pendsim_sweep* sweep) {
    delete sweep;
}

pendsim_status pendsim_ekf_trace(const pendsim_config* cfg, int forecast_ticks,
                                 const char* csv_path) {
    if (!cfg || !csv_path) return fail(PENDSIM_ERR_ARGUMENT, "cfg and csv_path must not be null");
    if (forecast_ticks < 0) return fail(PENDSIM_ERR_ARGUMENT, "forecast_ticks must be >= 0");
    return guarded([&] {
        harness::write_ekf_trace_csv(csv_path, harness::ekf_trace(cfg->cfg, forecast_ticks));
    });
}

const char* pendsim_last_error(void) {
    return g_last_error.c_str();
}

const char* pendsim_status_name(pendsim_status status) {
    switch (status) {
        case PENDSIM_OK: return "ok";
        case PENDSIM_ERR_CONFIG: return "config error";
        case PENDSIM_ERR_IO: return "io error";
        case PENDSIM_ERR_ARGUMENT: return "invalid argument";
        case PENDSIM_ERR_RUNTIME: return "runtime error";
    }
    return "unknown";
}

}  // extern "C"
