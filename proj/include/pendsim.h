/* pendsim: deterministic pendulum-interception simulator.
 *
 * C API of the shared library. All entry points return a status code;
 * pendsim_last_error() carries the detail message for the calling thread.
 * Handles are opaque and must be released with their _free function.
 */
#ifndef PENDSIM_H
#define PENDSIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PENDSIM_API __declspec(dllexport)
#else
#define PENDSIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pendsim_status {
    PENDSIM_OK = 0,
    PENDSIM_ERR_CONFIG = 1,   /* invalid config value or unknown key */
    PENDSIM_ERR_IO = 2,       /* file could not be read or written */
    PENDSIM_ERR_ARGUMENT = 3, /* null pointer or out-of-range argument */
    PENDSIM_ERR_RUNTIME = 4   /* any other failure */
} pendsim_status;

typedef struct pendsim_config pendsim_config;
typedef struct pendsim_sweep pendsim_sweep;

typedef struct pendsim_run_result {
    int triggered;
    int64_t trigger_tick;       /* -1 when never triggered */
    double movement_time_s;     /* trigger tick to plan completion */
    int catch_success;
    double final_distance_m;    /* ee-ball distance at plan completion */
    double rms_angle_error_rad; /* filter vs truth over monitoring ticks */
    double realized_distance_m; /* |intercept point - home pose| */
} pendsim_run_result;

typedef struct pendsim_sweep_summary {
    size_t runs;
    size_t successes;
    double success_rate;
    double movement_time_mean_s; /* over successful runs */
    double movement_time_std_s;
    double rms_est_error_mean_rad;
} pendsim_sweep_summary;

/* Config lifecycle. Load parses strictly: unknown keys are errors. */
PENDSIM_API pendsim_status pendsim_config_create_default(pendsim_config** out);
PENDSIM_API pendsim_status pendsim_config_load(const char* path, pendsim_config** out);
PENDSIM_API pendsim_status pendsim_config_load_json(const char* json_text, pendsim_config** out);
PENDSIM_API pendsim_status pendsim_config_set_seed(pendsim_config* cfg, uint64_t seed);
/* JSON dump of the effective config, defaults included. Caller keeps the
 * returned pointer valid only until the next call on the same config. */
PENDSIM_API const char* pendsim_config_to_json(pendsim_config* cfg);
PENDSIM_API void pendsim_config_free(pendsim_config* cfg);

/* One deterministic experiment. trace_csv_path may be NULL to skip the
 * trace file. */
PENDSIM_API pendsim_status pendsim_run(const pendsim_config* cfg, const char* trace_csv_path,
                                       pendsim_run_result* out);

/* Cartesian product of seeds x distances; each cell re-homes the arm at its
 * commanded distance. parallel != 0 uses a thread pool; the output is
 * identical to the sequential mode. */
PENDSIM_API pendsim_status pendsim_sweep_run(const pendsim_config* cfg, const uint64_t* seeds,
                                             size_t n_seeds, const double* distances_m,
                                             size_t n_distances, int parallel,
                                             pendsim_sweep** out);
PENDSIM_API size_t pendsim_sweep_size(const pendsim_sweep* sweep);
PENDSIM_API pendsim_status pendsim_sweep_cell(const pendsim_sweep* sweep, size_t index,
                                              uint64_t* seed, double* distance_m,
                                              pendsim_run_result* out);
PENDSIM_API pendsim_status pendsim_sweep_totals(const pendsim_sweep* sweep,
                                                pendsim_sweep_summary* out);
PENDSIM_API pendsim_status pendsim_sweep_write_summary(const pendsim_sweep* sweep,
                                                       const char* path);
PENDSIM_API void pendsim_sweep_free(pendsim_sweep* sweep);

/* Estimation-only trace: monitoring run over the configured duration plus
 * forecast_ticks of open-loop prediction, written as CSV. */
PENDSIM_API pendsim_status pendsim_ekf_trace(const pendsim_config* cfg, int forecast_ticks,
                                             const char* csv_path);

/* Message for the most recent failing call on this thread. */
PENDSIM_API const char* pendsim_last_error(void);
PENDSIM_API const char* pendsim_status_name(pendsim_status status);

#ifdef __cplusplus
}
#endif

#endif /* PENDSIM_H */
