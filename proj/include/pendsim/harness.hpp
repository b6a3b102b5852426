#ifndef PENDSIM_HARNESS_HPP
#define PENDSIM_HARNESS_HPP

#include <optional>
#include <string>
#include <vector>

#include "pendsim/config.hpp"
#include "pendsim/geometry.hpp"
#include "pendsim/planner.hpp"

namespace pendsim::harness {

/// Control-loop phases, after the robot interface's monitor/command split.
enum class Mode { MonitoringReady, CommandActive, Done };

const char* mode_name(Mode m);

/// One trace row per control tick. Estimate columns are empty until the
/// filter has bootstrapped from its first measurement.
struct TickRecord {
    long tick = 0;
    double t = 0.0;
    double phi_true = 0.0;
    double phidot_true = 0.0;
    std::optional<double> z;
    std::optional<double> phi_est;
    std::optional<double> phidot_est;
    std::optional<double> trace_p;
    std::optional<double> gain_norm;
    Mode mode = Mode::MonitoringReady;
    double a = 0.0;  // speed variable
    CartesianPose ee;
    CartesianPose ball;
};

/// Logged whenever the planner's gate vector changes, and at the trigger.
struct DecisionEvent {
    long tick = 0;
    planner::GateReport gates;
    CartesianPose point;
    bool triggered = false;
};

struct RunResult {
    bool triggered = false;
    long trigger_tick = -1;
    double movement_time = 0.0;       // trigger to plan completion, s
    bool catch_success = false;
    double final_distance = 0.0;      // ee-ball distance at plan end, m
    double rms_est_error = 0.0;       // RMS angle estimation error, rad
    double realized_distance = 0.0;   // |intercept - home ee|, m
};

struct RunTrace {
    std::vector<TickRecord> records;
    std::vector<DecisionEvent> decisions;
};

/// Deterministic fixed-tick experiment: sensor -> EKF -> planner gates in
/// MonitoringReady, open-loop timed plan in CommandActive, catch judgment at
/// plan completion. Identical (config, seed) always produces an identical
/// trace. A run that never triggers within duration_max reports a non-catch
/// result rather than failing.
std::pair<RunResult, RunTrace> run_experiment(const ExperimentConfig& cfg);

/// Home pose at the commanded distance from the ball's configured release
/// point: the release point is rotated about the shoulder, toward +y, until
/// the chord between the two equals `dist`. Keeps the whole straight-line
/// approach inside the reachable shell.
CartesianPose home_pose_for_distance(const ExperimentConfig& cfg, double dist);

struct SweepCell {
    std::uint64_t seed = 0;
    double distance = 0.0;  // commanded, m
    RunResult result;
    bool run_failed = false;  // config/placement error for this cell
    std::string error;
};

struct SweepSummary {
    std::size_t runs = 0;
    std::size_t successes = 0;
    double success_rate = 0.0;
    double movement_time_mean = 0.0;  // over successful runs
    double movement_time_std = 0.0;
    double rms_est_error_mean = 0.0;
};

struct SweepResult {
    std::vector<SweepCell> cells;  // ordered by (seed, distance)
    SweepSummary summary;
};

/// Cartesian product of seeds x distances. Each cell re-homes the arm for
/// its commanded distance. With parallel=true the cells run on a thread
/// pool; output is ordered and identical to the sequential mode.
SweepResult run_sweep(const ExperimentConfig& base, const std::vector<std::uint64_t>& seeds,
                      const std::vector<double>& distances, bool parallel);

/// Estimation-only run: full monitoring trace followed by an n-tick mean
/// forecast continued against the truth simulator.
struct EkfTraceRow {
    long tick = 0;
    double t = 0.0;
    bool is_forecast = false;
    double phi_true = 0.0;
    double phidot_true = 0.0;
    std::optional<double> z;
    std::optional<double> phi_est;
    std::optional<double> phidot_est;
    std::optional<double> trace_p;
    std::optional<double> gain_norm;
};

std::vector<EkfTraceRow> ekf_trace(const ExperimentConfig& cfg, int forecast_ticks);

/// Fixed-header CSV writers; floats at 17 significant digits so identical
/// runs produce byte-identical files. Throw IoError on failure.
void write_trace_csv(const std::string& path, const RunTrace& trace);
void write_ekf_trace_csv(const std::string& path, const std::vector<EkfTraceRow>& rows);
void write_sweep_summary(const std::string& path, const SweepResult& sweep);
std::string sweep_summary_json(const SweepResult& sweep);

}  // namespace pendsim::harness

#endif
