#include "pendsim/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "pendsim/errors.hpp"
#include "pendsim/rng.hpp"

namespace pendsim::harness {

namespace {

using pendulum::PendulumState;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
    return v ? fmt(*v) : std::string{};
}

bool same_gates(const planner::GateReport& a, const planner::GateReport& b) {
    return a.reachable == b.reachable && a.converged == b.converged &&
           a.catchable == b.catchable && a.plan_valid == b.plan_valid;
}

}  // namespace

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::MonitoringReady: return "MonitoringReady";
        case Mode::CommandActive: return "CommandActive";
        case Mode::Done: return "Done";
    }
    return "?";
}

CartesianPose home_pose_for_distance(const ExperimentConfig& cfg, double dist) {
    const CartesianPose shoulder{0.0, 0.0, cfg.geom.base_height};
    const CartesianPose ref = pendulum::ball_position(cfg.initial, cfg.pend);
    const CartesianPose v = ref - shoulder;
    const double r_s = norm(v);
    if (r_s < 1e-9) throw ConfigError("ball release point coincides with the shoulder");
    // Anchor on the line toward the release point, pulled inside the reach
    // shell when the release point itself lies beyond it.
    const double r_a = std::min(r_s, cfg.geom.l1 + cfg.geom.l2 - 0.02);
    const CartesianPose u1 = (1.0 / r_s) * v;
    if (dist < 1e-12) return shoulder + r_a * u1;

    // Rotate toward +y (perpendicular to the swing plane) so the chord stays
    // at constant shoulder distance.
    CartesianPose u2{-u1.y * u1.x, 1.0 - u1.y * u1.y, -u1.y * u1.z};
    const double n2 = norm(u2);
    if (n2 < 1e-9) throw ConfigError("degenerate home placement geometry");
    u2 = (1.0 / n2) * u2;

    const double half = std::min(dist / (2.0 * r_a), 1.0);
    const double psi = 2.0 * std::asin(half);
    return shoulder + (r_a * std::cos(psi)) * u1 + (r_a * std::sin(psi)) * u2;
}

std::pair<RunResult, RunTrace> run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();

    Pcg32 dropout_rng = make_stream(cfg.seed, "sensor-dropout");
    Pcg32 noise_rng = make_stream(cfg.seed, "sensor-noise");
    Pcg32 latency_rng = make_stream(cfg.seed, "trigger-latency");
    Gaussian gauss;

    PendulumState truth = cfg.initial;
    std::optional<ekf::StateEstimate> est;
    ekf::FilterStep last_step;

    hopf::SpeedState speed;
    hopf::Regime regime = hopf::Regime::Init;
    hopf::HopfParams active_hopf = cfg.hopf_base;

    const CartesianPose home_ee = arm::forward_kinematics(cfg.home, cfg.geom);
    planner::InterceptContext ctx{cfg.pend,      cfg.noise, cfg.intercept, cfg.geom,
                                  cfg.hopf_base, home_ee,   cfg.tick};

    std::vector<arm::TrajectorySample> plan;
    std::size_t plan_idx = 0;
    int latency_remaining = -1;

    planner::GateReport prev_gates;
    bool have_prev_gates = false;

    RunResult res;
    RunTrace trace;
    Mode mode = Mode::MonitoringReady;
    double sum_sq_err = 0.0;
    long err_count = 0;

    for (long i = 0;; ++i) {
        TickRecord rec;
        rec.tick = i;
        rec.t = i * cfg.tick;
        rec.phi_true = truth.phi;
        rec.phidot_true = truth.phi_dot;
        rec.ball = pendulum::ball_position(truth, cfg.pend);
        rec.mode = mode;
        rec.ee = home_ee;

        if (mode == Mode::MonitoringReady) {
            const auto z = pendulum::measure(truth, cfg.pend, cfg.sensor, dropout_rng,
                                             noise_rng, gauss);
            rec.z = z;
            if (!est) {
                if (z) {
                    est = ekf::initial_estimate(*z, cfg.pend);
                    last_step = ekf::FilterStep{};
                    last_step.measurement_used = true;
                }
            } else {
                auto [next, step] = ekf::update(*est, z, cfg.pend, cfg.noise);
                est = next;
                last_step = step;
            }

            if (est) {
                rec.phi_est = est->x_hat(0);
                rec.phidot_est = est->x_hat(1);
                rec.trace_p = est->P.trace();
                rec.gain_norm = last_step.gain.norm();
                sum_sq_err += (est->x_hat(0) - truth.phi) * (est->x_hat(0) - truth.phi);
                ++err_count;

                const auto prop = planner::propose_intercept(*est, ctx);
                const auto gates = planner::check_condition(prop, *est, ctx);
                if (!have_prev_gates || !same_gates(gates, prev_gates))
                    trace.decisions.push_back({i, gates, prop.point, false});
                prev_gates = gates;
                have_prev_gates = true;

                bool trigger_now = false;
                if (gates.all()) {
                    if (latency_remaining < 0)
                        latency_remaining =
                            cfg.latency_jitter_ticks > 0
                                ? static_cast<int>(latency_rng.next_u32() %
                                                   (cfg.latency_jitter_ticks + 1))
                                : 0;
                    if (latency_remaining == 0)
                        trigger_now = true;
                    else
                        --latency_remaining;
                }

                if (trigger_now) {
                    try {
                        plan = arm::plan_trajectory(home_ee, prop.point, cfg.intercept.t_move,
                                                    cfg.tick, cfg.hopf_base, cfg.geom);
                    } catch (const Error&) {
                        // Latency pushed the trigger onto a stale, now
                        // infeasible point; re-arm and keep monitoring.
                        latency_remaining = -1;
                        plan.clear();
                    }
                    if (!plan.empty()) {
                        res.triggered = true;
                        res.trigger_tick = i;
                        res.realized_distance = distance(home_ee, prop.point);
                        if (res.realized_distance > 1e-12)
                            active_hopf = hopf::fit_isochrone(res.realized_distance,
                                                              cfg.intercept.t_move, cfg.hopf_base);
                        trace.decisions.push_back({i, gates, prop.point, true});
                        mode = Mode::CommandActive;
                        plan_idx = 0;
                        if (plan.size() == 1) {
                            res.movement_time = 0.0;
                            res.final_distance = distance(home_ee, rec.ball);
                            res.catch_success =
                                planner::judge_catch(home_ee, rec.ball, cfg.intercept);
                            mode = Mode::Done;
                        }
                    }
                }
            }
        } else if (mode == Mode::CommandActive) {
            ++plan_idx;
            rec.ee = plan[plan_idx].pose;
            if (plan_idx + 1 == plan.size()) {
                res.movement_time = plan.back().t;
                res.final_distance = distance(rec.ee, rec.ball);
                res.catch_success = planner::judge_catch(rec.ee, rec.ball, cfg.intercept);
                mode = Mode::Done;
            }
        }

        rec.a = speed.a;
        trace.records.push_back(rec);

        if (mode == Mode::Done) break;
        if (mode == Mode::MonitoringReady && rec.t >= cfg.duration_max) break;  // NeverTriggered

        // Advance to the next tick: truth at 4 RK4 substeps, speed dynamics
        // with the neurons fixed at tick start.
        for (int s = 0; s < 4; ++s) truth = pendulum::step_truth(truth, cfg.pend, cfg.tick / 4.0);
        const double elapsed = res.triggered ? (i - res.trigger_tick) * cfg.tick : 0.0;
        regime = hopf::regime_transition(regime, res.triggered, elapsed, cfg.intercept.t_move);
        speed = hopf::step_speed(speed, hopf::to_neurons(regime), active_hopf, cfg.tick);
    }

    res.rms_est_error = err_count > 0 ? std::sqrt(sum_sq_err / err_count) : 0.0;
    return {res, trace};
}

SweepResult run_sweep(const ExperimentConfig& base, const std::vector<std::uint64_t>& seeds,
                      const std::vector<double>& distances, bool parallel) {
    if (seeds.empty() || distances.empty())
        throw ConfigError("sweep needs at least one seed and one distance");

    SweepResult sweep;
    sweep.cells.resize(seeds.size() * distances.size());
    for (std::size_t si = 0; si < seeds.size(); ++si)
        for (std::size_t di = 0; di < distances.size(); ++di) {
            auto& cell = sweep.cells[si * distances.size() + di];
            cell.seed = seeds[si];
            cell.distance = distances[di];
        }

    auto run_cell = [&](SweepCell& cell) {
        try {
            ExperimentConfig cfg = base;
            cfg.seed = cell.seed;
            cfg.home =
                arm::inverse_kinematics(home_pose_for_distance(cfg, cell.distance), cfg.geom);
            cell.result = run_experiment(cfg).first;
        } catch (const std::exception& e) {
            cell.run_failed = true;
            cell.error = e.what();
        }
    };

    if (parallel) {
        const unsigned n_workers =
            std::max(1u, std::min(std::thread::hardware_concurrency(),
                                  static_cast<unsigned>(sweep.cells.size())));
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        workers.reserve(n_workers);
        for (unsigned w = 0; w < n_workers; ++w)
            workers.emplace_back([&] {
                for (std::size_t k = next.fetch_add(1); k < sweep.cells.size();
                     k = next.fetch_add(1))
                    run_cell(sweep.cells[k]);
            });
        for (auto& w : workers) w.join();
    } else {
        for (auto& cell : sweep.cells) run_cell(cell);
    }

    auto& s = sweep.summary;
    s.runs = sweep.cells.size();
    double mt_sum = 0.0, mt_sq = 0.0, rms_sum = 0.0;
    std::size_t rms_count = 0;
    for (const auto& cell : sweep.cells) {
        if (cell.run_failed) continue;
        rms_sum += cell.result.rms_est_error;
        ++rms_count;
        if (cell.result.catch_success) {
            ++s.successes;
            mt_sum += cell.result.movement_time;
            mt_sq += cell.result.movement_time * cell.result.movement_time;
        }
    }
    s.success_rate = s.runs > 0 ? static_cast<double>(s.successes) / s.runs : 0.0;
    if (s.successes > 0) {
        s.movement_time_mean = mt_sum / s.successes;
        const double var =
            std::max(0.0, mt_sq / s.successes - s.movement_time_mean * s.movement_time_mean);
        s.movement_time_std = std::sqrt(var);
    }
    s.rms_est_error_mean = rms_count > 0 ? rms_sum / rms_count : 0.0;
    return sweep;
}

std::vector<EkfTraceRow> ekf_trace(const ExperimentConfig& cfg, int forecast_ticks) {
    cfg.validate();
    if (forecast_ticks < 0) throw ConfigError("forecast_ticks must be >= 0");

    Pcg32 dropout_rng = make_stream(cfg.seed, "sensor-dropout");
    Pcg32 noise_rng = make_stream(cfg.seed, "sensor-noise");
    Gaussian gauss;

    PendulumState truth = cfg.initial;
    std::optional<ekf::StateEstimate> est;
    ekf::FilterStep last_step;

    std::vector<EkfTraceRow> rows;
    const long run_ticks = static_cast<long>(std::ceil(cfg.duration_max / cfg.tick));
    rows.reserve(static_cast<std::size_t>(run_ticks + forecast_ticks + 1));

    for (long i = 0; i <= run_ticks; ++i) {
        EkfTraceRow row;
        row.tick = i;
        row.t = i * cfg.tick;
        row.phi_true = truth.phi;
        row.phidot_true = truth.phi_dot;

        const auto z =
            pendulum::measure(truth, cfg.pend, cfg.sensor, dropout_rng, noise_rng, gauss);
        row.z = z;
        if (!est) {
            if (z) {
                est = ekf::initial_estimate(*z, cfg.pend);
                last_step = ekf::FilterStep{};
            }
        } else {
            auto [next, step] = ekf::update(*est, z, cfg.pend, cfg.noise);
            est = next;
            last_step = step;
        }
        if (est) {
            row.phi_est = est->x_hat(0);
            row.phidot_est = est->x_hat(1);
            row.trace_p = est->P.trace();
            row.gain_norm = last_step.gain.norm();
        }
        rows.push_back(row);

        for (int s = 0; s < 4; ++s) truth = pendulum::step_truth(truth, cfg.pend, cfg.tick / 4.0);
    }

    if (est && forecast_ticks > 0) {
        const auto states = ekf::forecast(*est, cfg.pend, cfg.noise, forecast_ticks);
        for (int k = 0; k < forecast_ticks; ++k) {
            EkfTraceRow row;
            row.tick = run_ticks + 1 + k;
            row.t = row.tick * cfg.tick;
            row.is_forecast = true;
            row.phi_true = truth.phi;
            row.phidot_true = truth.phi_dot;
            row.phi_est = states[static_cast<std::size_t>(k)](0);
            row.phidot_est = states[static_cast<std::size_t>(k)](1);
            rows.push_back(row);
            for (int s = 0; s < 4; ++s)
                truth = pendulum::step_truth(truth, cfg.pend, cfg.tick / 4.0);
        }
    }
    return rows;
}

void write_trace_csv(const std::string& path, const RunTrace& trace) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open trace file for writing: " + path);
    out << "tick,t,phi_true,phidot_true,z,phi_est,phidot_est,traceP,gain_norm,mode,a,"
           "ee_x,ee_y,ee_z,ball_x,ball_y,ball_z\n";
    for (const auto& r : trace.records) {
        out << r.tick << ',' << fmt(r.t) << ',' << fmt(r.phi_true) << ',' << fmt(r.phidot_true)
            << ',' << fmt_opt(r.z) << ',' << fmt_opt(r.phi_est) << ',' << fmt_opt(r.phidot_est)
            << ',' << fmt_opt(r.trace_p) << ',' << fmt_opt(r.gain_norm) << ',' << mode_name(r.mode)
            << ',' << fmt(r.a) << ',' << fmt(r.ee.x) << ',' << fmt(r.ee.y) << ',' << fmt(r.ee.z)
            << ',' << fmt(r.ball.x) << ',' << fmt(r.ball.y) << ',' << fmt(r.ball.z) << '\n';
    }
    if (!out) throw IoError("failed writing trace file: " + path);
}

void write_ekf_trace_csv(const std::string& path, const std::vector<EkfTraceRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open trace file for writing: " + path);
    out << "tick,t,segment,phi_true,phidot_true,z,phi_est,phidot_est,traceP,gain_norm\n";
    for (const auto& r : rows) {
        out << r.tick << ',' << fmt(r.t) << ',' << (r.is_forecast ? "forecast" : "filter") << ','
            << fmt(r.phi_true) << ',' << fmt(r.phidot_true) << ',' << fmt_opt(r.z) << ','
            << fmt_opt(r.phi_est) << ',' << fmt_opt(r.phidot_est) << ',' << fmt_opt(r.trace_p)
            << ',' << fmt_opt(r.gain_norm) << '\n';
    }
    if (!out) throw IoError("failed writing trace file: " + path);
}

std::string sweep_summary_json(const SweepResult& sweep) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"runs\": " << sweep.summary.runs << ",\n";
    out << "  \"successes\": " << sweep.summary.successes << ",\n";
    out << "  \"success_rate\": " << fmt(sweep.summary.success_rate) << ",\n";
    out << "  \"movement_time_mean\": " << fmt(sweep.summary.movement_time_mean) << ",\n";
    out << "  \"movement_time_std\": " << fmt(sweep.summary.movement_time_std) << ",\n";
    out << "  \"rms_est_error_mean\": " << fmt(sweep.summary.rms_est_error_mean) << ",\n";
    out << "  \"cells\": [\n";
    for (std::size_t k = 0; k < sweep.cells.size(); ++k) {
        const auto& c = sweep.cells[k];
        out << "    {\"seed\": " << c.seed << ", \"distance\": " << fmt(c.distance)
            << ", \"failed\": " << (c.run_failed ? "true" : "false")
            << ", \"triggered\": " << (c.result.triggered ? "true" : "false")
            << ", \"trigger_tick\": " << c.result.trigger_tick
            << ", \"movement_time\": " << fmt(c.result.movement_time)
            << ", \"catch_success\": " << (c.result.catch_success ? "true" : "false")
            << ", \"final_distance\": " << fmt(c.result.final_distance)
            << ", \"realized_distance\": " << fmt(c.result.realized_distance)
            << ", \"rms_est_error\": " << fmt(c.result.rms_est_error) << "}"
            << (k + 1 < sweep.cells.size() ? "," : "") << "\n";
    }
    out << "  ]\n}\n";
    return out.str();
}

void write_sweep_summary(const std::string& path, const SweepResult& sweep) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open summary file for writing: " + path);
    out << sweep_summary_json(sweep);
    if (!out) throw IoError("failed writing summary file: " + path);
}

}  // namespace pendsim::harness
