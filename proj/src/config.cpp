#include "pendsim/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pendsim/errors.hpp"
#include "pendsim/harness.hpp"

namespace pendsim::harness {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& scope,
                    const std::set<std::string>& allowed) {
    for (const auto& [key, _] : obj.items())
        if (!allowed.contains(key))
            throw ConfigError("unknown config key '" + scope + key + "'");
}

double get_num(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(std::string("config key '") + key + "' must be a number");
    return v.get<double>();
}

}  // namespace

void ExperimentConfig::validate() const {
    // Real-time robot command interfaces run at 1-15 ms cycles; the
    // simulator keeps the same envelope.
    if (!(tick >= 0.001 && tick <= 0.015))
        throw ConfigError("tick must be in [0.001, 0.015] s");
    if (!(duration_max > 0.0)) throw ConfigError("duration_max must be > 0");
    if (latency_jitter_ticks < 0) throw ConfigError("latency_jitter_ticks must be >= 0");
    if (!std::isfinite(initial.phi) || !std::isfinite(initial.phi_dot))
        throw ConfigError("initial pendulum state must be finite");
    if (noise.T != tick) throw ConfigError("noise.T must equal tick");
    pend.validate();
    sensor.validate();
    noise.validate();
    hopf_base.validate();
    intercept.validate();
    geom.validate();
}

ExperimentConfig default_config() {
    ExperimentConfig cfg;
    cfg.noise.T = cfg.tick;
    cfg.home = arm::inverse_kinematics(home_pose_for_distance(cfg, 0.70), cfg.geom);
    return cfg;
}

ExperimentConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config root must be a JSON object");

    ExperimentConfig cfg;
    reject_unknown(root, "", {"seed", "tick", "duration_max", "latency_jitter_ticks", "pendulum",
                              "sensor", "noise", "hopf", "intercept", "arm"});

    if (root.contains("seed")) {
        const auto& s = root.at("seed");
        if (!s.is_number_unsigned()) throw ConfigError("seed must be a non-negative integer");
        cfg.seed = s.get<std::uint64_t>();
    }
    cfg.tick = get_num(root, "tick", cfg.tick);
    cfg.duration_max = get_num(root, "duration_max", cfg.duration_max);
    cfg.latency_jitter_ticks =
        static_cast<int>(get_num(root, "latency_jitter_ticks", cfg.latency_jitter_ticks));

    if (root.contains("pendulum")) {
        const auto& p = root.at("pendulum");
        reject_unknown(p, "pendulum.", {"g", "l", "alpha", "pivot_height", "swing_y", "phi0",
                                        "phidot0"});
        cfg.pend.g = get_num(p, "g", cfg.pend.g);
        cfg.pend.l = get_num(p, "l", cfg.pend.l);
        cfg.pend.alpha = get_num(p, "alpha", cfg.pend.alpha);
        cfg.pend.pivot_height = get_num(p, "pivot_height", cfg.pend.pivot_height);
        cfg.pend.swing_y = get_num(p, "swing_y", cfg.pend.swing_y);
        cfg.initial.phi = get_num(p, "phi0", cfg.initial.phi);
        cfg.initial.phi_dot = get_num(p, "phidot0", cfg.initial.phi_dot);
    }
    if (root.contains("sensor")) {
        const auto& s = root.at("sensor");
        reject_unknown(s, "sensor.", {"sigma_v", "dropout_prob"});
        cfg.sensor.sigma_v = get_num(s, "sigma_v", cfg.sensor.sigma_v);
        cfg.sensor.dropout_prob = get_num(s, "dropout_prob", cfg.sensor.dropout_prob);
    }
    if (root.contains("noise")) {
        const auto& n = root.at("noise");
        reject_unknown(n, "noise.", {"sigma_q", "r_meas"});
        cfg.noise.sigma_q = get_num(n, "sigma_q", cfg.noise.sigma_q);
        cfg.noise.r_meas = get_num(n, "r_meas", cfg.noise.r_meas);
    }
    cfg.noise.T = cfg.tick;

    if (root.contains("hopf")) {
        const auto& h = root.at("hopf");
        reject_unknown(h, "hopf.", {"gamma", "tau", "c1", "c2", "alpha_tc"});
        cfg.hopf_base.gamma = get_num(h, "gamma", cfg.hopf_base.gamma);
        cfg.hopf_base.tau = get_num(h, "tau", cfg.hopf_base.tau);
        cfg.hopf_base.c1 = get_num(h, "c1", cfg.hopf_base.c1);
        cfg.hopf_base.c2 = get_num(h, "c2", cfg.hopf_base.c2);
        cfg.hopf_base.alpha_tc = get_num(h, "alpha_tc", cfg.hopf_base.alpha_tc);
    }
    if (root.contains("intercept")) {
        const auto& i = root.at("intercept");
        reject_unknown(i, "intercept.",
                       {"t_move", "catch_radius", "max_ball_speed_at_catch", "covariance_gate"});
        cfg.intercept.t_move = get_num(i, "t_move", cfg.intercept.t_move);
        cfg.intercept.catch_radius = get_num(i, "catch_radius", cfg.intercept.catch_radius);
        cfg.intercept.max_ball_speed_at_catch =
            get_num(i, "max_ball_speed_at_catch", cfg.intercept.max_ball_speed_at_catch);
        cfg.intercept.covariance_gate =
            get_num(i, "covariance_gate", cfg.intercept.covariance_gate);
    }

    bool home_given = false;
    if (root.contains("arm")) {
        const auto& a = root.at("arm");
        reject_unknown(a, "arm.",
                       {"base_height", "l1", "l2", "joint_limits_deg", "max_joint_speed", "home"});
        cfg.geom.base_height = get_num(a, "base_height", cfg.geom.base_height);
        cfg.geom.l1 = get_num(a, "l1", cfg.geom.l1);
        cfg.geom.l2 = get_num(a, "l2", cfg.geom.l2);
        cfg.geom.max_joint_speed = get_num(a, "max_joint_speed", cfg.geom.max_joint_speed);
        if (a.contains("joint_limits_deg")) {
            const auto& lims = a.at("joint_limits_deg");
            if (!lims.is_array() || lims.size() != 3)
                throw ConfigError("arm.joint_limits_deg must be an array of 3 [min, max] pairs");
            for (int j = 0; j < 3; ++j) {
                const auto& pair = lims.at(j);
                if (!pair.is_array() || pair.size() != 2)
                    throw ConfigError("arm.joint_limits_deg entries must be [min, max]");
                cfg.geom.joint_limits[j] = {pair.at(0).get<double>() * M_PI / 180.0,
                                            pair.at(1).get<double>() * M_PI / 180.0};
            }
        }
        if (a.contains("home")) {
            const auto& h = a.at("home");
            if (!h.is_array() || h.size() != 3)
                throw ConfigError("arm.home must be [theta0, theta1, theta2] in radians");
            cfg.home = {h.at(0).get<double>(), h.at(1).get<double>(), h.at(2).get<double>()};
            home_given = true;
        }
    }
    if (!home_given)
        cfg.home = arm::inverse_kinematics(home_pose_for_distance(cfg, 0.70), cfg.geom);

    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_to_json(const ExperimentConfig& cfg) {
    json root;
    root["seed"] = cfg.seed;
    root["tick"] = cfg.tick;
    root["duration_max"] = cfg.duration_max;
    root["latency_jitter_ticks"] = cfg.latency_jitter_ticks;
    root["pendulum"] = {{"g", cfg.pend.g},
                        {"l", cfg.pend.l},
                        {"alpha", cfg.pend.alpha},
                        {"pivot_height", cfg.pend.pivot_height},
                        {"swing_y", cfg.pend.swing_y},
                        {"phi0", cfg.initial.phi},
                        {"phidot0", cfg.initial.phi_dot}};
    root["sensor"] = {{"sigma_v", cfg.sensor.sigma_v}, {"dropout_prob", cfg.sensor.dropout_prob}};
    root["noise"] = {{"sigma_q", cfg.noise.sigma_q}, {"r_meas", cfg.noise.r_meas}};
    root["hopf"] = {{"gamma", cfg.hopf_base.gamma},
                    {"tau", cfg.hopf_base.tau},
                    {"c1", cfg.hopf_base.c1},
                    {"c2", cfg.hopf_base.c2},
                    {"alpha_tc", cfg.hopf_base.alpha_tc}};
    root["intercept"] = {{"t_move", cfg.intercept.t_move},
                         {"catch_radius", cfg.intercept.catch_radius},
                         {"max_ball_speed_at_catch", cfg.intercept.max_ball_speed_at_catch},
                         {"covariance_gate", cfg.intercept.covariance_gate}};
    root["arm"] = {{"base_height", cfg.geom.base_height},
                   {"l1", cfg.geom.l1},
                   {"l2", cfg.geom.l2},
                   {"max_joint_speed", cfg.geom.max_joint_speed},
                   {"joint_limits_deg",
                    {{cfg.geom.joint_limits[0].min * 180.0 / M_PI,
                      cfg.geom.joint_limits[0].max * 180.0 / M_PI},
                     {cfg.geom.joint_limits[1].min * 180.0 / M_PI,
                      cfg.geom.joint_limits[1].max * 180.0 / M_PI},
                     {cfg.geom.joint_limits[2].min * 180.0 / M_PI,
                      cfg.geom.joint_limits[2].max * 180.0 / M_PI}}},
                   {"home", {cfg.home.theta0, cfg.home.theta1, cfg.home.theta2}}};
    return root.dump(2) + "\n";
}

}  // namespace pendsim::harness
